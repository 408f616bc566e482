#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gdswu/fixed_point.hpp"

namespace gdswu {

/// Largest shape whose factorial (a-1)! is evaluated exactly.
inline constexpr unsigned kMaxShape = 20;

/// Gamma distribution with integer shape a and real scale b.
struct GammaParams {
  unsigned shape = 1;   // a
  double scale = 10.0;  // b

  /// Throws DomainError unless 1 <= shape <= kMaxShape and scale is finite, > 0.
  void validate() const;
};

/// Where lag i samples the PDF: x_i = offset + i.
struct SamplePointRule {
  double offset = 0.0;

  double point(std::size_t lag) const { return offset + static_cast<double>(lag); }
};

/// Quantized tap weights. Lag 0 addresses the newest sample.
struct WeightVector {
  GammaParams params;
  std::size_t taps = 0;
  QFormat format;
  RoundingMode rounding = RoundingMode::half_up;
  SamplePointRule sample_points;
  std::vector<std::uint64_t> raw;
  std::vector<double> ideal;
  std::uint64_t raw_sum = 0;
  std::size_t saturated_count = 0;

  /// Lag holding the largest raw weight (first one on ties).
  std::size_t peak_lag() const;
  std::uint64_t peak_raw() const { return raw[peak_lag()]; }
};

/// (a-1)!, exact for 1 <= a <= kMaxShape. Throws DomainError otherwise.
std::uint64_t gamma_int(unsigned a);

/// f(x; a, b) = x^(a-1) e^(-x/b) / (b^a (a-1)!), with x^0 = 1 at x = 0.
double gamma_pdf(double x, const GammaParams& params);

/// Samples the PDF at one point per lag and quantizes each value into
/// `format`. Weights are not normalized. Throws ConstructionError if every
/// weight rounds to zero.
WeightVector build_weight_vector(const GammaParams& params, std::size_t taps,
                                 QFormat format,
                                 RoundingMode rounding = RoundingMode::half_up,
                                 SamplePointRule sample_points = {});

}  // namespace gdswu
