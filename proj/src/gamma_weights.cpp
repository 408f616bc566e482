#include "gdswu/gamma_weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gdswu/errors.hpp"

namespace gdswu {

void GammaParams::validate() const {
  if (shape < 1 || shape > kMaxShape) {
    throw DomainError("gamma shape must be an integer in 1.." +
                      std::to_string(kMaxShape) + ", got " +
                      std::to_string(shape));
  }
  if (!std::isfinite(scale) || scale <= 0.0) {
    throw DomainError("gamma scale must be positive and finite");
  }
}

std::size_t WeightVector::peak_lag() const {
  return static_cast<std::size_t>(
      std::distance(raw.begin(), std::max_element(raw.begin(), raw.end())));
}

std::uint64_t gamma_int(unsigned a) {
  if (a < 1 || a > kMaxShape) {
    throw DomainError("gamma_int: shape must be in 1.." +
                      std::to_string(kMaxShape) + ", got " + std::to_string(a));
  }
  std::uint64_t f = 1;
  for (unsigned k = 2; k < a; ++k) f *= k;
  return f;
}

double gamma_pdf(double x, const GammaParams& params) {
  params.validate();
  if (!(x >= 0.0) || std::isinf(x)) {
    throw DomainError("gamma_pdf: x must be finite and non-negative");
  }
  const unsigned a = params.shape;
  const double b = params.scale;
  const double power = (a == 1) ? 1.0 : std::pow(x, static_cast<double>(a - 1));
  return power * std::exp(-x / b) /
         (std::pow(b, static_cast<double>(a)) * static_cast<double>(gamma_int(a)));
}

WeightVector build_weight_vector(const GammaParams& params, std::size_t taps,
                                 QFormat format, RoundingMode rounding,
                                 SamplePointRule sample_points) {
  params.validate();
  format.validate();
  if (taps < 1) throw DomainError("weight vector needs at least one tap");
  if (format.frac_bits < 1) {
    throw DomainError("weight format needs at least one fractional bit");
  }
  if (!std::isfinite(sample_points.offset) || sample_points.offset < 0.0) {
    throw DomainError("sample point offset must be finite and non-negative");
  }

  WeightVector w;
  w.params = params;
  w.taps = taps;
  w.format = format;
  w.rounding = rounding;
  w.sample_points = sample_points;
  w.raw.reserve(taps);
  w.ideal.reserve(taps);

  Accumulator sum = 0;
  for (std::size_t i = 0; i < taps; ++i) {
    const double ideal = gamma_pdf(sample_points.point(i), params);
    const Quantized q = quantize(ideal, format, rounding);
    w.ideal.push_back(ideal);
    w.raw.push_back(q.word.raw());
    if (q.saturated) ++w.saturated_count;
    sum += q.word.raw();
  }
  if (sum == 0) {
    throw ConstructionError(
        "every tap weight quantized to zero; increase frac_bits");
  }
  if (sum > ~std::uint64_t{0}) {
    throw ConstructionError("weight sum does not fit in 64 bits");
  }
  w.raw_sum = static_cast<std::uint64_t>(sum);
  return w;
}

}  // namespace gdswu
