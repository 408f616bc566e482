#include "gdswu/json.hpp"

namespace gdswu {

Json to_json(const WeightVector& weights) {
  Json j;
  j["a"] = weights.params.shape;
  j["b"] = weights.params.scale;
  j["taps"] = weights.taps;
  j["int_bits"] = weights.format.int_bits;
  j["frac_bits"] = weights.format.frac_bits;
  j["rounding"] = std::string(to_string(weights.rounding));
  j["sample_offset"] = weights.sample_points.offset;
  j["raw"] = weights.raw;
  j["ideal"] = weights.ideal;
  j["raw_sum"] = weights.raw_sum;
  j["saturated_count"] = weights.saturated_count;
  return j;
}

Json to_json(const oracle::ComparisonReport& report) {
  Json j;
  j["max_abs_error"] = report.max_abs_error;
  j["mismatch_count"] = report.mismatch_count;
  j["first_mismatch_index"] =
      report.first_mismatch_index ? Json(*report.first_mismatch_index) : Json(nullptr);
  j["bound_used"] = report.bound_used;
  return j;
}

Json to_json(const faults::FaultSpec& spec) {
  Json j;
  j["kind"] = std::string(faults::to_string(spec.kind));
  j["start"] = spec.start;
  j["duration"] = spec.duration;
  j["magnitude"] = spec.magnitude;
  return j;
}

Json to_json(const faults::AttenuationReport& report) {
  Json j;
  j["spec"] = to_json(report.spec);
  j["fault_site"] = std::string(report.fault_site);
  j["max_output_deviation"] = report.max_output_deviation;
  j["analytic_bound"] = report.analytic_bound;
  j["recovery_index"] = report.recovery_index;
  j["bound_satisfied"] = report.bound_satisfied;
  return j;
}

Json to_json(const faults::SweepReport& sweep) {
  Json j;
  j["reports"] = Json::array();
  for (const auto& r : sweep.reports) j["reports"].push_back(to_json(r));
  if (sweep.aggregate) {
    const auto& a = *sweep.aggregate;
    j["aggregate"] = {{"count", sweep.reports.size()},
                      {"min_deviation", a.min_deviation},
                      {"max_deviation", a.max_deviation},
                      {"mean_deviation", a.mean_deviation},
                      {"worst_bound_slack", a.worst_bound_slack},
                      {"all_bounds_satisfied", a.all_bounds_satisfied}};
  } else {
    j["aggregate"] = nullptr;
  }
  return j;
}

}  // namespace gdswu
