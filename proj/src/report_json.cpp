#include "divkit/report_json.hpp"

namespace divkit {

using nlohmann::json;

json to_json(const ParamValue& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

json to_json(const DiversityReport& report) {
  json out;
  out["method"] = report.method;
  out["n"] = report.n;
  json params = json::object();
  for (const auto& [key, value] : report.params) params[key] = to_json(value);
  out["params"] = std::move(params);
  out["score"] = report.score;
  if (report.batch_scores) {
    json batches = json::array();
    for (const BatchScore& b : *report.batch_scores) {
      batches.push_back({{"batch", b.batch}, {"n", b.n}, {"score", b.score}});
    }
    out["batch_scores"] = std::move(batches);
  }
  json timings = json::object();
  for (const auto& [stage_name, ms] : report.timings_ms) timings[stage_name] = ms;
  out["timings_ms"] = std::move(timings);
  out["warnings"] = report.warnings;
  return out;
}

json to_json(const KernelSpec& spec, std::optional<std::size_t> dim) {
  json out{{"kind", std::string(to_string(spec.kind))}};
  if (spec.gamma) {
    out["gamma"] = *spec.gamma;
  } else if (dim) {
    out["gamma"] = spec.resolved_gamma(*dim);
  } else {
    out["gamma"] = "1/d";
  }
  if (spec.kind == KernelKind::kPolynomial) {
    out["degree"] = spec.degree;
    out["coef0"] = spec.coef0;
  }
  return out;
}

json to_json(const SyntheticSpec& spec) {
  return {{"levels", spec.levels},
          {"samples_per_level", spec.samples_per_level},
          {"clusters", spec.clusters},
          {"dim", spec.dim},
          {"seed", spec.seed}};
}

json to_json(const SweepCorrelation& sweep) {
  json levels = json::array();
  for (std::size_t i = 0; i < sweep.sigmas.size(); ++i) {
    levels.push_back({{"sigma", sweep.sigmas[i]}, {"score", sweep.scores[i]}});
  }
  return {{"rho", sweep.correlation.rho},
          {"n_pairs", sweep.correlation.n_pairs},
          {"levels", std::move(levels)}};
}

json to_json(const BenchReport& report) {
  json methods = json::array();
  for (Method m : report.plan.methods) methods.push_back(std::string(to_string(m)));
  json plan{{"sizes", report.plan.sizes},
            {"dims", report.plan.dim},
            {"kernel", to_json(report.plan.kernel, report.plan.dim)},
            {"methods", std::move(methods)},
            {"repeats", report.plan.repeats},
            {"seed", report.plan.seed}};

  json results = json::array();
  for (const BenchResult& r : report.results) {
    results.push_back({{"method", r.method},
                       {"n", r.n},
                       {"stage", r.stage},
                       {"mean_ms", r.mean_ms},
                       {"std_ms", r.std_ms}});
  }
  json scores = json::array();
  for (const BenchScore& s : report.scores) {
    scores.push_back({{"method", s.method},
                      {"n", s.n},
                      {"score", s.score},
                      {"identical_across_repeats", s.identical_across_repeats}});
  }
  return {{"plan", std::move(plan)},
          {"results", std::move(results)},
          {"scores", std::move(scores)},
          {"env", {{"threads", report.threads}, {"timestamp", report.timestamp}}}};
}

}  // namespace divkit
