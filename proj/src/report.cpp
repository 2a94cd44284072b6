#include "mca/report.hpp"

#include <ctime>

namespace mca {

Json to_json(const AssumptionReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back(Json{{"index", v.index},
                              {"kind", violation_kind_name(v.kind)},
                              {"gap", v.gap}});
  }
  Json j;
  j["k"] = report.k;
  j["positive_alpha_count"] = report.positive_alpha_count;
  j["beta_count"] = report.beta_count;
  j["violations"] = std::move(violations);
  j["passed"] = report.passed;
  j["advisory"] = report.advisory.empty() ? Json(nullptr) : Json(report.advisory);
  return j;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace mca
