#include "chebdyn/report.hpp"

#include <cmath>
#include <cstdio>

namespace chebdyn {

void Report::check(std::string name, bool pass, Json lhs, Json rhs) {
  checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs)});
}

bool Report::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

Json Report::to_json() const {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config;
  j["results"] = results;
  j["checks"] = Json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs}});
  }
  return j;
}

Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json json_big(const BigInt& n) { return n.get_str(); }

std::string csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvTable::write(std::ostream& os) const {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace chebdyn
