#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "chebdyn/bigint.hpp"

namespace chebdyn {

inline constexpr const char* kToolName = "chebdyn";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  bool pass = false;
  Json lhs;
  Json rhs;
};

// {"tool", "version", "config", "results", "checks": [{"name", "pass", "lhs", "rhs"}]}
struct Report {
  Json config = Json::object();
  Json results = Json::object();
  std::vector<Check> checks;

  void check(std::string name, bool pass, Json lhs, Json rhs);
  bool all_pass() const;
  Json to_json() const;
};

// Non-finite doubles become the strings "inf", "-inf", "nan" (JSON has no literal for them).
Json json_number(double x);
// Decimal string: exact, whatever the size.
Json json_big(const BigInt& n);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void write(std::ostream& os) const;
};

std::string csv_number(double x);

}  // namespace chebdyn
