#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace biham {

// JSON text with every floating value printed at 17 significant digits and
// non-finite values as null, so identical inputs give byte-identical output.
std::string dump_json(const nlohmann::json& j, int indent = 2);

struct Report {
  std::string command;
  nlohmann::json verdicts = nlohmann::json::object();
  nlohmann::json residuals = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json data = nlohmann::json::object();
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::string> artifacts;
  std::vector<std::string> warnings;
  bool passed = true;

  // A boolean verdict that counts as a check.
  void check(const std::string& name, bool ok);
  // A named residual with its tolerance; exceeding it fails the report.
  void residual(const std::string& name, double value, double tol);
  // Informational value, never a check.
  void note(const std::string& name, const nlohmann::json& v) { verdicts[name] = v; }

  nlohmann::json to_json() const;
};

}  // namespace biham
