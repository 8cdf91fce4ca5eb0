#include "biham/report.hpp"

#include <cmath>
#include <cstdio>

namespace biham {

namespace {

void write_string(std::string& out, const std::string& s) {
  // nlohmann handles escaping
  out += nlohmann::json(s).dump();
}

void write(std::string& out, const nlohmann::json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<size_t>(indent * depth), ' ') : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        first = false;
        out += pad;
        write_string(out, it.key());
        out += indent > 0 ? ": " : ":";
        write(out, it.value(), indent, depth + 1);
      }
      out += close + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // numeric leaves stay on one line
      bool flat = true;
      for (const auto& v : j)
        if (v.is_structured()) flat = false;
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += pad;
        write(out, v, indent, depth + 1);
      }
      out += flat ? "]" : close + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      double d = j.get<double>();
      if (d == 0.0) d = 0.0;  // no "-0" in reports
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

void Report::check(const std::string& name, bool ok) {
  verdicts[name] = ok;
  if (!ok) passed = false;
}

void Report::residual(const std::string& name, double value, double tol) {
  residuals[name] = value;
  tolerances[name] = tol;
  if (!(value <= tol)) passed = false;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = "0.1.0";
  j["passed"] = passed;
  j["verdicts"] = verdicts;
  j["residuals"] = residuals;
  j["tolerances"] = tolerances;
  j["data"] = data;
  j["artifacts"] = artifacts;
  j["warnings"] = warnings;
  j["config"] = config;
  return j;
}

}  // namespace biham
