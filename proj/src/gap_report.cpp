#include "amgm/gap_report.hpp"

#include <algorithm>
#include <cmath>

#include "amgm/matrix_io.hpp"
#include "json.hpp"

namespace amgm {

GapReport& GapReport::param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
  return *this;
}

GapReport& GapReport::param(std::string key, double value) {
  return param(std::move(key), format_double(value));
}

void rejudge(GapReport& report, double epsilon) {
  report.gap = report.lhs - report.rhs;
  const double scale = std::max({1.0, std::abs(report.lhs), std::abs(report.rhs)});
  report.rel_gap = report.gap / scale;
  report.pass = report.rel_gap >= -epsilon;
}

GapReport make_gap(std::string check, double lhs, double rhs, double epsilon) {
  GapReport r;
  r.check = std::move(check);
  r.lhs = lhs;
  r.rhs = rhs;
  rejudge(r, epsilon);
  return r;
}

namespace {

std::string flatten_params(const GapReport& r) {
  std::string out;
  for (const auto& [k, v] : r.params) {
    if (!out.empty()) out += ';';
    out += k + '=' + v;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string to_json(const GapReport& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  nlohmann::ordered_json j = {{"check", r.check},     {"context", r.context}, {"lhs", r.lhs},
                              {"rhs", r.rhs},         {"gap", r.gap},         {"rel_gap", r.rel_gap},
                              {"pass", r.pass},       {"seed", r.seed},       {"params", params}};
  return j.dump();
}

std::string gap_csv_header() { return "check,context,lhs,rhs,gap,rel_gap,pass,seed,params"; }

std::string to_csv_row(const GapReport& r) {
  return csv_field(r.check) + ',' + csv_field(r.context) + ',' + format_double(r.lhs) + ',' +
         format_double(r.rhs) + ',' + format_double(r.gap) + ',' + format_double(r.rel_gap) + ',' +
         (r.pass ? "true" : "false") + ',' + std::to_string(r.seed) + ',' +
         csv_field(flatten_params(r));
}

}  // namespace amgm
