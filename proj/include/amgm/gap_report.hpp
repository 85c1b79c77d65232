#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "amgm/matrix.hpp"

namespace amgm {

/// One inequality instance: lhs is the side claimed to be larger.
struct GapReport {
  std::string check;
  std::string context;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;      // lhs - rhs
  double rel_gap = 0.0;  // gap / max(1, |lhs|, |rhs|)
  bool pass = true;      // rel_gap >= -epsilon
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;

  GapReport& param(std::string key, std::string value);
  GapReport& param(std::string key, double value);
};

/// Fills gap, rel_gap and pass from lhs and rhs.
GapReport make_gap(std::string check, double lhs, double rhs, double epsilon = kDefaultEpsilon);

/// Re-judges an existing report under a different tolerance.
void rejudge(GapReport& report, double epsilon);

std::string to_json(const GapReport& report);

/// Field order of to_csv_row; params are flattened to "k=v;k=v".
std::string gap_csv_header();
std::string to_csv_row(const GapReport& report);

}  // namespace amgm
