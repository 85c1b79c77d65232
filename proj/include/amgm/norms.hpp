#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "amgm/matrix.hpp"

namespace amgm {

/// A unitarily invariant norm, evaluated as a symmetric gauge function of the
/// singular values.
///
/// String grammar (case-insensitive), used by the CLI and config files:
///
///     norm     := "op" | "operator" | "trace" | "fro" | "frobenius"
///               | "schatten:" P | "kyfan:" K
///     P        := decimal real >= 1 | "inf"
///     K        := positive integer
///
/// schatten:1 agrees with trace, schatten:2 with fro, and schatten:inf with op
/// and kyfan:1.
struct NormSpec {
  enum class Family { Operator, Trace, Frobenius, Schatten, KyFan };

  Family family = Family::Operator;
  double p = std::numeric_limits<double>::infinity();  // Schatten only
  int k = 1;                                           // Ky Fan only

  static NormSpec op() { return {Family::Operator}; }
  static NormSpec trace() { return {Family::Trace}; }
  static NormSpec frobenius() { return {Family::Frobenius}; }
  static NormSpec schatten(double p);
  static NormSpec kyfan(int k);

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

NormSpec parse_norm(std::string_view text);
std::string to_string(const NormSpec& spec);

/// {op, trace, fro, schatten:3, kyfan:2}
std::vector<NormSpec> default_norm_catalog();

/// Catalog entries usable at dimension d (Ky Fan k > d dropped).
std::vector<NormSpec> catalog_for_dim(const std::vector<NormSpec>& catalog, std::size_t d);

double gauge_eval(const NormSpec& spec, const Spectrum& sv);

/// gauge_eval(spec, singular_values(x))
double ui_norm(const NormSpec& spec, const Matrix& x);

}  // namespace amgm
