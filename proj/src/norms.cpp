#include "amgm/norms.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "amgm/linalg.hpp"
#include "amgm/matrix_io.hpp"

namespace amgm {

NormSpec NormSpec::schatten(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("schatten p must be >= 1");
  NormSpec s{Family::Schatten};
  s.p = p;
  return s;
}

NormSpec NormSpec::kyfan(int k) {
  if (k < 1) throw DomainError("kyfan k must be >= 1");
  NormSpec s{Family::KyFan};
  s.k = k;
  return s;
}

NormSpec parse_norm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "op" || lower == "operator") return NormSpec::op();
  if (lower == "trace") return NormSpec::trace();
  if (lower == "fro" || lower == "frobenius") return NormSpec::frobenius();

  const auto colon = lower.find(':');
  if (colon == std::string::npos) throw DomainError("unknown norm '" + std::string(text) + "'");
  const std::string head = lower.substr(0, colon);
  const std::string arg = lower.substr(colon + 1);
  if (head == "schatten") {
    if (arg == "inf") return NormSpec::schatten(std::numeric_limits<double>::infinity());
    double p = 0.0;
    try {
      p = parse_double(arg);
    } catch (const DomainError&) {
      throw DomainError("invalid schatten exponent '" + arg + "'");
    }
    if (!std::isfinite(p) || p < 1.0) {
      throw DomainError("schatten exponent must be >= 1, got '" + arg + "'");
    }
    return NormSpec::schatten(p);
  }
  if (head == "kyfan") {
    int k = 0;
    auto res = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (res.ec != std::errc{} || res.ptr != arg.data() + arg.size() || k < 1) {
      throw DomainError("kyfan order must be a positive integer, got '" + arg + "'");
    }
    return NormSpec::kyfan(k);
  }
  throw DomainError("unknown norm '" + std::string(text) + "'");
}

std::string to_string(const NormSpec& spec) {
  switch (spec.family) {
    case NormSpec::Family::Operator:
      return "op";
    case NormSpec::Family::Trace:
      return "trace";
    case NormSpec::Family::Frobenius:
      return "fro";
    case NormSpec::Family::Schatten:
      return std::isinf(spec.p) ? "schatten:inf" : "schatten:" + format_double(spec.p);
    case NormSpec::Family::KyFan:
      return "kyfan:" + std::to_string(spec.k);
  }
  return "?";
}

std::vector<NormSpec> default_norm_catalog() {
  return {NormSpec::op(), NormSpec::trace(), NormSpec::frobenius(), NormSpec::schatten(3.0),
          NormSpec::kyfan(2)};
}

std::vector<NormSpec> catalog_for_dim(const std::vector<NormSpec>& catalog, std::size_t d) {
  std::vector<NormSpec> out;
  for (const auto& spec : catalog) {
    if (spec.family == NormSpec::Family::KyFan && static_cast<std::size_t>(spec.k) > d) continue;
    out.push_back(spec);
  }
  return out;
}

double gauge_eval(const NormSpec& spec, const Spectrum& sv) {
  const auto& v = sv.values;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0 || std::isnan(v[i])) throw DomainError("gauge_eval: negative singular value");
    if (i + 1 < v.size() && v[i] < v[i + 1]) throw DomainError("gauge_eval: spectrum not sorted");
  }
  if (v.empty()) return 0.0;

  auto sum_first = [&](std::size_t k) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += v[i];
    return s;
  };
  // ℓp with the leading value factored out to avoid overflow.
  auto lp = [&](double p) {
    const double top = v.front();
    if (top == 0.0) return 0.0;
    double s = 0.0;
    for (double x : v) s += std::pow(x / top, p);
    return top * std::pow(s, 1.0 / p);
  };

  switch (spec.family) {
    case NormSpec::Family::Operator:
      return v.front();
    case NormSpec::Family::Trace:
      return sum_first(v.size());
    case NormSpec::Family::Frobenius:
      return lp(2.0);
    case NormSpec::Family::Schatten:
      if (spec.p < 1.0) throw DomainError("gauge_eval: schatten p must be >= 1");
      if (std::isinf(spec.p)) return v.front();
      if (spec.p == 1.0) return sum_first(v.size());
      return lp(spec.p);
    case NormSpec::Family::KyFan:
      if (spec.k < 1 || static_cast<std::size_t>(spec.k) > v.size()) {
        throw DomainError("gauge_eval: kyfan k out of range");
      }
      return sum_first(static_cast<std::size_t>(spec.k));
  }
  return 0.0;
}

double ui_norm(const NormSpec& spec, const Matrix& x) {
  return gauge_eval(spec, singular_values(x));
}

}  // namespace amgm
