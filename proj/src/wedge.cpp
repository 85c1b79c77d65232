#include "amgm/wedge.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace amgm {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at every step
  }
  return r;
}

SubsetIndex SubsetIndex::make(std::size_t d, std::size_t k) {
  if (k < 1 || k > d) throw DomainError("wedge order k must lie in [1, d]");
  if (binomial(d, k) > kMaxCompoundSize) {
    throw DomainError("compound size C(d,k) exceeds " + std::to_string(kMaxCompoundSize));
  }
  SubsetIndex idx{d, k, {}};
  idx.subsets.reserve(binomial(d, k));
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    idx.subsets.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == d - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return idx;
}

Matrix compound(const Matrix& a, std::size_t k) {
  const auto idx = SubsetIndex::make(a.dim(), k);
  const std::size_t n = idx.size();
  Matrix out(n);
  Matrix sub(k);
  for (std::size_t I = 0; I < n; ++I) {
    for (std::size_t J = 0; J < n; ++J) {
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) sub(r, c) = a(idx.subsets[I][r], idx.subsets[J][c]);
      out(I, J) = k == 1 ? sub(0, 0) : determinant(sub);
    }
  }
  return out;
}

Matrix compound_of_power(const EigenDecomposition& eig, std::size_t k, double s) {
  const auto idx = SubsetIndex::make(eig.vectors.dim(), k);
  const Matrix w = compound(eig.vectors, k);
  std::vector<double> diag(idx.size());
  for (std::size_t I = 0; I < idx.size(); ++I) {
    double p = 1.0;
    for (std::size_t i : idx.subsets[I]) {
      const double lam = eig.values[i];
      p *= lam == 0.0 ? 0.0 : std::pow(lam, s);
    }
    diag[I] = p;
  }
  const std::size_t n = idx.size();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < n; ++c) acc += w(i, c) * diag[c] * w(j, c);
      out(i, j) = acc;
      out(j, i) = acc;
    }
  }
  return out;
}

std::string to_string(PropertyStatus status) {
  switch (status) {
    case PropertyStatus::Pass:
      return "pass";
    case PropertyStatus::Fail:
      return "fail";
    case PropertyStatus::Skipped:
      return "skipped";
  }
  return "?";
}

bool PropertyReport::ok() const {
  return std::none_of(properties.begin(), properties.end(),
                      [](const PropertyResult& p) { return p.status == PropertyStatus::Fail; });
}

double PropertyReport::max_deviation() const {
  double m = 0.0;
  for (const auto& p : properties)
    if (p.status != PropertyStatus::Skipped) m = std::max(m, p.max_deviation);
  return m;
}

std::string PropertyReport::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : properties) {
    arr.push_back({{"name", p.name}, {"status", amgm::to_string(p.status)},
                   {"max_deviation", p.max_deviation}});
  }
  return arr.dump();
}

namespace {

double scaled_diff(const Matrix& got, const Matrix& want) {
  return max_abs_diff(got, want) / std::max(1.0, want.max_abs());
}

PropertyResult judged(std::string name, double dev, double tol) {
  return {std::move(name), dev <= tol ? PropertyStatus::Pass : PropertyStatus::Fail, dev};
}

PropertyResult skipped(std::string name) { return {std::move(name), PropertyStatus::Skipped, 0.0}; }

}  // namespace

PropertyReport verify_wedge_properties(const Matrix& a, const Matrix& b, std::size_t k,
                                       double tol) {
  if (a.dim() != b.dim()) throw DomainError("verify_wedge_properties: dimension mismatch");
  PropertyReport report{a.dim(), k, {}};
  const Matrix ca = compound(a, k);
  const bool symmetric = a.asymmetry() <= kDefaultEpsilon * std::max(1.0, a.max_abs());
  const bool psd = symmetric && is_psd(a);

  // 1
  report.properties.push_back(
      judged("multiplicative", scaled_diff(ca * compound(b, k), compound(a * b, k)), tol));

  // 2
  report.properties.push_back(
      judged("transpose", scaled_diff(ca.transpose(), compound(a.transpose(), k)), tol));

  // 3
  if (std::abs(determinant(a)) <= tol) {
    report.properties.push_back(skipped("inverse"));
  } else {
    report.properties.push_back(
        judged("inverse", scaled_diff(compound(inverse(a), k), inverse(ca)), tol));
  }

  // 4
  {
    const auto eig = sym_eigen(a.symmetrized());
    const Matrix cq = compound(eig.vectors, k);
    double dev = scaled_diff(cq.transpose() * cq, Matrix::identity(cq.dim()));
    if (psd) {
      const auto ceig = sym_eigen(ca.symmetrized());
      const double rho = std::max(std::abs(ceig.values.values.front()),
                                  std::abs(ceig.values.values.back()));
      dev = std::max(dev, std::max(0.0, -ceig.values.values.back()) / std::max(1.0, rho));
    }
    report.properties.push_back(judged("structure", dev, tol));
  }

  // 5
  if (symmetric) {
    const auto eig = sym_eigen(a.symmetrized());
    const auto idx = SubsetIndex::make(a.dim(), k);
    std::vector<double> products;
    products.reserve(idx.size());
    for (const auto& subset : idx.subsets) {
      double p = 1.0;
      for (std::size_t i : subset) p *= eig.values[i];
      products.push_back(p);
    }
    std::sort(products.begin(), products.end(), std::greater<>{});
    const auto ceig = sym_eigen(ca.symmetrized());
    double scale = 1.0;
    double dev = 0.0;
    for (std::size_t i = 0; i < products.size(); ++i) {
      scale = std::max(scale, std::abs(products[i]));
      dev = std::max(dev, std::abs(products[i] - ceig.values[i]));
    }
    report.properties.push_back(judged("eigenvalues", dev / scale, tol));
  } else {
    report.properties.push_back(skipped("eigenvalues"));
  }

  // 6
  if (psd) {
    double dev = 0.0;
    for (double s : {0.5, 2.0, 3.0}) {
      const Matrix via_compound = clamped_psd_power(ca, s);
      const Matrix via_power = compound(psd_power(a, s), k);
      dev = std::max(dev, scaled_diff(via_compound, via_power));
    }
    report.properties.push_back(judged("powers", dev, tol));
  } else {
    report.properties.push_back(skipped("powers"));
  }
  return report;
}

}  // namespace amgm
