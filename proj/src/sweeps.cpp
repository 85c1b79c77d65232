#include "amgm/sweeps.hpp"

#include <cmath>
#include <string>

#include "amgm/inequalities.hpp"
#include "amgm/linalg.hpp"

namespace amgm {

Matrix sweep_psd(Rng& rng, std::size_t d) {
  const int di = static_cast<int>(d);
  switch (rng.index(4)) {
    case 0:
      return random_psd(rng, d, Wishart{rng.integer(1, di + 3)});
    case 1:
      return random_psd(rng, d, Projector{rng.integer(0, di)});
    case 2:
      return random_psd(rng, d, Diagonal{});
    default:
      return random_psd(rng, d, RotatedDiagonal{std::pow(10.0, rng.uniform(0.0, 3.0))});
  }
}

MatrixFamily sweep_family(Rng& rng, std::size_t n, std::size_t d) {
  std::vector<Matrix> members;
  members.reserve(n);
  for (std::size_t i = 0; i < n; ++i) members.push_back(sweep_psd(rng, d));
  return MatrixFamily(std::move(members));
}

namespace {

Matrix commuting_diagonal(Rng& rng, std::size_t d) {
  std::vector<double> diag(d);
  for (double& v : diag) v = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.25, 1.0);
  return Matrix::diagonal(diag);
}

}  // namespace

std::pair<Matrix, Matrix> sweep_power_pair(Rng& rng, std::size_t d) {
  switch (rng.index(5)) {
    case 0:
      return {random_psd(rng, d, RotatedDiagonal{rng.uniform(1.0, 4.0)}),
              random_psd(rng, d, RotatedDiagonal{rng.uniform(1.0, 4.0)})};
    case 1: {
      const int rank = rng.integer(1, static_cast<int>(d));
      Matrix p = random_psd(rng, d, Projector{rank});
      Matrix q = random_psd(rng, d, RotatedDiagonal{rng.uniform(1.0, 4.0)});
      if (rng.uniform() < 0.5) return {std::move(p), std::move(q)};
      return {std::move(q), std::move(p)};
    }
    case 2: {
      const int lo = 3 * static_cast<int>(d);
      return {random_psd(rng, d, Wishart{rng.integer(lo, lo + 2 * static_cast<int>(d))}),
              random_psd(rng, d, Wishart{rng.integer(lo, lo + 2 * static_cast<int>(d))})};
    }
    case 3:
      return {commuting_diagonal(rng, d), commuting_diagonal(rng, d)};
    default: {
      const Matrix q = random_orthogonal(rng, d);
      const Matrix qt = q.transpose();
      return {(qt * commuting_diagonal(rng, d) * q).symmetrized(),
              (qt * commuting_diagonal(rng, d) * q).symmetrized()};
    }
  }
}

Matrix sweep_wedge_matrix(Rng& rng, std::size_t d) {
  const int di = static_cast<int>(d);
  switch (rng.index(4)) {
    case 0:
      return random_psd(rng, d, Wishart{rng.integer(di + 2, 2 * di + 2)});
    case 1:
      return random_psd(rng, d, Projector{rng.integer(0, di)});
    case 2:
      return random_psd(rng, d, RotatedDiagonal{rng.uniform(1.0, 100.0)});
    default:
      return random_psd(rng, d, Diagonal{});
  }
}

double sweep_r(Rng& rng) { return rng.uniform(1.0, 4.0); }

double sweep_exponent(Rng& rng) { return 3.0 * (1.0 - rng.uniform()); }

std::vector<GapReport> verify_trial(std::uint64_t seed, std::uint64_t trial,
                                    const std::vector<int>& d_values,
                                    const std::vector<NormSpec>& norms, double epsilon) {
  const std::uint64_t trial_seed = derive_seed(seed, trial);
  Rng rng(trial_seed);
  const auto d = static_cast<std::size_t>(d_values.at(rng.index(d_values.size())));
  const auto specs = catalog_for_dim(norms, d);

  const Matrix p1 = sweep_psd(rng, d);
  const Matrix p2 = sweep_psd(rng, d);
  const Matrix x1 = random_gaussian(rng, d);
  const Matrix x2 = random_gaussian(rng, d);
  const Matrix x3 = random_gaussian(rng, d);
  const Matrix mid = sweep_psd(rng, d);
  const auto [a, b] = sweep_power_pair(rng, d);
  const double r = sweep_r(rng);
  const double s = sweep_exponent(rng);
  const double q = sweep_exponent(rng);
  const std::size_t n = static_cast<std::size_t>(rng.integer(3, 4));
  const MatrixFamily family = sweep_family(rng, n, d);

  std::vector<GapReport> out;
  for (const auto& spec : specs) {
    out.push_back(pair_check(p1, p2, spec, epsilon));
    out.push_back(holder_triple_check(x1, x2, x3, spec, epsilon));
    out.push_back(sandwich_check(x1, mid, x3, spec, epsilon));
    out.push_back(alt_norm_check(a, b, r, s, spec, epsilon));
    out.push_back(alt4_check(a, b, spec, epsilon));
  }
  out.push_back(alt_trace_check(a, b, r, q, epsilon));
  for (auto& rep : eig_product_check(a, b, r, s, epsilon)) out.push_back(std::move(rep));
  out.push_back(majorization_bridge_check(a, b, r, s, epsilon));
  {
    auto rep = make_gap("psd_order_check", psd_order_check(p1, p2), 0.0, epsilon);
    out.push_back(std::move(rep));
  }
  for (std::size_t m : {2u, 3u}) {
    for (auto& rep : amgm_gaps(family, m, specs, epsilon)) out.push_back(std::move(rep));
  }
  out.push_back(recht_gap(family, 2, epsilon));

  const std::string context = "trial=" + std::to_string(trial) + ";d=" + std::to_string(d);
  for (auto& rep : out) {
    rep.seed = trial_seed;
    rep.context = context;
  }
  return out;
}

}  // namespace amgm
