#include "amgm/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "amgm/linalg.hpp"

namespace amgm {

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::index(std::uint64_t n) {
  if (n == 0) throw DomainError("Rng::index: n must be >= 1");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

int Rng::integer(int lo, int hi) {
  if (hi < lo) throw DomainError("Rng::integer: empty range");
  return lo + static_cast<int>(index(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[index(i)]);
  return p;
}

std::string to_string(const PsdKind& kind) {
  struct Visitor {
    std::string operator()(const Wishart& w) const { return "wishart(" + std::to_string(w.p) + ")"; }
    std::string operator()(const Projector& p) const {
      return "projector(" + std::to_string(p.rank) + ")";
    }
    std::string operator()(const Diagonal&) const { return "diagonal"; }
    std::string operator()(const RotatedDiagonal& r) const {
      if (r.condition <= 0.0) return "rotated-diagonal";
      std::ostringstream os;
      os << "rotated-diagonal(" << r.condition << ")";
      return os.str();
    }
  };
  return std::visit(Visitor{}, kind);
}

Matrix random_gaussian(Rng& rng, std::size_t d) {
  Matrix g(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.normal();
  return g;
}

Matrix random_symmetric(Rng& rng, std::size_t d) {
  Matrix s(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double v = rng.normal();
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

Vector random_gaussian_vector(Rng& rng, std::size_t d) {
  Vector v(d);
  for (double& x : v) x = rng.normal();
  return v;
}

Matrix random_orthogonal(Rng& rng, std::size_t d) {
  if (d == 0) throw DomainError("random_orthogonal: d must be >= 1");
  constexpr int kMaxAttempts = 16;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Matrix q = random_gaussian(rng, d);
    bool ok = true;
    for (std::size_t j = 0; j < d && ok; ++j) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          double proj = 0.0;
          for (std::size_t i = 0; i < d; ++i) proj += q(i, k) * q(i, j);
          for (std::size_t i = 0; i < d; ++i) q(i, j) -= proj * q(i, k);
        }
      }
      double nrm = 0.0;
      for (std::size_t i = 0; i < d; ++i) nrm += q(i, j) * q(i, j);
      nrm = std::sqrt(nrm);
      if (nrm < 1e-8) {
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < d; ++i) q(i, j) /= nrm;
    }
    if (ok) return q;
  }
  throw ConvergenceError("random_orthogonal: re-draw budget exhausted");
}

Matrix random_psd(Rng& rng, std::size_t d, const PsdKind& kind) {
  if (d == 0) throw DomainError("random_psd: d must be >= 1");
  struct Visitor {
    Rng& rng;
    std::size_t d;

    Matrix operator()(const Wishart& w) const {
      if (w.p < 1) throw DomainError("random_psd: wishart p must be >= 1");
      const auto p = static_cast<std::size_t>(w.p);
      std::vector<double> g(p * d);
      for (double& x : g) x = rng.normal();
      Matrix out(d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
          double s = 0.0;
          for (std::size_t r = 0; r < p; ++r) s += g[r * d + i] * g[r * d + j];
          s /= static_cast<double>(p);
          out(i, j) = s;
          out(j, i) = s;
        }
      }
      return out;
    }

    Matrix operator()(const Projector& pr) const {
      if (pr.rank < 0 || static_cast<std::size_t>(pr.rank) > d) {
        throw DomainError("random_psd: projector rank must lie in [0, d]");
      }
      Matrix out = Matrix::identity(d);
      const std::size_t removed = d - static_cast<std::size_t>(pr.rank);
      if (removed == 0) return out;
      if (pr.rank == 0) return Matrix::zeros(d);
      const Matrix q = random_orthogonal(rng, d);
      for (std::size_t c = 0; c < removed; ++c) {
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) out(i, j) -= q(i, c) * q(j, c);
      }
      return out.symmetrized();
    }

    Matrix operator()(const Diagonal&) const {
      std::vector<double> diag(d);
      for (double& x : diag) x = std::abs(rng.normal());
      return Matrix::diagonal(diag);
    }

    Matrix operator()(const RotatedDiagonal& rd) const {
      if (rd.condition < 0.0 || (rd.condition > 0.0 && rd.condition < 1.0)) {
        throw DomainError("random_psd: condition must be 0 or >= 1");
      }
      std::vector<double> diag(d);
      if (rd.condition > 0.0) {
        const double span = std::log(rd.condition);
        for (double& x : diag) x = std::exp(-span * rng.uniform());
      } else {
        for (double& x : diag) x = std::abs(rng.normal());
      }
      const Matrix q = random_orthogonal(rng, d);
      Matrix out(d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
          double s = 0.0;
          for (std::size_t k = 0; k < d; ++k) s += q(k, i) * diag[k] * q(k, j);
          out(i, j) = s;
          out(j, i) = s;
        }
      }
      return out;
    }
  };
  return std::visit(Visitor{rng, d}, kind);
}

}  // namespace amgm
