#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "amgm/matrix.hpp"

namespace amgm {

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for trial `index` of a run seeded with `seed`: mix64(seed XOR index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ index);
}

/// SplitMix64 stream: state += 0x9E3779B97F4A7C15, output mix64(state).
///
/// Uniform doubles take the top 53 bits; normals use the Box-Muller cosine
/// branch with one draw pair per variate so that streams stay aligned.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }
  /// Uniform in [0, 1).
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Uniform integer in [0, n); n >= 1.
  std::uint64_t index(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n);

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Gram matrix GᵀG/p of a p×d standard Gaussian draw.
struct Wishart {
  int p = 1;
};
/// Orthogonal projector of the given rank.
struct Projector {
  int rank = 0;
};
/// diag(|g_1|, …, |g_d|).
struct Diagonal {};
/// Qᵀ·diag·Q with Q from random_orthogonal. When condition > 0 the diagonal is
/// log-uniform on [1/condition, 1]; otherwise it holds |Gaussian| draws.
struct RotatedDiagonal {
  double condition = 0.0;
};

using PsdKind = std::variant<Wishart, Projector, Diagonal, RotatedDiagonal>;

std::string to_string(const PsdKind& kind);

/// Modified Gram-Schmidt (two passes) on a Gaussian draw; redraws when a pivot
/// falls below 1e-8, at most 16 attempts.
Matrix random_orthogonal(Rng& rng, std::size_t d);

Matrix random_psd(Rng& rng, std::size_t d, const PsdKind& kind);

/// d×d standard Gaussian matrix.
Matrix random_gaussian(Rng& rng, std::size_t d);

/// Symmetric matrix with standard Gaussian upper triangle.
Matrix random_symmetric(Rng& rng, std::size_t d);

Vector random_gaussian_vector(Rng& rng, std::size_t d);

}  // namespace amgm
