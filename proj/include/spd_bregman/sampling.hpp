#pragma once

// Seeded random draws of SPD, symmetric, orthogonal and invertible matrices.
// Every draw is a pure function of (seed, stream), so sample i of a
// verification run is reproducible on its own, whichever thread evaluates it.

#include <cstdint>
#include <random>
#include <string>

#include "spd_bregman/spd_core.hpp"

namespace spdb {

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);
  double normal();
  Matrix gaussian(int rows, int cols);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Eigenvalue range used by `random_spd`; eigenvalues are log-uniform.
struct SpectrumRange {
  double lo = 1e-2;
  double hi = 1e2;
};

/// Haar-distributed orthogonal matrix (QR of a Gaussian, signs fixed).
Matrix random_orthogonal(int n, Rng& rng);

/// Q^T diag(lambda) Q with lambda log-uniform in `range`.
SpdMatrix random_spd(int n, Rng& rng, SpectrumRange range = {});

/// Random SPD matrix sharing the eigenvectors `basis` (so it commutes with
/// anything else built on the same basis).
SpdMatrix random_spd_in_basis(const Matrix& basis, Rng& rng, SpectrumRange range = {});

/// Symmetric matrix with Gaussian entries, scaled to Frobenius norm `norm`.
SymMatrix random_symmetric(int n, Rng& rng, double norm = 1.0);

/// U diag(s) V^T with s log-uniform in [1 / max_sv, max_sv].
Matrix random_invertible(int n, Rng& rng, double max_sv = 3.0);

/// a + W W^T * scale with W Gaussian, so the result dominates `a` in the
/// Loewner order. `scale` is relative to the largest eigenvalue of `a`.
SpdMatrix random_dominating(const SpdMatrix& a, Rng& rng, double scale);

/// Short stable digest (FNV-1a over the entries) used to label samples.
std::string digest(const SymMatrix& m);

}  // namespace spdb
