#pragma once

// Helpers shared by the unit tests and the acceptance runner: small matrix
// constructors and the sampled divergence-axiom and geodesic checks, which
// have no home in the library itself.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "spd_bregman/divergences.hpp"
#include "spd_bregman/means.hpp"
#include "spd_bregman/mirror_maps.hpp"
#include "spd_bregman/sampling.hpp"
#include "spd_bregman/spd_core.hpp"

namespace spdb::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline SpdMatrix spd(std::initializer_list<std::initializer_list<double>> rows) { return validate_spd(mat(rows)); }

inline SpdMatrix spd_diag(std::initializer_list<double> d) {
  Vector v(static_cast<int>(d.size()));
  int i = 0;
  for (double x : d) v(i++) = x;
  return validate_spd(Matrix(v.asDiagonal()));
}

inline SpdMatrix scalar(double x) { return validate_spd(Matrix::Constant(1, 1, x)); }

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline constexpr MapKind kAllMaps[] = {MapKind::SquaredFrobenius, MapKind::NegVonNeumann, MapKind::Burg};

/// Every divergence operation of the library on (x, y), as plain values.
inline std::vector<double> all_divergences(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y) {
  const SpdMatrix am = arithmetic_mean(x, y);
  const SpdMatrix cr = canonical_reverse_mean(map, x, y);
  return {bregman(map, x, y).value,
          bregman(map, y, x).value,
          jeffreys(map, x, y).value,
          forward_symmetrized(map, x, y, am).value,
          reverse_symmetrized(map, x, y, cr).value,
          forward_symmetrized(map, x, y, geometric_mean(x, y)).value,
          reverse_symmetrized(map, x, y, geometric_mean(x, y)).value,
          jensen_shannon_closed(map, x, y).value,
          canonical_reverse_closed(map, x, y).value};
}

struct DivergenceAxiomResult {
  int samples = 0;
  double min_value = 0.0;           // nonnegativity: >= -1e-10
  double max_near_value = 0.0;      // indiscernible pairs: <= 1e-10
  double min_far_value = 1e300;     // distinguishable pairs: > 1e-10
  double max_convexity_excess = 0;  // D(mid, Y) - mean of D(X_i, Y): <= 1e-9
  bool passed = false;
};

inline constexpr double kDivergenceZero = 1e-10;
inline constexpr double kConvexitySlack = 1e-9;

/// Nonnegativity, identity of indiscernibles and first-argument midpoint
/// convexity, for n = 1..8 with `per_dim` draws each. Indiscernibility is
/// probed in two regimes: Y = X (I + 1e-12 E) with ||X - Y|| / ||X|| far below
/// 1e-8, and distinct draws / 1e-3 relative perturbations far above it.
inline DivergenceAxiomResult check_divergence_axioms(const MirrorMap& map, int per_dim, std::uint64_t seed) {
  DivergenceAxiomResult r;
  r.min_value = 1e300;
  for (int n = 1; n <= 8; ++n) {
    for (int i = 0; i < per_dim; ++i) {
      Rng rng(seed, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(i));
      const SpdMatrix x = random_spd(n, rng);
      const SpdMatrix y = random_spd(n, rng);
      for (double v : all_divergences(map, x, y)) r.min_value = std::min(r.min_value, v);

      auto nearby = [&](double rel) {
        const Matrix half = matrix_function(x, MatrixFn::sqrt()).matrix();
        const Matrix e = random_symmetric(n, rng, rel).matrix();
        return validate_spd(SymMatrix(half * (Matrix::Identity(n, n) + e) * half));
      };
      const SpdMatrix close = nearby(1e-12);
      r.max_near_value = std::max({r.max_near_value, bregman(map, x, close).value, bregman(map, close, x).value});
      const SpdMatrix apart = nearby(1e-3);
      r.min_far_value = std::min({r.min_far_value, bregman(map, x, y).value, bregman(map, x, apart).value,
                                  bregman(map, apart, x).value});

      const SpdMatrix x2 = random_spd(n, rng);
      const SpdMatrix mid = arithmetic_mean(x, x2);
      const double lhs = bregman(map, mid, y).value;
      const double rhs = 0.5 * (bregman(map, x, y).value + bregman(map, x2, y).value);
      r.max_convexity_excess = std::max(r.max_convexity_excess, lhs - rhs);
      ++r.samples;
    }
  }
  r.passed = r.min_value >= -kDivergenceZero && r.max_near_value <= kDivergenceZero &&
             r.min_far_value > kDivergenceZero && r.max_convexity_excess <= kConvexitySlack;
  return r;
}

struct GeodesicCheckResult {
  bool endpoints_exact = true;
  double commuting_residual = 0.0;
  double symmetry_residual = 0.0;
  double congruence_residual = 0.0;
  int samples = 0;
};

/// Endpoints returned exactly, commuting midpoint A^{1/2} B^{1/2}, symmetry of
/// the midpoint and GL(n) congruence invariance of the midpoint.
inline GeodesicCheckResult check_geodesic(int samples, std::uint64_t seed) {
  GeodesicCheckResult r;
  for (int i = 0; i < samples; ++i) {
    const int n = 2 + i % 7;
    Rng rng(seed, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(i));
    const SpdMatrix a = random_spd(n, rng);
    const SpdMatrix b = random_spd(n, rng);
    r.endpoints_exact = r.endpoints_exact && geodesic(a, b, 0.0).matrix() == a.matrix() &&
                        geodesic(a, b, 1.0).matrix() == b.matrix();

    const Matrix q = random_orthogonal(n, rng);
    const SpdMatrix ca = random_spd_in_basis(q, rng);
    const SpdMatrix cb = random_spd_in_basis(q, rng);
    const SymMatrix product(sqrt_spd(ca).matrix() * sqrt_spd(cb).matrix());
    r.commuting_residual = std::max(r.commuting_residual, relative_distance(geodesic(ca, cb, 0.5), product));

    const SpdMatrix mid = geodesic(a, b, 0.5);
    r.symmetry_residual = std::max(r.symmetry_residual, relative_distance(geodesic(b, a, 0.5), mid));

    const Matrix p = random_invertible(n, rng);
    const SpdMatrix pa = validate_spd(congruence(a, p));
    const SpdMatrix pb = validate_spd(congruence(b, p));
    r.congruence_residual =
        std::max(r.congruence_residual, relative_distance(geodesic(pa, pb, 0.5), congruence(mid, p)));
    ++r.samples;
  }
  return r;
}

}  // namespace spdb::testing
