#include <gtest/gtest.h>

#include <cmath>

#include "spd_bregman/errors.hpp"
#include "spd_bregman/mirror_maps.hpp"
#include "spd_bregman/sampling.hpp"
#include "spd_bregman/variational.hpp"
#include "support.hpp"

using namespace spdb;
using spdb::testing::kAllMaps;
using spdb::testing::scalar;
using spdb::testing::spd_diag;

namespace {

const MapRegistry& maps() {
  static const MapRegistry registry;
  return registry;
}

std::uint64_t stream(int n, int i) { return (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(i); }

/// A point of the dual domain: SPD for Frobenius, any symmetric matrix for
/// von Neumann, negative definite for Burg.
SymMatrix dual_point(MapKind kind, int n, Rng& rng) {
  switch (kind) {
    case MapKind::SquaredFrobenius: return random_spd(n, rng).sym();
    case MapKind::NegVonNeumann: return random_symmetric(n, rng, rng.uniform(0.1, 5.0));
    case MapKind::Burg: return -random_spd(n, rng).sym();
  }
  return SymMatrix::zero(n);
}

}  // namespace

TEST(MirrorMaps, Tags) {
  for (MapKind k : kAllMaps) {
    EXPECT_EQ(parse_map_tag(map_tag(k)), k);
    EXPECT_EQ(maps().get(k).kind(), k);
    EXPECT_EQ(make_map(k)->name(), map_tag(k));
  }
  EXPECT_EQ(map_tag(MapKind::NegVonNeumann), "von-neumann");
  EXPECT_FALSE(parse_map_tag("stein").has_value());
}

TEST(MirrorMaps, BurgScalarValues) {
  const MirrorMap& burg = maps().get(MapKind::Burg);
  EXPECT_NEAR(burg.psi(scalar(2)), -std::log(2.0), 1e-15);
  EXPECT_NEAR(burg.grad(scalar(2))(0, 0), -0.5, 1e-15);
}

TEST(MirrorMaps, VonNeumannAtIdentity) {
  const MirrorMap& vn = maps().get(MapKind::NegVonNeumann);
  EXPECT_NEAR(vn.psi(SpdMatrix::identity(2)), -2.0, 1e-15);
  EXPECT_EQ(vn.grad(SpdMatrix::identity(2)).norm(), 0.0);
}

TEST(MirrorMaps, FrobeniusOnDiagonal) {
  const MirrorMap& fr = maps().get(MapKind::SquaredFrobenius);
  EXPECT_DOUBLE_EQ(fr.psi(spd_diag({1, 2})), 5.0);
  EXPECT_LE(relative_distance(fr.grad(spd_diag({1, 2})), spd_diag({2, 4})), 1e-15);
}

TEST(MirrorMaps, ConjugateFormulas) {
  Rng rng(3);
  const SpdMatrix a = random_spd(3, rng);
  const SymMatrix s = random_symmetric(3, rng);
  const Matrix am = a.matrix();
  EXPECT_NEAR(maps().get(MapKind::SquaredFrobenius).conjugate(a), (am * am).trace() / 4, 1e-12 * (am * am).trace());
  const SpdMatrix es = exp_sym(s);
  EXPECT_NEAR(maps().get(MapKind::NegVonNeumann).conjugate(s), es.matrix().trace(), 1e-12 * es.matrix().trace());
  EXPECT_NEAR(maps().get(MapKind::Burg).conjugate(-a.sym()), -3 - a.log_det(), 1e-12 * std::abs(3 + a.log_det()));
}

TEST(HessApply, FrobeniusIsTwiceIdentity) {
  Rng rng(1);
  const SpdMatrix x = random_spd(4, rng);
  const SymMatrix s = random_symmetric(4, rng);
  EXPECT_LE(relative_distance(maps().get(MapKind::SquaredFrobenius).hess_apply(x, s), s * 2.0), 1e-15);
}

TEST(HessApply, BurgAtIdentity) {
  Rng rng(2);
  const SymMatrix s = random_symmetric(3, rng);
  EXPECT_LE(relative_distance(maps().get(MapKind::Burg).hess_apply(SpdMatrix::identity(3), s), s), 1e-15);
}

TEST(HessApply, VonNeumannOnDiagonalInput) {
  const Vector lambda = (Vector(3) << 0.5, 2.0, 7.0).finished();
  const SpdMatrix x = validate_spd(Matrix(lambda.asDiagonal()));
  Rng rng(9);
  const SymMatrix s = random_symmetric(3, rng);
  const SymMatrix h = maps().get(MapKind::NegVonNeumann).hess_apply(x, s);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double w = i == j ? 1 / lambda(i)
                              : (std::log(lambda(i)) - std::log(lambda(j))) / (lambda(i) - lambda(j));
      EXPECT_NEAR(h(i, j), s(i, j) * w, 1e-14);
    }
  }
  // Central-difference oracle of the gradient with h = 1e-5.
  const double step = 1e-5;
  const MirrorMap& vn = maps().get(MapKind::NegVonNeumann);
  const SymMatrix fd = (vn.grad(validate_spd(x + s * step)) - vn.grad(validate_spd(x - s * step))) / (2 * step);
  EXPECT_LE(relative_distance(h, fd), 1e-7);
}

TEST(HessApply, MatchesFiniteDifferencesOfGradient) {
  for (MapKind k : kAllMaps) {
    const MirrorMap& map = maps().get(k);
    double worst = 0;
    for (int i = 0; i < 60; ++i) {
      const int n = 1 + i % 8;
      Rng rng(31, stream(n, i));
      const SpdMatrix x = random_spd(n, rng);
      const SymMatrix s = random_symmetric(n, rng);
      const double h = 1e-5 * x.min_eigenvalue();
      const SymMatrix fd = (map.grad(validate_spd(x + s * h)) - map.grad(validate_spd(x - s * h))) / (2 * h);
      worst = std::max(worst, relative_distance(fd, map.hess_apply(x, s)));
    }
    EXPECT_LE(worst, 1e-5) << map.name();
  }
}

TEST(HessApply, SelfAdjointAndPositiveDefinite) {
  for (MapKind k : kAllMaps) {
    const MirrorMap& map = maps().get(k);
    for (int i = 0; i < 60; ++i) {
      const int n = 1 + i % 8;
      Rng rng(37, stream(n, i));
      const SpdMatrix x = random_spd(n, rng);
      const SymMatrix s = random_symmetric(n, rng), t = random_symmetric(n, rng);
      const double st = frobenius_inner(map.hess_apply(x, s), t);
      const double ts = frobenius_inner(s, map.hess_apply(x, t));
      const double scale = map.hess_apply(x, s).norm() * t.norm();
      EXPECT_LE(std::abs(st - ts), 1e-10 * std::max(1.0, scale)) << map.name();
      EXPECT_GT(frobenius_inner(map.hess_apply(x, s), s), 0.0) << map.name();
    }
  }
}

TEST(Duality, CheckDualityExamples) {
  Rng rng(4);
  EXPECT_LE(check_duality(maps().get(MapKind::Burg), random_spd(5, rng)), 1e-10);
  EXPECT_LE(check_duality(maps().get(MapKind::NegVonNeumann), SpdMatrix::identity(3)), 1e-15);
  EXPECT_EQ(check_duality(maps().get(MapKind::SquaredFrobenius), scalar(3)), 0.0);
}

TEST(Duality, RoundTripsBothDirections) {
  for (MapKind k : kAllMaps) {
    const MirrorMap& map = maps().get(k);
    for (int n = 1; n <= 8; ++n) {
      for (int i = 0; i < 20; ++i) {
        Rng rng(41, stream(n, i));
        const SpdMatrix x = random_spd(n, rng);
        EXPECT_LE(check_duality(map, x), kDualityTolerance) << map.name() << " n=" << n;
        const SymMatrix y = dual_point(k, n, rng);
        ASSERT_TRUE(map.in_dual_domain(y));
        EXPECT_LE(relative_distance(map.grad(map.grad_conjugate(y)), y), kDualityTolerance) << map.name();
      }
    }
  }
}

TEST(Duality, FenchelYoungEquality) {
  for (MapKind k : kAllMaps) {
    const MirrorMap& map = maps().get(k);
    for (int i = 0; i < 80; ++i) {
      const int n = 1 + i % 8;
      Rng rng(43, stream(n, i));
      const SpdMatrix x = random_spd(n, rng);
      const SymMatrix g = map.grad(x);
      const double lhs = map.psi(x) + map.conjugate(g);
      const double rhs = frobenius_inner(g, x);
      EXPECT_LE(std::abs(lhs - rhs), kDualityTolerance * std::max(1.0, std::abs(rhs))) << map.name();
    }
  }
}

TEST(Duality, VerifierPassesForAllMaps) {
  for (MapKind k : kAllMaps) {
    const VerificationReport r = verify_duality(maps().get(k), 5, 50, 17);
    EXPECT_TRUE(r.passed) << r.subject << " " << r.max_residual;
  }
}

TEST(DualDomain, ViolationsAreRejected) {
  const SymMatrix neg = -SymMatrix::identity(2);
  const SymMatrix pos = SymMatrix::identity(2);
  const MirrorMap& fr = maps().get(MapKind::SquaredFrobenius);
  const MirrorMap& vn = maps().get(MapKind::NegVonNeumann);
  const MirrorMap& burg = maps().get(MapKind::Burg);

  EXPECT_FALSE(fr.in_dual_domain(neg));
  EXPECT_FALSE(burg.in_dual_domain(pos));
  EXPECT_TRUE(vn.in_dual_domain(neg));
  EXPECT_TRUE(vn.in_dual_domain(pos));

  for (auto call : {std::function<void()>([&] { fr.conjugate(neg); }), std::function<void()>([&] { fr.grad_conjugate(neg); }),
                    std::function<void()>([&] { burg.conjugate(pos); }),
                    std::function<void()>([&] { burg.grad_conjugate(pos); }),
                    std::function<void()>([&] { require_dual_domain(burg, pos, "test"); })}) {
    try {
      call();
      ADD_FAILURE() << "expected DualDomainViolation";
    } catch (const SpdError& e) {
      EXPECT_EQ(e.code(), ErrorCode::DualDomainViolation);
    }
  }
}

TEST(MirrorMaps, GradientIsOperatorMonotone) {
  for (MapKind k : kAllMaps) {
    const MirrorMap& map = maps().get(k);
    EXPECT_TRUE(map.is_grad_operator_monotone());
    const VerificationReport r = audit_operator_monotone(map, 4, 200, 23);
    EXPECT_TRUE(r.passed) << r.subject << " " << r.max_residual;
  }
}

TEST(MirrorMaps, PsiIsSpectral) {
  for (MapKind k : kAllMaps) {
    const MirrorMap& map = maps().get(k);
    EXPECT_TRUE(map.is_spectral());
    for (int i = 0; i < 50; ++i) {
      const int n = 1 + i % 8;
      Rng rng(47, stream(n, i));
      const SpdMatrix x = random_spd(n, rng);
      const SpdMatrix rotated = validate_spd(congruence(x, random_orthogonal(n, rng)));
      EXPECT_LE(std::abs(map.psi(rotated) - map.psi(x)), 1e-9 * std::abs(map.psi(x))) << map.name();
    }
  }
}

TEST(MirrorMaps, DimensionMismatchInHessian) {
  try {
    maps().get(MapKind::Burg).hess_apply(SpdMatrix::identity(2), SymMatrix::identity(3));
    ADD_FAILURE();
  } catch (const SpdError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}
