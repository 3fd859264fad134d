#include "spd_bregman/mirror_maps.hpp"

#include <cmath>

#include "spd_bregman/errors.hpp"

namespace spdb {

namespace {

bool in_open_cone(const SymMatrix& y) {
  const Vector ev = eigen_decompose(y).eigenvalues;
  return ev(0) > kSpdRelativeTolerance * std::max(1.0, ev.cwiseAbs().maxCoeff());
}

// psi(X) = ||X||_F^2
class SquaredFrobeniusMap final : public MirrorMap {
 public:
  MapKind kind() const override { return MapKind::SquaredFrobenius; }

  double psi(const SpdMatrix& x) const override { return x.matrix().squaredNorm(); }
  SymMatrix grad(const SpdMatrix& x) const override { return x.sym() * 2.0; }

  SymMatrix hess_apply(const SpdMatrix& x, const SymMatrix& s) const override {
    require_same_dim(x, s, "hess_apply");
    return s * 2.0;
  }

  double conjugate(const SymMatrix& y) const override {
    require_dual_domain(*this, y, "conjugate");
    return y.matrix().squaredNorm() / 4.0;
  }

  SpdMatrix grad_conjugate(const SymMatrix& y) const override {
    require_dual_domain(*this, y, "grad_conjugate");
    return validate_spd(y / 2.0);
  }

  bool in_dual_domain(const SymMatrix& y) const override { return in_open_cone(y); }
};

// psi(X) = trace(X log X - X)
class NegVonNeumannMap final : public MirrorMap {
 public:
  MapKind kind() const override { return MapKind::NegVonNeumann; }

  double psi(const SpdMatrix& x) const override {
    double sum = 0.0;
    for (double l : x.eigen().eigenvalues) sum += l * std::log(l) - l;
    return sum;
  }

  SymMatrix grad(const SpdMatrix& x) const override { return log_spd(x); }

  SymMatrix hess_apply(const SpdMatrix& x, const SymMatrix& s) const override {
    require_same_dim(x, s, "hess_apply");
    return frechet_derivative(x.eigen(), divided_difference_log, s);
  }

  double conjugate(const SymMatrix& y) const override {
    return eigen_decompose(y).eigenvalues.array().exp().sum();
  }

  SpdMatrix grad_conjugate(const SymMatrix& y) const override { return exp_sym(y); }

  bool in_dual_domain(const SymMatrix&) const override { return true; }
};

// psi(X) = -log det X
class BurgMap final : public MirrorMap {
 public:
  MapKind kind() const override { return MapKind::Burg; }

  double psi(const SpdMatrix& x) const override { return -x.log_det(); }
  SymMatrix grad(const SpdMatrix& x) const override { return matrix_function(x, MatrixFn::negate_inverse()); }

  SymMatrix hess_apply(const SpdMatrix& x, const SymMatrix& s) const override {
    require_same_dim(x, s, "hess_apply");
    const Matrix xinv = matrix_function(x, MatrixFn::inverse()).matrix();
    return SymMatrix(xinv * s.matrix() * xinv);
  }

  double conjugate(const SymMatrix& y) const override {
    require_dual_domain(*this, y, "conjugate");
    const SpdMatrix neg = validate_spd(-y);
    return -static_cast<double>(y.dim()) - neg.log_det();
  }

  SpdMatrix grad_conjugate(const SymMatrix& y) const override {
    require_dual_domain(*this, y, "grad_conjugate");
    return inverse_spd(validate_spd(-y));
  }

  bool in_dual_domain(const SymMatrix& y) const override { return in_open_cone(-y); }
};

}  // namespace

std::string_view map_tag(MapKind kind) {
  switch (kind) {
    case MapKind::SquaredFrobenius: return "frobenius";
    case MapKind::NegVonNeumann: return "von-neumann";
    case MapKind::Burg: return "burg";
  }
  return "unknown";
}

std::optional<MapKind> parse_map_tag(std::string_view tag) {
  if (tag == "frobenius") return MapKind::SquaredFrobenius;
  if (tag == "von-neumann") return MapKind::NegVonNeumann;
  if (tag == "burg") return MapKind::Burg;
  return std::nullopt;
}

MirrorMapPtr make_map(MapKind kind) {
  switch (kind) {
    case MapKind::SquaredFrobenius: return std::make_shared<SquaredFrobeniusMap>();
    case MapKind::NegVonNeumann: return std::make_shared<NegVonNeumannMap>();
    case MapKind::Burg: return std::make_shared<BurgMap>();
  }
  throw SpdError(ErrorCode::InvalidArgument, "unknown map kind");
}

MapRegistry::MapRegistry()
    : frobenius_(make_map(MapKind::SquaredFrobenius)),
      von_neumann_(make_map(MapKind::NegVonNeumann)),
      burg_(make_map(MapKind::Burg)) {}

const MirrorMap& MapRegistry::get(MapKind kind) const {
  switch (kind) {
    case MapKind::SquaredFrobenius: return *frobenius_;
    case MapKind::NegVonNeumann: return *von_neumann_;
    case MapKind::Burg: return *burg_;
  }
  throw SpdError(ErrorCode::InvalidArgument, "unknown map kind");
}

void require_dual_domain(const MirrorMap& map, const SymMatrix& y, const char* context) {
  if (!map.in_dual_domain(y)) {
    throw SpdError(ErrorCode::DualDomainViolation,
                   std::string(context) + ": argument outside the dual domain of the " + std::string(map.name()) + " map");
  }
}

double check_duality(const MirrorMap& map, const SpdMatrix& x) {
  const SymMatrix g = map.grad(x);
  require_dual_domain(map, g, "check_duality");
  return relative_distance(map.grad_conjugate(g), x);
}

}  // namespace spdb
