#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "spd_bregman/spd_core.hpp"

namespace spdb {

enum class MapKind { SquaredFrobenius, NegVonNeumann, Burg };

/// CLI tags: "frobenius", "von-neumann", "burg".
std::string_view map_tag(MapKind kind);
std::optional<MapKind> parse_map_tag(std::string_view tag);

inline constexpr double kDualityTolerance = 1e-9;

/// A Legendre-type mirror map on the SPD cone together with its gradient,
/// Hessian action, convex conjugate and the conjugate's gradient.
///
/// Implementations are immutable. `grad_conjugate` inverts `grad` on the dual
/// domain; `conjugate` and `grad_conjugate` throw DualDomainViolation outside
/// of it.
class MirrorMap {
 public:
  virtual ~MirrorMap() = default;

  virtual MapKind kind() const = 0;
  std::string_view name() const { return map_tag(kind()); }

  virtual double psi(const SpdMatrix& x) const = 0;
  virtual SymMatrix grad(const SpdMatrix& x) const = 0;
  /// Directional derivative of grad at x along s.
  virtual SymMatrix hess_apply(const SpdMatrix& x, const SymMatrix& s) const = 0;
  virtual double conjugate(const SymMatrix& y) const = 0;
  virtual SpdMatrix grad_conjugate(const SymMatrix& y) const = 0;
  virtual bool in_dual_domain(const SymMatrix& y) const = 0;

  // Hypotheses of the reverse-symmetrization result, declared per map.
  virtual bool is_grad_operator_monotone() const { return true; }
  virtual bool is_spectral() const { return true; }
};

using MirrorMapPtr = std::shared_ptr<const MirrorMap>;

MirrorMapPtr make_map(MapKind kind);

/// One shared instance per built-in map.
class MapRegistry {
 public:
  MapRegistry();
  const MirrorMap& get(MapKind kind) const;

 private:
  MirrorMapPtr frobenius_, von_neumann_, burg_;
};

/// ||grad_conjugate(grad(x)) - x||_F / ||x||_F.
double check_duality(const MirrorMap& map, const SpdMatrix& x);

/// Throws DualDomainViolation when y is outside the map's dual domain.
void require_dual_domain(const MirrorMap& map, const SymMatrix& y, const char* context);

}  // namespace spdb
