#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spd_bregman/mirror_maps.hpp"
#include "spd_bregman/spd_core.hpp"

namespace spdb {

enum class MeanType {
  Arithmetic,
  Geometric,
  Harmonic,
  LogEuclidean,
  Logarithmic,
  CanonicalForward,
  CanonicalReverse,
};

/// A mean selector. Only CanonicalReverse carries a mirror map; the forward
/// canonical mean is the arithmetic mean for every map.
struct MeanKind {
  MeanType type = MeanType::Arithmetic;
  std::optional<MapKind> map;

  static MeanKind of(MeanType t) { return {t, std::nullopt}; }
  static MeanKind canonical_reverse(MapKind m) { return {MeanType::CanonicalReverse, m}; }

  bool operator==(const MeanKind&) const = default;
};

/// "arithmetic", "geometric", "harmonic", "log-euclidean", "logarithmic",
/// "canonical-forward", "canonical-reverse".
std::string_view mean_tag(MeanType type);
std::optional<MeanType> parse_mean_tag(std::string_view tag);
std::string describe(const MeanKind& kind);

enum class InvarianceClass { GLn, On, Neither };
std::string_view to_string(InvarianceClass c);

/// Which integral `logarithmic_mean` evaluates. `LiteralIntegral` is
/// int_0^1 A^t B^{1-t} dt followed by (M + M^T) / 2; `GeodesicIntegral` is
/// int_0^1 A #_t B dt, which is symmetric for every t.
enum class LogarithmicVariant { LiteralIntegral, GeodesicIntegral };

inline constexpr int kDefaultQuadNodes = 32;

struct MeanOptions {
  int quad_nodes = kDefaultQuadNodes;
  LogarithmicVariant logarithmic_variant = LogarithmicVariant::LiteralIntegral;
};

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre_unit(int nodes);

SpdMatrix arithmetic_mean(const SpdMatrix& a, const SpdMatrix& b);
SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b);
SpdMatrix harmonic_mean(const SpdMatrix& a, const SpdMatrix& b);
SpdMatrix log_euclidean_mean(const SpdMatrix& a, const SpdMatrix& b);

struct LogarithmicMeanResult {
  SpdMatrix mean;
  /// ||Q - Q^T||_F / ||Q||_F of the raw quadrature sum Q before symmetrizing.
  double asymmetry = 0.0;
};

/// Throws NotPositiveDefinite if the symmetrized quadrature leaves the cone.
LogarithmicMeanResult logarithmic_mean_detailed(const SpdMatrix& a, const SpdMatrix& b,
                                                int quad_nodes = kDefaultQuadNodes,
                                                LogarithmicVariant variant = LogarithmicVariant::LiteralIntegral);
SpdMatrix logarithmic_mean(const SpdMatrix& a, const SpdMatrix& b, int quad_nodes = kDefaultQuadNodes,
                           LogarithmicVariant variant = LogarithmicVariant::LiteralIntegral);

/// Same as the arithmetic mean for every mirror map.
SpdMatrix canonical_forward_mean(const SpdMatrix& a, const SpdMatrix& b);

/// grad_conjugate((grad(a) + grad(b)) / 2): the dual-space arithmetic mean
/// pulled back to the cone.
SpdMatrix canonical_reverse_mean(const MirrorMap& map, const SpdMatrix& a, const SpdMatrix& b);

SpdMatrix mean_dispatch(const MeanKind& kind, const SpdMatrix& a, const SpdMatrix& b, const MapRegistry& maps,
                        const MeanOptions& options = {});

}  // namespace spdb
