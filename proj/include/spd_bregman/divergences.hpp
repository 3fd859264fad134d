#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spd_bregman/means.hpp"
#include "spd_bregman/mirror_maps.hpp"

namespace spdb {

enum class Direction { Plain, Jeffreys, ForwardSym, ReverseSym };
std::string_view to_string(Direction d);

/// Which slot the mean occupies in a symmetrization.
enum class Side { Forward, Reverse };
std::string_view to_string(Side s);

inline constexpr double kZeroTolerance = 1e-10;
inline constexpr double kIllConditioned = 1e12;

struct DivergenceValue {
  double value = 0.0;
  MapKind map = MapKind::SquaredFrobenius;
  Direction direction = Direction::Plain;
  std::optional<MeanKind> mean_used;
  std::vector<std::string> warnings;
};

/// psi(X) - psi(Y) - <grad psi(Y), X - Y>.
DivergenceValue bregman(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y);

/// (D(X||Y) + D(Y||X)) / 2.
DivergenceValue jeffreys(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y);

/// (D(X||M) + D(Y||M)) / 2.
DivergenceValue forward_symmetrized(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, const SpdMatrix& m,
                                    std::optional<MeanKind> mean_used = std::nullopt);

/// (D(M||X) + D(M||Y)) / 2.
DivergenceValue reverse_symmetrized(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, const SpdMatrix& m,
                                    std::optional<MeanKind> mean_used = std::nullopt);

/// Jensen-Shannon form (psi(X) + psi(Y)) / 2 - psi((X + Y) / 2); equals the
/// forward symmetrization at the arithmetic mean.
DivergenceValue jensen_shannon_closed(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y);

/// Reverse symmetrization at the canonical reverse mean, written through the
/// conjugate: (psi*(grad psi(X)) + psi*(grad psi(Y))) / 2 - psi*(Ybar) with
/// Ybar = (grad psi(X) + grad psi(Y)) / 2. By Fenchel-Young,
/// psi*(grad psi(X)) = <grad psi(X), X> - psi(X).
DivergenceValue canonical_reverse_closed(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y);

/// (psi(X) + psi(Y)) / 2 - psi*(Ybar). This variant pairs primal values with
/// the conjugate; it agrees with the reverse symmetrization only when
/// psi*(grad psi(X)) == psi(X), e.g. the squared Frobenius map. Kept so the
/// discrepancy can be measured and reported.
double reverse_closed_primal_average(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y);

/// log det((X + Y) / 2) - (log det X + log det Y) / 2.
DivergenceValue s_divergence(const SpdMatrix& x, const SpdMatrix& y);

/// Which formula set `closed_form` evaluates for the reverse cells.
/// `Consistent` cells equal the generic compositions. `PrimalAverage` cells
/// follow `reverse_closed_primal_average` written out per map:
///   von Neumann: trace((X log X + Y log Y) / 2) - trace((X + Y) / 2)
///                - trace(exp((log X + log Y) / 2))
///   Burg:        log det((X^-1 + Y^-1) / 2) + log det(X^-1 Y^-1) / 2 + n
/// Forward cells are identical in both sets.
enum class ClosedFormVariant { Consistent, PrimalAverage };

/// Per-map closed forms of the canonical forward / reverse symmetrized
/// divergences, written directly from traces and determinants (no mirror map
/// calls) so they can serve as an independent oracle.
DivergenceValue closed_form(MapKind map, Side side, const SpdMatrix& x, const SpdMatrix& y,
                            ClosedFormVariant variant = ClosedFormVariant::Consistent);

}  // namespace spdb
