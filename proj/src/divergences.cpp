#include "spd_bregman/divergences.hpp"

#include <cmath>
#include <sstream>

#include "spd_bregman/errors.hpp"

namespace spdb {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Plain: return "plain";
    case Direction::Jeffreys: return "jeffreys";
    case Direction::ForwardSym: return "forward";
    case Direction::ReverseSym: return "reverse";
  }
  return "unknown";
}

std::string_view to_string(Side s) { return s == Side::Forward ? "forward" : "reverse"; }

namespace {

// Clips cancellation noise to zero; anything more negative than the scaled
// tolerance is a bug, not rounding.
DivergenceValue finalize(double raw, double scale, MapKind map, Direction dir, std::optional<MeanKind> mean,
                         std::initializer_list<const SpdMatrix*> inputs) {
  const double tol = kZeroTolerance * std::max(1.0, scale);
  if (raw < -tol) {
    std::ostringstream os;
    os.precision(17);
    os << "divergence evaluated to " << raw << " (tolerance " << tol << ")";
    throw SpdError(ErrorCode::NumericalBreakdown, os.str());
  }
  DivergenceValue out{raw < 0 ? 0.0 : raw, map, dir, mean, {}};
  for (const SpdMatrix* m : inputs) {
    if (m->condition_number() > kIllConditioned) {
      std::ostringstream os;
      os << "input condition number " << m->condition_number() << " exceeds " << kIllConditioned;
      out.warnings.push_back(os.str());
      break;
    }
  }
  return out;
}

double raw_bregman(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, double& scale) {
  const double px = map.psi(x);
  const double py = map.psi(y);
  scale += std::abs(px) + std::abs(py);
  return px - py - frobenius_inner(map.grad(y), x.sym() - y.sym());
}

double log_det_chol(const Matrix& m) {
  const Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) throw SpdError(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double trace_x_log_x(const Matrix& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SpdError(ErrorCode::EigFailure, "eigensolver did not converge");
  double s = 0.0;
  for (double l : es.eigenvalues()) s += l * std::log(l);
  return s;
}

Matrix sym_log(const Matrix& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw SpdError(ErrorCode::EigFailure, "eigensolver did not converge");
  const Matrix& v = es.eigenvectors();
  return v * es.eigenvalues().array().log().matrix().asDiagonal() * v.transpose();
}

double trace_exp(const Matrix& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SpdError(ErrorCode::EigFailure, "eigensolver did not converge");
  return es.eigenvalues().array().exp().sum();
}

}  // namespace

DivergenceValue bregman(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y) {
  require_same_dim(x, y, "bregman");
  double scale = 0.0;
  const double raw = raw_bregman(map, x, y, scale);
  return finalize(raw, scale, map.kind(), Direction::Plain, std::nullopt, {&x, &y});
}

DivergenceValue jeffreys(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y) {
  require_same_dim(x, y, "jeffreys");
  double scale = 0.0;
  const double raw = 0.5 * (raw_bregman(map, x, y, scale) + raw_bregman(map, y, x, scale));
  return finalize(raw, scale, map.kind(), Direction::Jeffreys, std::nullopt, {&x, &y});
}

DivergenceValue forward_symmetrized(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, const SpdMatrix& m,
                                    std::optional<MeanKind> mean_used) {
  require_same_dim(x, y, "forward_symmetrized");
  require_same_dim(x, m, "forward_symmetrized");
  double scale = 0.0;
  const double raw = 0.5 * (raw_bregman(map, x, m, scale) + raw_bregman(map, y, m, scale));
  return finalize(raw, scale, map.kind(), Direction::ForwardSym, mean_used, {&x, &y, &m});
}

DivergenceValue reverse_symmetrized(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, const SpdMatrix& m,
                                    std::optional<MeanKind> mean_used) {
  require_same_dim(x, y, "reverse_symmetrized");
  require_same_dim(x, m, "reverse_symmetrized");
  double scale = 0.0;
  const double raw = 0.5 * (raw_bregman(map, m, x, scale) + raw_bregman(map, m, y, scale));
  return finalize(raw, scale, map.kind(), Direction::ReverseSym, mean_used, {&x, &y, &m});
}

DivergenceValue jensen_shannon_closed(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y) {
  require_same_dim(x, y, "jensen_shannon_closed");
  const SpdMatrix avg = validate_spd((x.sym() + y.sym()) * 0.5);
  const double px = map.psi(x), py = map.psi(y), pa = map.psi(avg);
  const double raw = 0.5 * (px + py) - pa;
  return finalize(raw, std::abs(px) + std::abs(py) + std::abs(pa), map.kind(), Direction::ForwardSym,
                  MeanKind::of(MeanType::Arithmetic), {&x, &y});
}

DivergenceValue canonical_reverse_closed(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y) {
  require_same_dim(x, y, "canonical_reverse_closed");
  const SymMatrix gx = map.grad(x);
  const SymMatrix gy = map.grad(y);
  const SymMatrix dual_mean = (gx + gy) * 0.5;
  require_dual_domain(map, dual_mean, "canonical_reverse_closed");
  const double cx = map.conjugate(gx), cy = map.conjugate(gy), cm = map.conjugate(dual_mean);
  const double raw = 0.5 * (cx + cy) - cm;
  return finalize(raw, std::abs(cx) + std::abs(cy) + std::abs(cm), map.kind(), Direction::ReverseSym,
                  MeanKind::canonical_reverse(map.kind()), {&x, &y});
}

double reverse_closed_primal_average(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y) {
  require_same_dim(x, y, "reverse_closed_primal_average");
  const SymMatrix dual_mean = (map.grad(x) + map.grad(y)) * 0.5;
  require_dual_domain(map, dual_mean, "reverse_closed_primal_average");
  return 0.5 * (map.psi(x) + map.psi(y)) - map.conjugate(dual_mean);
}

DivergenceValue s_divergence(const SpdMatrix& x, const SpdMatrix& y) {
  require_same_dim(x, y, "s_divergence");
  const double la = log_det_chol(0.5 * (x.matrix() + y.matrix()));
  const double lx = log_det_chol(x.matrix());
  const double ly = log_det_chol(y.matrix());
  return finalize(la - 0.5 * (lx + ly), std::abs(la) + std::abs(lx) + std::abs(ly), MapKind::Burg,
                  Direction::ForwardSym, MeanKind::of(MeanType::Arithmetic), {&x, &y});
}

DivergenceValue closed_form(MapKind map, Side side, const SpdMatrix& x, const SpdMatrix& y, ClosedFormVariant variant) {
  require_same_dim(x, y, "closed_form");
  const Matrix& xm = x.matrix();
  const Matrix& ym = y.matrix();
  const double n = x.dim();
  double raw = 0.0;
  double scale = 0.0;

  switch (map) {
    case MapKind::SquaredFrobenius:
      raw = 0.25 * (xm - ym).squaredNorm();
      scale = xm.squaredNorm() + ym.squaredNorm();
      break;

    case MapKind::NegVonNeumann: {
      const double xlx = trace_x_log_x(xm);
      const double yly = trace_x_log_x(ym);
      scale = std::abs(xlx) + std::abs(yly) + xm.trace() + ym.trace();
      if (side == Side::Forward) {
        raw = 0.5 * (xlx + yly) - trace_x_log_x(0.5 * (xm + ym));
      } else {
        const double te = trace_exp(0.5 * (sym_log(xm) + sym_log(ym)));
        const double half_trace = 0.5 * (xm.trace() + ym.trace());
        raw = variant == ClosedFormVariant::Consistent ? half_trace - te : 0.5 * (xlx + yly) - half_trace - te;
      }
      break;
    }

    case MapKind::Burg: {
      const double lx = log_det_chol(xm);
      const double ly = log_det_chol(ym);
      if (side == Side::Forward) {
        const double la = log_det_chol(0.5 * (xm + ym));
        raw = la - 0.5 * (lx + ly);
        scale = std::abs(la) + std::abs(lx) + std::abs(ly);
      } else {
        const Matrix avg_inv = 0.5 * (xm.llt().solve(Matrix::Identity(x.dim(), x.dim())) +
                                      ym.llt().solve(Matrix::Identity(y.dim(), y.dim())));
        const double lh = log_det_chol(0.5 * (avg_inv + avg_inv.transpose()));
        raw = variant == ClosedFormVariant::Consistent ? lh + 0.5 * (lx + ly) : lh - 0.5 * (lx + ly) + n;
        scale = std::abs(lh) + std::abs(lx) + std::abs(ly) + n;
      }
      break;
    }
  }

  const Direction dir = side == Side::Forward ? Direction::ForwardSym : Direction::ReverseSym;
  const MeanKind mean = side == Side::Forward ? MeanKind::of(MeanType::Arithmetic) : MeanKind::canonical_reverse(map);
  if (variant == ClosedFormVariant::PrimalAverage && side == Side::Reverse && map != MapKind::SquaredFrobenius) {
    // Not a divergence in general, so no clipping or sign check.
    return DivergenceValue{raw, map, dir, mean, {"primal-average variant: not guaranteed nonnegative"}};
  }
  return finalize(raw, scale, map, dir, mean, {&x, &y});
}

}  // namespace spdb
