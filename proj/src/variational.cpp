#include "spd_bregman/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "parallel.hpp"
#include "spd_bregman/errors.hpp"
#include "spd_bregman/sampling.hpp"

namespace spdb {

void OptimizerConfig::validate() const {
  if (max_iters <= 0) throw SpdError(ErrorCode::InvalidArgument, "max_iters must be positive");
  if (grad_tolerance && !(*grad_tolerance > 0)) throw SpdError(ErrorCode::InvalidArgument, "grad_tolerance must be positive");
  if (!(shrink > 0 && shrink < 1)) throw SpdError(ErrorCode::InvalidArgument, "shrink factor must lie in (0, 1)");
  if (!(initial_step > 0)) throw SpdError(ErrorCode::InvalidArgument, "initial step must be positive");
  if (!(armijo > 0 && armijo < 1)) throw SpdError(ErrorCode::InvalidArgument, "Armijo constant must lie in (0, 1)");
}

std::string_view to_string(CheckKind k) {
  switch (k) {
    case CheckKind::ForwardMinimizer: return "forward-minimizer";
    case CheckKind::ReverseMinimizer: return "reverse-minimizer";
    case CheckKind::ForwardGradient: return "forward-gradient";
    case CheckKind::ReverseGradient: return "reverse-gradient";
    case CheckKind::MeanAxioms: return "mean-axioms";
    case CheckKind::OperatorMonotone: return "operator-monotone";
    case CheckKind::ClosedFormConsistency: return "closed-form-consistency";
    case CheckKind::Duality: return "duality";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

namespace {

double raw_bregman(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y) {
  return map.psi(x) - map.psi(y) - frobenius_inner(map.grad(y), x.sym() - y.sym());
}

std::uint64_t stream_id(int n, int index) {
  return (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(index);
}

double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

/// Orthonormal basis of symmetric n x n matrices (Frobenius inner product).
std::vector<SymMatrix> symmetric_basis(int n) {
  std::vector<SymMatrix> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = e(j, i) = 1.0 / std::sqrt(2.0);
      }
      basis.emplace_back(e);
    }
  }
  return basis;
}

}  // namespace

double symmetrized_objective(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, const SpdMatrix& m,
                             Side side) {
  require_same_dim(x, y, "symmetrized_objective");
  require_same_dim(x, m, "symmetrized_objective");
  if (side == Side::Forward) return 0.5 * (raw_bregman(map, x, m) + raw_bregman(map, y, m));
  return 0.5 * (raw_bregman(map, m, x) + raw_bregman(map, m, y));
}

SymMatrix forward_objective_gradient(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, const SpdMatrix& m) {
  require_same_dim(x, y, "forward_objective_gradient");
  require_same_dim(x, m, "forward_objective_gradient");
  return map.hess_apply(m, m.sym() - (x.sym() + y.sym()) * 0.5);
}

SymMatrix reverse_objective_gradient(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, const SpdMatrix& m) {
  require_same_dim(x, y, "reverse_objective_gradient");
  require_same_dim(x, m, "reverse_objective_gradient");
  return map.grad(m) - (map.grad(x) + map.grad(y)) * 0.5;
}

SymMatrix objective_gradient(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, const SpdMatrix& m,
                             Side side) {
  return side == Side::Forward ? forward_objective_gradient(map, x, y, m) : reverse_objective_gradient(map, x, y, m);
}

SymMatrix finite_difference_gradient(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, const SpdMatrix& m,
                                     Side side, double rel_step) {
  const int n = m.dim();
  const double h = rel_step * m.min_eigenvalue();
  SymMatrix g = SymMatrix::zero(n);
  for (const SymMatrix& e : symmetric_basis(n)) {
    const SpdMatrix plus = validate_spd(m.sym() + e * h);
    const SpdMatrix minus = validate_spd(m.sym() - e * h);
    const double d =
        (symmetrized_objective(map, x, y, plus, side) - symmetrized_objective(map, x, y, minus, side)) / (2.0 * h);
    g = g + e * d;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Minimization
// ---------------------------------------------------------------------------

namespace {

struct Iterate {
  EigenPair log_eig;  // eigendecomposition of S
  SpdMatrix m;
  double objective;
};

std::optional<Iterate> make_iterate(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, Side side,
                                    const SymMatrix& s) {
  try {
    EigenPair eig = eigen_decompose(s);
    const Vector lambda = eig.eigenvalues.array().exp();
    if (!lambda.allFinite()) return std::nullopt;
    const SpdMatrix m =
        validate_spd(SymMatrix(eig.eigenvectors * lambda.asDiagonal() * eig.eigenvectors.transpose()));
    const double f = symmetrized_objective(map, x, y, m, side);
    if (!std::isfinite(f)) return std::nullopt;
    return Iterate{std::move(eig), m, f};
  } catch (const SpdError&) {
    return std::nullopt;
  }
}

}  // namespace

MinimizeResult minimize_symmetrized(const MirrorMap& map, const SpdMatrix& x, const SpdMatrix& y, Side side,
                                    const OptimizerConfig& cfg, const std::optional<SpdMatrix>& init) {
  cfg.validate();
  require_same_dim(x, y, "minimize_symmetrized");
  const int n = x.dim();
  const SpdMatrix start = init ? *init : geometric_mean(x, y);
  require_same_dim(x, start, "minimize_symmetrized");

  std::optional<Iterate> cur = make_iterate(map, x, y, side, log_spd(start));
  if (!cur) throw SpdError(ErrorCode::NumericalBreakdown, "objective is not finite at the initial point");

  const double tol = cfg.grad_tolerance.value_or(1e-9 * (1.0 + std::abs(cur->objective)));
  const double eps = std::numeric_limits<double>::epsilon();

  MinimizeResult result{cur->m, {}, false, 0, cur->objective, 0.0};
  for (int iter = 0;; ++iter) {
    const Matrix& v = cur->log_eig.eigenvectors;
    const Matrix gamma = divided_difference_matrix(cur->log_eig.eigenvalues, divided_difference_exp);
    const Matrix g_m = v.transpose() * objective_gradient(map, x, y, cur->m, side).matrix() * v;
    // Gradient in S, expressed in the eigenbasis of S (Daleckii-Krein chain rule).
    const Matrix g_s = gamma.cwiseProduct(g_m);
    const double gnorm = g_s.norm();

    result.argmin = cur->m;
    result.objective = cur->objective;
    result.grad_norm = gnorm;
    result.iterations = iter;

    if (gnorm <= tol) {
      result.converged = true;
      result.trace.push_back({iter, cur->objective, gnorm, 0.0});
      break;
    }
    if (iter >= cfg.max_iters) break;

    Matrix dir = -g_s;
    if (cfg.precondition) {
      // Diagonal of the Hessian of psi in the eigenbasis, chained through exp.
      Matrix curvature(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          Matrix e = Matrix::Zero(n, n);
          e(i, j) = e(j, i) = 1.0;
          const SymMatrix probe(v * e * v.transpose());
          const Matrix h = v.transpose() * map.hess_apply(cur->m, probe).matrix() * v;
          curvature(i, j) = curvature(j, i) = h(i, j);
        }
      }
      const Matrix scale = gamma.cwiseProduct(gamma).cwiseProduct(curvature);
      dir = dir.cwiseQuotient(scale);
    }
    const double slope = g_s.cwiseProduct(dir).sum();

    double step = cfg.initial_step;
    std::optional<Iterate> next;
    const double slack = 10.0 * eps * std::max(1.0, std::abs(cur->objective));
    const Matrix s = v * cur->log_eig.eigenvalues.asDiagonal() * v.transpose();
    for (int k = 0; k < 80; ++k, step *= cfg.shrink) {
      auto trial = make_iterate(map, x, y, side, SymMatrix(s + step * v * dir * v.transpose()));
      if (trial && trial->objective <= cur->objective + cfg.armijo * step * slope + slack) {
        next = std::move(trial);
        break;
      }
    }
    result.trace.push_back({iter, cur->objective, gnorm, next ? step : 0.0});
    if (!next) break;  // line search stalled at rounding level
    cur = std::move(next);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

int verification_threads() {
  if (const char* env = std::getenv("SPD_BREGMAN_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct SampleOutcome {
  double residual = 0.0;
  bool failed = false;
  std::string digest;
  std::string detail;
  std::string finding;
};

VerificationReport reduce(CheckKind check, std::string subject, double tolerance,
                          const std::vector<SampleOutcome>& outcomes) {
  VerificationReport report;
  report.check = check;
  report.subject = std::move(subject);
  report.samples = static_cast<int>(outcomes.size());
  report.tolerance = tolerance;
  for (const SampleOutcome& o : outcomes) {
    report.max_residual = std::max(report.max_residual, o.residual);
    if (o.failed) report.failures.push_back({o.digest, o.residual, o.detail});
    if (!o.finding.empty()) report.findings.push_back(o.finding);
  }
  report.passed = report.failures.empty() && report.max_residual <= tolerance;
  return report;
}

std::string pair_digest(const SpdMatrix& a, const SpdMatrix& b) { return digest(a) + ":" + digest(b); }

template <typename Sample>
std::vector<SampleOutcome> run_samples(int num_samples, Sample&& sample) {
  std::vector<SampleOutcome> outcomes(num_samples);
  detail::parallel_for(num_samples, verification_threads(), [&](int i) {
    try {
      outcomes[i] = sample(i);
    } catch (const SpdError& e) {
      outcomes[i].failed = true;
      outcomes[i].residual = std::numeric_limits<double>::infinity();
      outcomes[i].detail = e.what();
    }
  });
  return outcomes;
}

}  // namespace

VerificationReport verify_theorem(const MirrorMap& map, Side side, int n, int num_samples, const OptimizerConfig& cfg,
                                  std::uint64_t seed, double tolerance) {
  if (side == Side::Reverse && !(map.is_grad_operator_monotone() && map.is_spectral())) {
    throw SpdError(ErrorCode::HypothesisNotDeclared,
                   std::string(map.name()) + " map does not declare an operator-monotone gradient and spectral psi");
  }
  cfg.validate();
  auto outcomes = run_samples(num_samples, [&](int i) {
    Rng rng(seed, stream_id(n, i));
    const SpdMatrix x = random_spd(n, rng);
    const SpdMatrix y = random_spd(n, rng);
    const MinimizeResult opt = minimize_symmetrized(map, x, y, side, cfg);
    const SpdMatrix expected = side == Side::Forward ? arithmetic_mean(x, y) : canonical_reverse_mean(map, x, y);
    SampleOutcome o;
    o.residual = relative_distance(opt.argmin, expected);
    o.digest = pair_digest(x, y);
    o.failed = o.residual > tolerance;
    if (o.failed) o.detail = "argmin differs from the closed-form canonical mean";
    if (!opt.converged) {
      o.finding = "sample " + std::to_string(i) + ": optimizer stopped after " + std::to_string(opt.iterations) +
                  " iterations with gradient norm " + format_double(opt.grad_norm);
    }
    return o;
  });
  const CheckKind kind = side == Side::Forward ? CheckKind::ForwardMinimizer : CheckKind::ReverseMinimizer;
  return reduce(kind, std::string(map.name()) + " n=" + std::to_string(n), tolerance, outcomes);
}

VerificationReport verify_gradient(const MirrorMap& map, Side side, int n, int num_samples, std::uint64_t seed,
                                   double tolerance) {
  auto outcomes = run_samples(num_samples, [&](int i) {
    Rng rng(seed, stream_id(n, i));
    const SpdMatrix x = random_spd(n, rng);
    const SpdMatrix y = random_spd(n, rng);
    const SpdMatrix m = random_spd(n, rng);
    const SymMatrix analytic = objective_gradient(map, x, y, m, side);
    const SymMatrix numeric = finite_difference_gradient(map, x, y, m, side);
    SampleOutcome o;
    o.residual = relative_distance(numeric, analytic);
    o.digest = pair_digest(x, y) + ":" + digest(m);
    o.failed = o.residual > tolerance;
    if (o.failed) o.detail = "analytic gradient disagrees with finite differences";
    return o;
  });
  const CheckKind kind = side == Side::Forward ? CheckKind::ForwardGradient : CheckKind::ReverseGradient;
  return reduce(kind, std::string(map.name()) + " n=" + std::to_string(n), tolerance, outcomes);
}

VerificationReport verify_closed_forms(const MirrorMap& map, int n, int num_samples, std::uint64_t seed,
                                       double identity_tolerance, double cell_tolerance) {
  std::vector<double> primal_gap(num_samples, 0.0);
  auto outcomes = run_samples(num_samples, [&](int i) {
    Rng rng(seed, stream_id(n, i));
    const SpdMatrix x = random_spd(n, rng);
    const SpdMatrix y = random_spd(n, rng);
    const double fwd = forward_symmetrized(map, x, y, arithmetic_mean(x, y)).value;
    const double rev = reverse_symmetrized(map, x, y, canonical_reverse_mean(map, x, y)).value;

    const double js_gap = relative_gap(jensen_shannon_closed(map, x, y).value, fwd);
    const double conj_gap = relative_gap(canonical_reverse_closed(map, x, y).value, rev);
    const double fwd_cell_gap = relative_gap(closed_form(map.kind(), Side::Forward, x, y).value, fwd);
    const double rev_cell_gap = relative_gap(closed_form(map.kind(), Side::Reverse, x, y).value, rev);
    primal_gap[i] = relative_gap(
        closed_form(map.kind(), Side::Reverse, x, y, ClosedFormVariant::PrimalAverage).value, rev);

    SampleOutcome o;
    o.digest = pair_digest(x, y);
    // Normalize both tolerances onto the identity scale so max_residual is comparable.
    o.residual = std::max({js_gap, conj_gap, (identity_tolerance / cell_tolerance) * fwd_cell_gap,
                           (identity_tolerance / cell_tolerance) * rev_cell_gap});
    std::ostringstream detail;
    if (js_gap > identity_tolerance) detail << "jensen-shannon gap " << js_gap << "; ";
    if (conj_gap > identity_tolerance) detail << "conjugate-form gap " << conj_gap << "; ";
    if (fwd_cell_gap > cell_tolerance) detail << "forward cell gap " << fwd_cell_gap << "; ";
    if (rev_cell_gap > cell_tolerance) detail << "reverse cell gap " << rev_cell_gap << "; ";
    o.detail = detail.str();
    o.failed = !o.detail.empty();
    return o;
  });
  VerificationReport report = reduce(CheckKind::ClosedFormConsistency, std::string(map.name()) + " n=" +
                                         std::to_string(n), identity_tolerance, outcomes);
  const double worst = primal_gap.empty() ? 0.0 : *std::max_element(primal_gap.begin(), primal_gap.end());
  if (worst > cell_tolerance) {
    report.findings.push_back("reverse primal-average cell (psi(X)+psi(Y))/2 - psi*(dual mean) differs from the "
                              "reverse symmetrization at the canonical mean: max relative gap " +
                              format_double(worst) + "; the conjugate form is used");
  } else {
    report.findings.push_back("reverse primal-average cell agrees with the reverse symmetrization (max relative gap " +
                              format_double(worst) + ")");
  }
  return report;
}

VerificationReport verify_duality(const MirrorMap& map, int n, int num_samples, std::uint64_t seed, double tolerance) {
  auto outcomes = run_samples(num_samples, [&](int i) {
    Rng rng(seed, stream_id(n, i));
    const SpdMatrix x = random_spd(n, rng);
    SymMatrix y = SymMatrix::zero(n);
    switch (map.kind()) {
      case MapKind::SquaredFrobenius: y = random_spd(n, rng).sym(); break;
      case MapKind::NegVonNeumann: y = random_symmetric(n, rng, rng.uniform(0.1, 5.0)); break;
      case MapKind::Burg: y = -random_spd(n, rng).sym(); break;
    }
    const double primal_trip = check_duality(map, x);
    const double dual_trip = relative_distance(map.grad(map.grad_conjugate(y)), y);
    const SymMatrix g = map.grad(x);
    const double psi = map.psi(x), conj = map.conjugate(g), pairing = frobenius_inner(g, x.sym());
    const double fy = std::abs(psi + conj - pairing) / std::max({1.0, std::abs(psi) + std::abs(conj), std::abs(pairing)});
    SampleOutcome o;
    o.residual = std::max({primal_trip, dual_trip, fy});
    o.digest = digest(x) + ":" + digest(y);
    o.failed = o.residual > tolerance;
    if (o.failed) o.detail = "Fenchel round trip or Fenchel-Young equality violated";
    return o;
  });
  return reduce(CheckKind::Duality, std::string(map.name()) + " n=" + std::to_string(n), tolerance, outcomes);
}

VerificationReport audit_operator_monotone(const MirrorMap& map, int n, int num_samples, std::uint64_t seed,
                                           double tolerance) {
  auto outcomes = run_samples(num_samples, [&](int i) {
    Rng rng(seed, stream_id(n, i));
    const SpdMatrix a = random_spd(n, rng);
    const SpdMatrix b = random_dominating(a, rng, rng.log_uniform(1e-3, 1.0));
    SampleOutcome o;
    o.residual = std::max(0.0, -min_eigenvalue(map.grad(b) - map.grad(a)));
    o.digest = pair_digest(a, b);
    o.failed = !loewner_leq(map.grad(a), map.grad(b), tolerance);
    if (o.failed) o.detail = "grad(A) is not below grad(B) although A <= B";
    return o;
  });
  return reduce(CheckKind::OperatorMonotone, std::string(map.name()) + " n=" + std::to_string(n), tolerance, outcomes);
}

// ---------------------------------------------------------------------------
// Mean axioms
// ---------------------------------------------------------------------------

const AxiomResult& AxiomReport::axiom(std::string_view name) const {
  for (const AxiomResult& a : axioms)
    if (a.axiom == name) return a;
  throw SpdError(ErrorCode::InvalidArgument, "no axiom named " + std::string(name));
}

double congruence_residual(const MeanKind& kind, const SpdMatrix& a, const SpdMatrix& b, const Matrix& p,
                           const MapRegistry& maps, const MeanOptions& options) {
  const SpdMatrix pa = validate_spd(congruence(a, p));
  const SpdMatrix pb = validate_spd(congruence(b, p));
  const SymMatrix lhs = mean_dispatch(kind, pa, pb, maps, options);
  const SymMatrix rhs = congruence(mean_dispatch(kind, a, b, maps, options), p);
  return relative_distance(lhs, rhs);
}

namespace {

enum AxiomIndex { kPositivity, kSymmetry, kBetweenness, kMonotonicity, kGlInvariance, kOnInvariance, kContinuity, kAxiomCount };

constexpr const char* kAxiomNames[kAxiomCount] = {"positivity",   "symmetry",          "betweenness", "monotonicity",
                                                  "gl-invariance", "orthogonal-invariance", "continuity"};

constexpr double kSymmetryTolerance = 1e-10;
constexpr double kContinuityStep = 1e-6;
constexpr double kContinuityRatio = 10.0;

struct AxiomSample {
  double residual[kAxiomCount] = {};
  bool failed[kAxiomCount] = {};
  std::string note[kAxiomCount];
  std::string digest;
  Matrix gl_p;
  std::optional<SpdMatrix> gl_a, gl_b;
};

}  // namespace

AxiomReport audit_mean_axioms(const MeanKind& kind, int n, int num_samples, std::uint64_t seed,
                              const MapRegistry& maps, const MeanOptions& options) {
  const double tolerances[kAxiomCount] = {0.0,
                                          kSymmetryTolerance,
                                          kLoewnerSamplingTolerance,
                                          kLoewnerSamplingTolerance,
                                          kInvarianceTolerance,
                                          kInvarianceTolerance,
                                          kContinuityRatio};
  auto mean = [&](const SpdMatrix& a, const SpdMatrix& b) { return mean_dispatch(kind, a, b, maps, options); };

  std::vector<AxiomSample> samples(num_samples);
  detail::parallel_for(num_samples, verification_threads(), [&](int i) {
    AxiomSample& s = samples[i];
    Rng rng(seed, stream_id(n, i));
    const SpdMatrix a = random_spd(n, rng);
    const SpdMatrix b = random_spd(n, rng);
    s.digest = pair_digest(a, b);

    // Each axiom is evaluated independently; an exception fails only that axiom.
    auto guarded = [&](AxiomIndex idx, auto&& check) {
      try {
        s.residual[idx] = check();
        s.failed[idx] = s.residual[idx] > tolerances[idx];
      } catch (const SpdError& e) {
        s.residual[idx] = std::numeric_limits<double>::infinity();
        s.failed[idx] = true;
        s.note[idx] = e.what();
      }
    };

    std::optional<SpdMatrix> m_ab;
    guarded(kPositivity, [&] {
      m_ab = mean(a, b);
      return m_ab->min_eigenvalue() > 0 ? 0.0 : 1.0;
    });
    guarded(kSymmetry, [&] { return relative_distance(mean(b, a), m_ab ? *m_ab : mean(a, b)); });
    guarded(kBetweenness, [&] {
      const SpdMatrix upper = random_dominating(a, rng, rng.log_uniform(1e-2, 1.0));
      const SpdMatrix m = mean(a, upper);
      return std::max({0.0, -min_eigenvalue(m - a), -min_eigenvalue(upper - m)});
    });
    guarded(kMonotonicity, [&] {
      const SpdMatrix a_up = random_dominating(a, rng, rng.log_uniform(1e-2, 1.0));
      return std::max(0.0, -min_eigenvalue(mean(a_up, b) - (m_ab ? *m_ab : mean(a, b))));
    });
    guarded(kGlInvariance, [&] {
      s.gl_p = random_invertible(n, rng);
      s.gl_a = a;
      s.gl_b = b;
      return congruence_residual(kind, a, b, s.gl_p, maps, options);
    });
    guarded(kOnInvariance, [&] { return congruence_residual(kind, a, b, random_orthogonal(n, rng), maps, options); });
    guarded(kContinuity, [&] {
      // Perturb each input by A^{1/2} (I + delta E) A^{1/2}, ||E||_F = 1, and
      // measure the output change in the same relative sense.
      auto perturb = [&](const SpdMatrix& x) {
        const Matrix half = matrix_function(x, MatrixFn::sqrt()).matrix();
        const Matrix e = random_symmetric(n, rng, kContinuityStep).matrix();
        return validate_spd(SymMatrix(half * (Matrix::Identity(n, n) + e) * half));
      };
      const SpdMatrix base = m_ab ? *m_ab : mean(a, b);
      const Matrix inv_half = matrix_function(base, MatrixFn::power(-0.5)).matrix();
      const Matrix change = inv_half * (mean(perturb(a), perturb(b)).matrix() - base.matrix()) * inv_half;
      return change.norm() / kContinuityStep;
    });
  });

  AxiomReport report{kind, n, num_samples, seed, {}, InvarianceClass::Neither, 0.0, 0.0, std::nullopt};
  for (int k = 0; k < kAxiomCount; ++k) {
    AxiomResult r{kAxiomNames[k], true, 0.0, tolerances[k], num_samples, std::nullopt};
    for (const AxiomSample& s : samples) {
      r.max_residual = std::max(r.max_residual, s.residual[k]);
      if (s.failed[k]) {
        r.passed = false;
        if (!r.witness) r.witness = s.digest + (s.note[k].empty() ? "" : " (" + s.note[k] + ")");
      }
    }
    report.axioms.push_back(std::move(r));
  }

  report.gl_residual = report.axioms[kGlInvariance].max_residual;
  report.on_residual = report.axioms[kOnInvariance].max_residual;
  if (report.gl_residual <= kInvarianceTolerance) {
    report.invariance = InvarianceClass::GLn;
  } else if (report.on_residual <= kInvarianceTolerance) {
    report.invariance = InvarianceClass::On;
  }

  // Keep the worst GL sample as the witness for a failed GL check.
  const AxiomSample* worst = nullptr;
  for (const AxiomSample& s : samples) {
    if (s.gl_a && (!worst || s.residual[kGlInvariance] > worst->residual[kGlInvariance])) worst = &s;
  }
  if (worst && report.gl_residual > kInvarianceTolerance) {
    report.gl_witness = CongruenceWitness{worst->gl_p, *worst->gl_a, *worst->gl_b, worst->residual[kGlInvariance]};
  }
  return report;
}

}  // namespace spdb
