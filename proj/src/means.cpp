#include "spd_bregman/means.hpp"

#include <cmath>
#include <numbers>

#include "spd_bregman/errors.hpp"

namespace spdb {

std::string_view mean_tag(MeanType type) {
  switch (type) {
    case MeanType::Arithmetic: return "arithmetic";
    case MeanType::Geometric: return "geometric";
    case MeanType::Harmonic: return "harmonic";
    case MeanType::LogEuclidean: return "log-euclidean";
    case MeanType::Logarithmic: return "logarithmic";
    case MeanType::CanonicalForward: return "canonical-forward";
    case MeanType::CanonicalReverse: return "canonical-reverse";
  }
  return "unknown";
}

std::optional<MeanType> parse_mean_tag(std::string_view tag) {
  for (MeanType t : {MeanType::Arithmetic, MeanType::Geometric, MeanType::Harmonic, MeanType::LogEuclidean,
                     MeanType::Logarithmic, MeanType::CanonicalForward, MeanType::CanonicalReverse}) {
    if (mean_tag(t) == tag) return t;
  }
  return std::nullopt;
}

std::string describe(const MeanKind& kind) {
  std::string s(mean_tag(kind.type));
  if (kind.map) s += "(" + std::string(map_tag(*kind.map)) + ")";
  return s;
}

std::string_view to_string(InvarianceClass c) {
  switch (c) {
    case InvarianceClass::GLn: return "GLn";
    case InvarianceClass::On: return "On";
    case InvarianceClass::Neither: return "Neither";
  }
  return "unknown";
}

QuadratureRule gauss_legendre_unit(int n) {
  if (n <= 0) throw SpdError(ErrorCode::InvalidArgument, "quadrature needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Tricomi initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

SpdMatrix arithmetic_mean(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "arithmetic_mean");
  return validate_spd((a.sym() + b.sym()) * 0.5);
}

SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "geometric_mean");
  return geodesic(a, b, 0.5);
}

SpdMatrix harmonic_mean(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "harmonic_mean");
  const SymMatrix avg_inv = (matrix_function(a, MatrixFn::inverse()) + matrix_function(b, MatrixFn::inverse())) * 0.5;
  return inverse_spd(validate_spd(avg_inv));
}

SpdMatrix log_euclidean_mean(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "log_euclidean_mean");
  return exp_sym((log_spd(a) + log_spd(b)) * 0.5);
}

LogarithmicMeanResult logarithmic_mean_detailed(const SpdMatrix& a, const SpdMatrix& b, int quad_nodes,
                                                LogarithmicVariant variant) {
  require_same_dim(a, b, "logarithmic_mean");
  const QuadratureRule rule = gauss_legendre_unit(quad_nodes);
  const int n = a.dim();
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double t = rule.nodes[k];
    if (variant == LogarithmicVariant::LiteralIntegral) {
      sum += rule.weights[k] * matrix_function(a, MatrixFn::power(t)).matrix() *
             matrix_function(b, MatrixFn::power(1.0 - t)).matrix();
    } else {
      sum += rule.weights[k] * geodesic(b, a, t).matrix();
    }
  }
  const double norm = sum.norm();
  const double asym = norm > 0 ? (sum - sum.transpose()).norm() / norm : 0.0;
  return {validate_spd(SymMatrix(sum)), asym};
}

SpdMatrix logarithmic_mean(const SpdMatrix& a, const SpdMatrix& b, int quad_nodes, LogarithmicVariant variant) {
  return logarithmic_mean_detailed(a, b, quad_nodes, variant).mean;
}

SpdMatrix canonical_forward_mean(const SpdMatrix& a, const SpdMatrix& b) { return arithmetic_mean(a, b); }

SpdMatrix canonical_reverse_mean(const MirrorMap& map, const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "canonical_reverse_mean");
  const SymMatrix dual_mean = (map.grad(a) + map.grad(b)) * 0.5;
  require_dual_domain(map, dual_mean, "canonical_reverse_mean");
  return map.grad_conjugate(dual_mean);
}

SpdMatrix mean_dispatch(const MeanKind& kind, const SpdMatrix& a, const SpdMatrix& b, const MapRegistry& maps,
                        const MeanOptions& options) {
  switch (kind.type) {
    case MeanType::Arithmetic: return arithmetic_mean(a, b);
    case MeanType::Geometric: return geometric_mean(a, b);
    case MeanType::Harmonic: return harmonic_mean(a, b);
    case MeanType::LogEuclidean: return log_euclidean_mean(a, b);
    case MeanType::Logarithmic: return logarithmic_mean(a, b, options.quad_nodes, options.logarithmic_variant);
    case MeanType::CanonicalForward: return canonical_forward_mean(a, b);
    case MeanType::CanonicalReverse:
      if (!kind.map) throw SpdError(ErrorCode::InvalidArgument, "canonical-reverse mean requires a mirror map");
      return canonical_reverse_mean(maps.get(*kind.map), a, b);
  }
  throw SpdError(ErrorCode::InvalidArgument, "unknown mean kind");
}

}  // namespace spdb
