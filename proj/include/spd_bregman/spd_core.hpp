#pragma once

// Value types for symmetric and symmetric positive definite matrices, the
// eigendecomposition-backed matrix functions built on them, and the basic
// geometry of the SPD cone (Frobenius pairing, affine-invariant metric,
// geodesics, Loewner order).

#include <Eigen/Dense>

#include <optional>

namespace spdb {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative cutoff for cone membership, scaled by max(1, largest |eigenvalue|).
inline constexpr double kSpdRelativeTolerance = 1e-10;
/// Largest accepted ||M - M^T||_F / ||M||_F before an input is rejected.
inline constexpr double kAsymmetryTolerance = 1e-8;
/// Reconstruction tolerance for eigendecompositions (checked in debug builds).
inline constexpr double kEigTolerance = 1e-9;

class SymMatrix {
 public:
  SymMatrix() = default;

  /// Symmetrizes by (m + m^T) / 2. Throws NotSquare / NotFinite.
  explicit SymMatrix(const Matrix& m);

  static SymMatrix zero(int n);
  static SymMatrix identity(int n);
  static SymMatrix diagonal(const Vector& d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.trace(); }
  double norm() const { return m_.norm(); }

  SymMatrix operator-() const;
  SymMatrix operator*(double s) const;
  SymMatrix operator/(double s) const;

 private:
  struct Trusted {};
  SymMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);

  Matrix m_;
};

inline SymMatrix operator*(double s, const SymMatrix& a) { return a * s; }

// Free functions so that SpdMatrix operands convert implicitly. Throw DimMismatch.
SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);

/// Symmetric eigendecomposition with ascending eigenvalues and orthonormal
/// eigenvectors stored as columns.
struct EigenPair {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Throws EigFailure if the solver does not converge.
EigenPair eigen_decompose(const SymMatrix& a);

/// A validated point of the open SPD cone. Carries its eigendecomposition so
/// that matrix functions do not refactor the same matrix repeatedly.
class SpdMatrix {
 public:
  const SymMatrix& sym() const { return base_; }
  operator const SymMatrix&() const { return base_; }  // NOLINT(google-explicit-constructor)

  int dim() const { return base_.dim(); }
  const Matrix& matrix() const { return base_.matrix(); }
  double operator()(int i, int j) const { return base_(i, j); }

  const EigenPair& eigen() const { return eig_; }
  double min_eigenvalue() const { return eig_.eigenvalues(0); }
  double max_eigenvalue() const { return eig_.eigenvalues(eig_.eigenvalues.size() - 1); }
  double condition_number() const { return max_eigenvalue() / min_eigenvalue(); }
  double log_det() const { return eig_.eigenvalues.array().log().sum(); }

  static SpdMatrix identity(int n);

 private:
  friend SpdMatrix validate_spd(const SymMatrix& m, std::optional<double> tol);
  SpdMatrix(SymMatrix base, EigenPair eig) : base_(std::move(base)), eig_(std::move(eig)) {}

  SymMatrix base_;
  EigenPair eig_;
};

/// Validates a raw square matrix as SPD. `tol` overrides the default relative
/// cone cutoff. Throws NotSquare, NotFinite, AsymmetryTooLarge or
/// NotPositiveDefinite (the message reports the offending eigenvalue).
SpdMatrix validate_spd(const Matrix& m, std::optional<double> tol = std::nullopt);

/// Same as above for an already symmetric matrix (no asymmetry check).
SpdMatrix validate_spd(const SymMatrix& m, std::optional<double> tol = std::nullopt);

// ---------------------------------------------------------------------------
// Matrix functions
// ---------------------------------------------------------------------------

struct MatrixFn {
  enum class Kind { Log, Exp, Sqrt, Power, Inverse, NegateInverse };

  Kind kind;
  double exponent = 1.0;

  static MatrixFn log() { return {Kind::Log}; }
  static MatrixFn exp() { return {Kind::Exp}; }
  static MatrixFn sqrt() { return {Kind::Sqrt}; }
  static MatrixFn power(double t) { return {Kind::Power, t}; }
  static MatrixFn inverse() { return {Kind::Inverse}; }
  static MatrixFn negate_inverse() { return {Kind::NegateInverse}; }

  double operator()(double x) const;
};

/// V f(diag(lambda)) V^T, re-symmetrized.
SymMatrix matrix_function(const SpdMatrix& a, MatrixFn f);

/// Applies a scalar function to the spectrum of an arbitrary symmetric matrix.
template <typename F>
SymMatrix apply_spectral(const EigenPair& eig, F&& f) {
  Vector mapped = eig.eigenvalues.unaryExpr(std::forward<F>(f));
  return SymMatrix(eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.transpose());
}

SymMatrix log_spd(const SpdMatrix& a);
SpdMatrix sqrt_spd(const SpdMatrix& a);
SpdMatrix inverse_spd(const SpdMatrix& a);
SpdMatrix power_spd(const SpdMatrix& a, double t);
/// Matrix exponential of a symmetric matrix; always lands in the cone.
SpdMatrix exp_sym(const SymMatrix& y);

// ---------------------------------------------------------------------------
// Frechet derivatives of spectral functions (Daleckii-Krein)
// ---------------------------------------------------------------------------

using DividedDifference = double (*)(double, double);

/// f[a, b] for f = log, accurate when a and b are close (limit 1/a).
double divided_difference_log(double a, double b);
/// f[a, b] for f = exp, accurate when a and b are close (limit e^a).
double divided_difference_exp(double a, double b);

/// Gamma_ij = f[lambda_i, lambda_j].
Matrix divided_difference_matrix(const Vector& eigenvalues, DividedDifference dd);

/// Directional derivative of X -> f(X) at the matrix with decomposition `eig`
/// along `direction`: V (Gamma o (V^T E V)) V^T. The map is self-adjoint in
/// the Frobenius inner product.
SymMatrix frechet_derivative(const EigenPair& eig, DividedDifference dd, const SymMatrix& direction);

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// trace(x y), computed as the elementwise product sum.
double frobenius_inner(const SymMatrix& x, const SymMatrix& y);

/// trace(A^{-1} X A^{-1} Y).
double riemannian_metric(const SpdMatrix& a, const SymMatrix& x, const SymMatrix& y);

/// A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}. Endpoints return the inputs
/// exactly. Throws DimMismatch / TOutOfRange.
SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t);

double min_eigenvalue(const SymMatrix& a);
double max_eigenvalue(const SymMatrix& a);

/// a <= b in the Loewner order: min eigenvalue of (b - a) >= -tol.
bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol);

/// ||a - reference||_F / ||reference||_F (absolute when the reference is 0).
double relative_distance(const SymMatrix& a, const SymMatrix& reference);

/// P^T A P for an arbitrary square P.
SymMatrix congruence(const SymMatrix& a, const Matrix& p);

void require_same_dim(const SymMatrix& a, const SymMatrix& b, const char* context);

}  // namespace spdb
