#include "spd_bregman/spd_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spd_bregman/errors.hpp"

namespace spdb {

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

std::string dims_message(const char* context, int a, int b) {
  std::ostringstream os;
  os << context << ": dimensions " << a << " and " << b << " differ";
  return os.str();
}

}  // namespace

void require_same_dim(const SymMatrix& a, const SymMatrix& b, const char* context) {
  if (a.dim() != b.dim()) throw SpdError(ErrorCode::DimMismatch, dims_message(context, a.dim(), b.dim()));
}

// ---------------------------------------------------------------------------
// SymMatrix
// ---------------------------------------------------------------------------

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols();
    throw SpdError(ErrorCode::NotSquare, os.str());
  }
  if (m.rows() == 0) throw SpdError(ErrorCode::NotSquare, "matrix is empty");
  if (!m.allFinite()) throw SpdError(ErrorCode::NotFinite, "matrix has non-finite entries");
  m_ = symmetrized(m);
}

SymMatrix SymMatrix::zero(int n) { return SymMatrix(Matrix::Zero(n, n), Trusted{}); }
SymMatrix SymMatrix::identity(int n) { return SymMatrix(Matrix::Identity(n, n), Trusted{}); }
SymMatrix SymMatrix::diagonal(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal()), Trusted{}); }

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b, "sum");
  return SymMatrix(a.m_ + b.m_, SymMatrix::Trusted{});
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b, "difference");
  return SymMatrix(a.m_ - b.m_, SymMatrix::Trusted{});
}

SymMatrix SymMatrix::operator-() const { return SymMatrix(-m_, Trusted{}); }
SymMatrix SymMatrix::operator*(double s) const { return SymMatrix(m_ * s, Trusted{}); }
SymMatrix SymMatrix::operator/(double s) const { return SymMatrix(m_ / s, Trusted{}); }

// ---------------------------------------------------------------------------
// Eigendecomposition and validation
// ---------------------------------------------------------------------------

EigenPair eigen_decompose(const SymMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) throw SpdError(ErrorCode::EigFailure, "symmetric eigensolver did not converge");
  EigenPair eig{solver.eigenvalues(), solver.eigenvectors()};
#ifndef NDEBUG
  const Matrix& v = eig.eigenvectors;
  const double scale = std::max(1.0, a.norm());
  const double recon = (v * eig.eigenvalues.asDiagonal() * v.transpose() - a.matrix()).norm();
  const double ortho = (v.transpose() * v - Matrix::Identity(a.dim(), a.dim())).norm();
  if (recon > kEigTolerance * scale || ortho > kEigTolerance) {
    throw SpdError(ErrorCode::EigFailure, "eigendecomposition failed its reconstruction check");
  }
#endif
  return eig;
}

SpdMatrix validate_spd(const SymMatrix& m, std::optional<double> tol) {
  EigenPair eig = eigen_decompose(m);
  const double lo = eig.eigenvalues(0);
  const double hi = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double cutoff = tol ? *tol : kSpdRelativeTolerance * std::max(1.0, hi);
  if (!(lo > cutoff)) {
    std::ostringstream os;
    os.precision(17);
    os << "minimum eigenvalue " << lo << " is not above " << cutoff;
    throw SpdError(ErrorCode::NotPositiveDefinite, os.str());
  }
  return SpdMatrix(m, std::move(eig));
}

SpdMatrix validate_spd(const Matrix& m, std::optional<double> tol) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols();
    throw SpdError(ErrorCode::NotSquare, os.str());
  }
  if (m.rows() == 0) throw SpdError(ErrorCode::NotSquare, "matrix is empty");
  if (!m.allFinite()) throw SpdError(ErrorCode::NotFinite, "matrix has non-finite entries");
  const double norm = m.norm();
  const double asym = (m - m.transpose()).norm();
  if (norm > 0 && asym / norm > kAsymmetryTolerance) {
    std::ostringstream os;
    os << "relative asymmetry " << asym / norm << " exceeds " << kAsymmetryTolerance;
    throw SpdError(ErrorCode::AsymmetryTooLarge, os.str());
  }
  return validate_spd(SymMatrix(m), tol);
}

SpdMatrix SpdMatrix::identity(int n) { return validate_spd(SymMatrix::identity(n)); }

// ---------------------------------------------------------------------------
// Matrix functions
// ---------------------------------------------------------------------------

double MatrixFn::operator()(double x) const {
  switch (kind) {
    case Kind::Log: return std::log(x);
    case Kind::Exp: return std::exp(x);
    case Kind::Sqrt: return std::sqrt(x);
    case Kind::Power: return std::pow(x, exponent);
    case Kind::Inverse: return 1.0 / x;
    case Kind::NegateInverse: return -1.0 / x;
  }
  return x;
}

SymMatrix matrix_function(const SpdMatrix& a, MatrixFn f) {
  if (f.kind == MatrixFn::Kind::Power && !std::isfinite(f.exponent)) {
    throw SpdError(ErrorCode::InvalidArgument, "power exponent must be finite");
  }
  return apply_spectral(a.eigen(), f);
}

SymMatrix log_spd(const SpdMatrix& a) { return matrix_function(a, MatrixFn::log()); }
SpdMatrix sqrt_spd(const SpdMatrix& a) { return validate_spd(matrix_function(a, MatrixFn::sqrt())); }
SpdMatrix inverse_spd(const SpdMatrix& a) { return validate_spd(matrix_function(a, MatrixFn::inverse())); }
SpdMatrix power_spd(const SpdMatrix& a, double t) { return validate_spd(matrix_function(a, MatrixFn::power(t))); }

SpdMatrix exp_sym(const SymMatrix& y) {
  return validate_spd(apply_spectral(eigen_decompose(y), [](double x) { return std::exp(x); }));
}

// ---------------------------------------------------------------------------
// Daleckii-Krein
// ---------------------------------------------------------------------------

double divided_difference_log(double a, double b) {
  // log a - log b = 2 atanh((a - b) / (a + b)), which stays accurate as a -> b.
  const double d = a - b;
  if (d == 0.0) return 1.0 / a;
  return 2.0 * std::atanh(d / (a + b)) / d;
}

double divided_difference_exp(double a, double b) {
  const double d = a - b;
  if (d == 0.0) return std::exp(a);
  return std::exp(b) * std::expm1(d) / d;
}

Matrix divided_difference_matrix(const Vector& eigenvalues, DividedDifference dd) {
  const auto n = eigenvalues.size();
  Matrix gamma(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      gamma(i, j) = dd(eigenvalues(i), eigenvalues(j));
      gamma(j, i) = gamma(i, j);
    }
  }
  return gamma;
}

SymMatrix frechet_derivative(const EigenPair& eig, DividedDifference dd, const SymMatrix& direction) {
  const Matrix& v = eig.eigenvectors;
  if (v.rows() != direction.dim()) {
    throw SpdError(ErrorCode::DimMismatch, dims_message("frechet_derivative", static_cast<int>(v.rows()), direction.dim()));
  }
  const Matrix gamma = divided_difference_matrix(eig.eigenvalues, dd);
  const Matrix rotated = v.transpose() * direction.matrix() * v;
  return SymMatrix(v * gamma.cwiseProduct(rotated) * v.transpose());
}

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

double frobenius_inner(const SymMatrix& x, const SymMatrix& y) {
  require_same_dim(x, y, "frobenius_inner");
  return x.matrix().cwiseProduct(y.matrix()).sum();
}

double riemannian_metric(const SpdMatrix& a, const SymMatrix& x, const SymMatrix& y) {
  require_same_dim(a, x, "riemannian_metric");
  require_same_dim(a, y, "riemannian_metric");
  const Eigen::LLT<Matrix> chol(a.matrix());
  const Matrix ainv_x = chol.solve(x.matrix());
  const Matrix ainv_y = chol.solve(y.matrix());
  // trace(PQ) = sum(P .* Q^T)
  return ainv_x.cwiseProduct(ainv_y.transpose()).sum();
}

SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t) {
  require_same_dim(a, b, "geodesic");
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "geodesic parameter " << t << " outside [0, 1]";
    throw SpdError(ErrorCode::TOutOfRange, os.str());
  }
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const Matrix a_half = matrix_function(a, MatrixFn::sqrt()).matrix();
  const Matrix a_neg_half = matrix_function(a, MatrixFn::power(-0.5)).matrix();
  const SpdMatrix inner = validate_spd(SymMatrix(a_neg_half * b.matrix() * a_neg_half));
  const Matrix inner_t = matrix_function(inner, MatrixFn::power(t)).matrix();
  return validate_spd(SymMatrix(a_half * inner_t * a_half));
}

double min_eigenvalue(const SymMatrix& a) { return eigen_decompose(a).eigenvalues(0); }

double max_eigenvalue(const SymMatrix& a) {
  const Vector ev = eigen_decompose(a).eigenvalues;
  return ev(ev.size() - 1);
}

bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol) {
  require_same_dim(a, b, "loewner_leq");
  return min_eigenvalue(b - a) >= -tol;
}

double relative_distance(const SymMatrix& a, const SymMatrix& reference) {
  require_same_dim(a, reference, "relative_distance");
  const double diff = (a.matrix() - reference.matrix()).norm();
  const double ref = reference.norm();
  return ref > 0 ? diff / ref : diff;
}

SymMatrix congruence(const SymMatrix& a, const Matrix& p) {
  if (p.rows() != a.dim() || p.cols() != a.dim()) {
    throw SpdError(ErrorCode::DimMismatch, dims_message("congruence", a.dim(), static_cast<int>(p.rows())));
  }
  return SymMatrix(p.transpose() * a.matrix() * p);
}

}  // namespace spdb
