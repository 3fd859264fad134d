#include "spd_bregman/sampling.hpp"

#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>

namespace spdb {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5bd1e995u};
  engine_.seed(seq);
}

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

double Rng::normal() { return normal_(engine_); }

Matrix Rng::gaussian(int rows, int cols) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = normal();
  return g;
}

Matrix random_orthogonal(int n, Rng& rng) {
  const Eigen::HouseholderQR<Matrix> qr(rng.gaussian(n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

SpdMatrix random_spd_in_basis(const Matrix& basis, Rng& rng, SpectrumRange range) {
  const auto n = basis.rows();
  Vector lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) lambda(i) = rng.log_uniform(range.lo, range.hi);
  return validate_spd(SymMatrix(basis.transpose() * lambda.asDiagonal() * basis));
}

SpdMatrix random_spd(int n, Rng& rng, SpectrumRange range) {
  const Matrix q = random_orthogonal(n, rng);
  return random_spd_in_basis(q, rng, range);
}

SymMatrix random_symmetric(int n, Rng& rng, double norm) {
  const SymMatrix s(rng.gaussian(n, n));
  const double current = s.norm();
  return current > 0 ? s * (norm / current) : s;
}

Matrix random_invertible(int n, Rng& rng, double max_sv) {
  const Matrix u = random_orthogonal(n, rng);
  const Matrix v = random_orthogonal(n, rng);
  Vector s(n);
  for (int i = 0; i < n; ++i) s(i) = rng.log_uniform(1.0 / max_sv, max_sv);
  return u * s.asDiagonal() * v.transpose();
}

SpdMatrix random_dominating(const SpdMatrix& a, Rng& rng, double scale) {
  const int n = a.dim();
  const Matrix w = rng.gaussian(n, n);
  const Matrix inc = w * w.transpose() / static_cast<double>(n);
  return validate_spd(SymMatrix(a.matrix() + scale * a.max_eigenvalue() * inc));
}

std::string digest(const SymMatrix& m) {
  std::uint64_t h = 1469598103934665603ull;
  const Matrix& d = m.matrix();
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    unsigned char bytes[sizeof(double)];
    const double v = d.data()[k];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace spdb
