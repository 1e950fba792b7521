#include "kraus/random.hpp"

#include <cmath>

namespace kraus {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double Rng::uniform01() {
  // 53-bit mantissa draw in (0, 1]
  std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

Complex Rng::complex_gaussian() {
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  double re = gaussian();
  double im = gaussian();
  return Complex(re * inv_sqrt2, im * inv_sqrt2);
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  // rejection sampling for an unbiased draw
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

ComplexMatrix random_gaussian_matrix(Index rows, Index cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = rng.complex_gaussian();
  return m;
}

ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  ComplexMatrix g = random_gaussian_matrix(rows, rows, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // absorb the R diagonal phases so the factorization is unique
  for (Index j = 0; j < rows; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    if (a > 0.0)
      q.col(j) *= d / a;
  }
  return q.leftCols(cols);
}

ComplexMatrix random_unitary(Index dim, Rng& rng) {
  return random_isometry(dim, dim, rng);
}

ComplexVector random_unit_vector(Index dim, Rng& rng) {
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i)
    v(i) = rng.complex_gaussian();
  v.normalize();
  return v;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

} // namespace kraus
