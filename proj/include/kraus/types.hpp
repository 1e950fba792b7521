// Shared scalar/matrix typedefs and tolerance configuration.
#ifndef KRAUS_TYPES_HPP
#define KRAUS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace kraus {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Numerical tolerances used by validation and equality checks. Every check in
// the library reads from one of these knobs; callers may pass a modified copy.
struct Tolerances {
  double herm = 1e-9;  // Hermiticity residual, max-norm
  double trace = 1e-9; // trace / vector-norm residual
  double psd = 1e-9;   // allowed eigenvalue negativity
  double eq = 1e-10;   // equality residuals (states, channels)
  double tp = 1e-9;    // trace preservation / isometry residual
  double rank = 1e-10; // spectral support threshold
};

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

// max-norm distance between two equally sized matrices
inline double max_dist(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a - b);
}

inline ComplexMatrix identity(Index n) {
  return ComplexMatrix::Identity(n, n);
}

// Kronecker product with row-major composite index (i*rowsB + k, j*colsB + l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace kraus

#endif
