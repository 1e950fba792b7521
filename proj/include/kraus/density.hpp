// Density matrices, pure states, spectral analysis and state metrics.
#ifndef KRAUS_DENSITY_HPP
#define KRAUS_DENSITY_HPP

#include <cstdint>
#include <vector>

#include "kraus/errors.hpp"
#include "kraus/types.hpp"

namespace kraus {

// Hermitian, positive semidefinite, unit-trace matrix. Construction validates
// all three invariants; the stored matrix is the exactly symmetrized part
// (M + M^dag)/2 of the input. Immutable after construction.
class DensityMatrix {
public:
  DensityMatrix(const ComplexMatrix& mat, const Tolerances& tol = {});

  Index dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }

private:
  ComplexMatrix mat_;
};

// Unit-norm state vector.
class PureState {
public:
  PureState(const ComplexVector& vec, const Tolerances& tol = {});

  Index dim() const { return vec_.size(); }
  const ComplexVector& vector() const { return vec_; }

  // rank-1 projector |psi><psi|
  ComplexMatrix projector() const { return vec_ * vec_.adjoint(); }

  // computational basis vector |k>
  static PureState basis_state(Index dim, Index k);

private:
  ComplexVector vec_;
};

// Eigenvalues sorted descending (clamped to [0,1], renormalized to sum 1) with
// matching orthonormal eigenvectors as columns. Each eigenvector is phase
// canonicalized: first component of magnitude >= 1e-9 made real positive.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  PureState eigenstate(Index i) const { return PureState(eigenvectors.col(i)); }
  ComplexMatrix reconstruct() const;
};

// Validates the three density-matrix invariants and wraps the input.
// Throws NotSquare / NotHermitian / NotPositive / TraceNotOne.
DensityMatrix validate_density(const ComplexMatrix& mat, const Tolerances& tol = {});

// Descending-order spectral decomposition; throws EigenFailure if the solver
// does not converge.
Spectrum spectral_decompose(const DensityMatrix& rho, const Tolerances& tol = {});

struct StateMetrics {
  double trace_distance; // (1/2) sum |eig(rho1 - rho2)|
  double purity1;        // Tr rho^2
  double purity2;
  double vn_entropy1;    // -sum p ln p
  double vn_entropy2;
};

StateMetrics state_metrics(const DensityMatrix& rho1, const DensityMatrix& rho2,
                           const Tolerances& tol = {});

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

// True iff the sorted eigenvalue lists agree elementwise within tol.
bool kinematically_equivalent(const DensityMatrix& rho1, const DensityMatrix& rho2,
                              double tol);

// exp(-beta H0) / Tr exp(-beta H0), computed from the eigendecomposition of H0.
DensityMatrix thermal_state(const ComplexMatrix& h0, double beta,
                            const Tolerances& tol = {});

// rho = G G^dag / Tr(G G^dag) with G an dim x rank matrix of seeded complex
// Gaussians; numerical rank of the result is `rank`.
DensityMatrix random_density(Index dim, Index rank, std::uint64_t seed,
                             const Tolerances& tol = {});

} // namespace kraus

#endif
