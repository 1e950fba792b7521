#include "kraus/density.hpp"

#include <cmath>
#include <sstream>

#include "kraus/random.hpp"

namespace kraus {

namespace {

// Smallest magnitude treated as a nonzero component when fixing eigenvector
// phases; unit vectors always carry a component well above this.
constexpr double kPhaseFloor = 1e-9;

void canonicalize_phase(Eigen::Ref<ComplexVector> v) {
  for (Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v(i));
    if (a >= kPhaseFloor) {
      v *= std::conj(v(i)) / a;
      return;
    }
  }
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_eigs(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver did not converge");
  return solver;
}

// descending eigenvalues of a Hermitian matrix, no clamping
RealVector raw_spectrum(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver did not converge");
  return solver.eigenvalues().reverse();
}

} // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& mat, const Tolerances& tol) {
  if (mat.rows() != mat.cols()) {
    std::ostringstream os;
    os << "expected a square matrix, got " << mat.rows() << "x" << mat.cols();
    throw Error(ErrorCode::NotSquare, os.str());
  }
  if (!all_finite(mat))
    throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");

  double herm_residual = max_dist(mat, mat.adjoint());
  if (herm_residual > tol.herm) {
    std::ostringstream os;
    os << "Hermiticity residual " << herm_residual << " exceeds " << tol.herm;
    throw Error(ErrorCode::NotHermitian, os.str(), herm_residual);
  }

  ComplexMatrix sym = (mat + mat.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver did not converge");
  double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol.psd) {
    std::ostringstream os;
    os << "minimum eigenvalue " << min_eig << " below -" << tol.psd;
    throw Error(ErrorCode::NotPositive, os.str(), min_eig);
  }

  double trace_residual = std::abs(sym.trace() - Complex(1.0, 0.0));
  if (trace_residual > tol.trace) {
    std::ostringstream os;
    os << "trace deviates from 1 by " << trace_residual;
    throw Error(ErrorCode::TraceNotOne, os.str(), trace_residual);
  }

  mat_ = std::move(sym);
}

PureState::PureState(const ComplexVector& vec, const Tolerances& tol) {
  if (!vec.allFinite())
    throw Error(ErrorCode::InvalidArgument, "state vector has non-finite entries");
  double norm_residual = std::abs(vec.norm() - 1.0);
  if (norm_residual > tol.trace) {
    std::ostringstream os;
    os << "vector norm deviates from 1 by " << norm_residual;
    throw Error(ErrorCode::TraceNotOne, os.str(), norm_residual);
  }
  vec_ = vec;
}

PureState PureState::basis_state(Index dim, Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return PureState(v);
}

ComplexMatrix Spectrum::reconstruct() const {
  ComplexMatrix out = ComplexMatrix::Zero(eigenvectors.rows(), eigenvectors.rows());
  for (Index i = 0; i < eigenvalues.size(); ++i)
    out += eigenvalues(i) * eigenvectors.col(i) * eigenvectors.col(i).adjoint();
  return out;
}

DensityMatrix validate_density(const ComplexMatrix& mat, const Tolerances& tol) {
  return DensityMatrix(mat, tol);
}

Spectrum spectral_decompose(const DensityMatrix& rho, const Tolerances& tol) {
  auto solver = hermitian_eigs(rho.matrix());

  Index n = rho.dim();
  Spectrum spec;
  spec.eigenvalues = solver.eigenvalues().reverse();
  spec.eigenvectors = solver.eigenvectors().rowwise().reverse();

  // clamp eigenvalue roundoff and renormalize to an exact probability vector
  for (Index i = 0; i < n; ++i) {
    if (spec.eigenvalues(i) < 0.0) {
      if (spec.eigenvalues(i) < -tol.psd)
        throw Error(ErrorCode::NotPositive, "eigenvalue below tolerance",
                    spec.eigenvalues(i));
      spec.eigenvalues(i) = 0.0;
    }
  }
  spec.eigenvalues /= spec.eigenvalues.sum();

  for (Index i = 0; i < n; ++i)
    canonicalize_phase(spec.eigenvectors.col(i));
  return spec;
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  RealVector eigs = raw_spectrum(rho1.matrix() - rho2.matrix());
  return 0.5 * eigs.cwiseAbs().sum();
}

StateMetrics state_metrics(const DensityMatrix& rho1, const DensityMatrix& rho2,
                           const Tolerances& tol) {
  if (rho1.dim() != rho2.dim())
    throw Error(ErrorCode::DimMismatch, "states have different dimensions");

  auto entropy = [&](const DensityMatrix& rho) {
    Spectrum s = spectral_decompose(rho, tol);
    double h = 0.0;
    for (Index i = 0; i < s.eigenvalues.size(); ++i) {
      double p = s.eigenvalues(i);
      if (p > 0.0)
        h -= p * std::log(p);
    }
    return h;
  };

  StateMetrics m{};
  m.trace_distance = trace_distance(rho1, rho2);
  m.purity1 = (rho1.matrix() * rho1.matrix()).trace().real();
  m.purity2 = (rho2.matrix() * rho2.matrix()).trace().real();
  m.vn_entropy1 = entropy(rho1);
  m.vn_entropy2 = entropy(rho2);
  return m;
}

bool kinematically_equivalent(const DensityMatrix& rho1, const DensityMatrix& rho2,
                              double tol) {
  if (rho1.dim() != rho2.dim())
    throw Error(ErrorCode::DimMismatch, "states have different dimensions");
  RealVector s1 = raw_spectrum(rho1.matrix());
  RealVector s2 = raw_spectrum(rho2.matrix());
  return (s1 - s2).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix thermal_state(const ComplexMatrix& h0, double beta, const Tolerances& tol) {
  if (h0.rows() != h0.cols())
    throw Error(ErrorCode::NotSquare, "Hamiltonian must be square");
  double herm_residual = max_dist(h0, h0.adjoint());
  if (herm_residual > tol.herm)
    throw Error(ErrorCode::NotHermitian, "Hamiltonian is not Hermitian", herm_residual);
  if (beta < 0.0)
    throw Error(ErrorCode::InvalidArgument, "inverse temperature must be >= 0");

  auto solver = hermitian_eigs((h0 + h0.adjoint()) / 2.0);
  RealVector energies = solver.eigenvalues();
  // shift by the ground energy so the exponentials never overflow
  double e0 = energies.minCoeff();
  RealVector weights = (-beta * (energies.array() - e0)).exp().matrix();
  weights /= weights.sum();

  ComplexMatrix rho = solver.eigenvectors() * weights.asDiagonal() *
                      solver.eigenvectors().adjoint();
  return DensityMatrix(rho, tol);
}

DensityMatrix random_density(Index dim, Index rank, std::uint64_t seed,
                             const Tolerances& tol) {
  if (rank < 1 || rank > dim) {
    std::ostringstream os;
    os << "rank " << rank << " outside [1, " << dim << "]";
    throw Error(ErrorCode::BadRank, os.str());
  }
  Rng rng(seed);
  ComplexMatrix g = random_gaussian_matrix(dim, rank, rng);
  ComplexMatrix gram = g * g.adjoint();
  gram /= gram.trace().real();
  return DensityMatrix(gram, tol);
}

} // namespace kraus
