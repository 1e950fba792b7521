#include "kraus/channel.hpp"

#include <cmath>
#include <sstream>

#include "kraus/random.hpp"

namespace kraus {

namespace {

constexpr double kPhaseFloor = 1e-9;
// a Gram-Schmidt candidate shorter than this is discarded and redrawn
constexpr double kCompletionFloor = 1e-6;
// fixed seed for the deterministic dilation completion columns
constexpr std::uint64_t kCompletionSeed = 0x6b726175;

void canonicalize_phase(Eigen::Ref<ComplexVector> v) {
  for (Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v(i));
    if (a >= kPhaseFloor) {
      v *= std::conj(v(i)) / a;
      return;
    }
  }
}

double tp_residual(const std::vector<ComplexMatrix>& ops) {
  Index n = ops.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& k : ops)
    sum += k.adjoint() * k;
  return max_dist(sum, identity(n));
}

} // namespace

KrausMap::KrausMap(std::vector<ComplexMatrix> ops, const Tolerances& tol) {
  if (ops.empty())
    throw Error(ErrorCode::EmptyList, "a Kraus map needs at least one operator");
  Index n = ops.front().rows();
  for (const auto& k : ops) {
    if (k.rows() != n || k.cols() != n)
      throw Error(ErrorCode::DimMismatch, "operators must be square and share one dimension");
    if (!all_finite(k))
      throw Error(ErrorCode::InvalidArgument, "operator has non-finite entries");
  }
  double residual = tp_residual(ops);
  if (residual > tol.tp) {
    std::ostringstream os;
    os << "sum K^dag K deviates from identity by " << residual;
    throw Error(ErrorCode::NotTracePreserving, os.str(), residual);
  }
  ops_ = std::move(ops);
}

KrausMap make_kraus(std::vector<ComplexMatrix> ops, const Tolerances& tol) {
  return KrausMap(std::move(ops), tol);
}

KrausMap from_unitary(const ComplexMatrix& u, const Tolerances& tol) {
  if (u.rows() != u.cols())
    throw Error(ErrorCode::NotSquare, "unitary must be square");
  double residual = max_dist(u.adjoint() * u, identity(u.rows()));
  if (residual > tol.tp)
    throw Error(ErrorCode::NotUnitary, "U^dag U deviates from identity", residual);
  return KrausMap({u}, tol);
}

ComplexMatrix apply_raw(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& m) {
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (const auto& k : ops)
    out += k * m * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausMap& phi, const DensityMatrix& rho, const Tolerances& tol) {
  if (phi.dim() != rho.dim())
    throw Error(ErrorCode::DimMismatch, "channel and state dimensions differ");
  return DensityMatrix(apply_raw(phi.ops(), rho.matrix()), tol);
}

KrausMap compose(const KrausMap& phi2, const KrausMap& phi1, const Tolerances& tol) {
  if (phi2.dim() != phi1.dim())
    throw Error(ErrorCode::DimMismatch, "channel dimensions differ");
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<size_t>(phi2.size() * phi1.size()));
  for (Index i = 0; i < phi2.size(); ++i)
    for (Index j = 0; j < phi1.size(); ++j)
      ops.push_back(phi2.op(i) * phi1.op(j));
  return KrausMap(std::move(ops), tol);
}

KrausMap unitary_mix(const KrausMap& phi, const ComplexMatrix& w, const Tolerances& tol) {
  Index n = phi.size();
  Index m = w.rows();
  if (w.cols() != n || m < n)
    throw Error(ErrorCode::DimMismatch,
                "mixing matrix must have one column per operator and at least as many rows");
  double residual = max_dist(w.adjoint() * w, identity(n));
  if (residual > tol.tp)
    throw Error(ErrorCode::BadIsometry, "W^dag W deviates from identity", residual);

  std::vector<ComplexMatrix> mixed;
  mixed.reserve(static_cast<size_t>(m));
  for (Index i = 0; i < m; ++i) {
    ComplexMatrix k = ComplexMatrix::Zero(phi.dim(), phi.dim());
    for (Index j = 0; j < n; ++j)
      k += w(i, j) * phi.op(j);
    mixed.push_back(std::move(k));
  }
  return KrausMap(std::move(mixed), tol);
}

ComplexMatrix choi_matrix_of(const std::vector<ComplexMatrix>& ops) {
  Index n = ops.front().rows();
  ComplexMatrix c = ComplexMatrix::Zero(n * n, n * n);
  ComplexMatrix unit = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      unit.setZero();
      unit(i, j) = 1.0;
      c.block(i * n, j * n, n, n) = apply_raw(ops, unit);
    }
  }
  return c;
}

ChoiMatrix::ChoiMatrix(Index dim, const ComplexMatrix& mat, const Tolerances& tol)
    : dim_(dim) {
  if (mat.rows() != dim * dim || mat.cols() != dim * dim)
    throw Error(ErrorCode::DimMismatch, "Choi matrix must be dim^2 x dim^2");
  if (!all_finite(mat))
    throw Error(ErrorCode::InvalidArgument, "Choi matrix has non-finite entries");

  double herm_residual = max_dist(mat, mat.adjoint());
  if (herm_residual > tol.herm)
    throw Error(ErrorCode::NotCP, "Choi matrix is not Hermitian", herm_residual);

  ComplexMatrix sym = (mat + mat.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver did not converge");
  double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol.psd)
    throw Error(ErrorCode::NotCP, "Choi matrix has a negative eigenvalue", min_eig);

  // partial trace over the output (second) factor must be the identity
  double tp = max_dist(partial_trace_raw(sym, dim, dim, 2), identity(dim));
  if (tp > tol.tp)
    throw Error(ErrorCode::NotTP, "Choi partial trace deviates from identity", tp);

  mat_ = std::move(sym);
}

ChoiMatrix kraus_to_choi(const KrausMap& phi, const Tolerances& tol) {
  return ChoiMatrix(phi.dim(), choi_matrix_of(phi.ops()), tol);
}

KrausMap choi_to_kraus(const ChoiMatrix& choi, const Tolerances& tol) {
  Index n = choi.dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(choi.matrix());
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver did not converge");

  std::vector<ComplexMatrix> ops;
  // descending eigenvalue order
  for (Index idx = n * n - 1; idx >= 0; --idx) {
    double lambda = solver.eigenvalues()(idx);
    if (lambda <= tol.rank)
      continue;
    ComplexVector v = solver.eigenvectors().col(idx);
    canonicalize_phase(v);
    // component (i, a) of the eigenvector is entry (a, i) of the operator
    ComplexMatrix k(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index a = 0; a < n; ++a)
        k(a, i) = std::sqrt(lambda) * v(i * n + a);
    ops.push_back(std::move(k));
  }
  if (ops.empty())
    throw Error(ErrorCode::NotTP, "Choi matrix has no spectral support");
  return KrausMap(std::move(ops), tol);
}

bool maps_equal(const KrausMap& phi1, const KrausMap& phi2, double tol) {
  if (phi1.dim() != phi2.dim())
    throw Error(ErrorCode::DimMismatch, "channel dimensions differ");
  return max_dist(choi_matrix_of(phi1.ops()), choi_matrix_of(phi2.ops())) <= tol;
}

Index kraus_rank(const KrausMap& phi, const Tolerances& tol) {
  ComplexMatrix c = choi_matrix_of(phi.ops());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(c, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver did not converge");
  Index rank = 0;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i)
    if (solver.eigenvalues()(i) > tol.rank)
      ++rank;
  return rank;
}

Dilation stinespring_dilate(const KrausMap& phi, const Tolerances& tol) {
  Index n = phi.dim();
  Index anc = phi.size();
  Index total = n * anc;

  ComplexMatrix u = ComplexMatrix::Zero(total, total);
  // columns (m, 0): stacked action sum_e K_e|m> (x) |e>
  for (Index m = 0; m < n; ++m)
    for (Index e = 0; e < anc; ++e)
      for (Index s = 0; s < n; ++s)
        u(s * anc + e, m * anc) = phi.op(e)(s, m);

  std::vector<Index> filled;
  filled.reserve(static_cast<size_t>(total));
  for (Index m = 0; m < n; ++m)
    filled.push_back(m * anc);

  // the fixed columns inherit orthonormality from trace preservation
  for (size_t a = 0; a < filled.size(); ++a)
    for (size_t b = 0; b <= a; ++b) {
      Complex g = u.col(filled[a]).dot(u.col(filled[b]));
      double expected = (a == b) ? 1.0 : 0.0;
      if (std::abs(g - expected) > tol.tp)
        throw Error(ErrorCode::CompletionFailure,
                    "isometry columns are not orthonormal", std::abs(g - expected));
    }

  // complete with seeded candidates, Gram-Schmidt with re-orthogonalization
  Rng rng(kCompletionSeed);
  for (Index col = 0; col < total; ++col) {
    if (col % anc == 0 && col / anc < n)
      continue; // fixed column
    ComplexVector v;
    while (true) {
      v = ComplexVector(total);
      for (Index i = 0; i < total; ++i)
        v(i) = rng.complex_gaussian();
      for (int pass = 0; pass < 2; ++pass)
        for (Index f : filled)
          v -= u.col(f) * u.col(f).dot(v);
      if (v.norm() >= kCompletionFloor)
        break;
    }
    u.col(col) = v / v.norm();
    filled.push_back(col);
  }

  double residual = max_dist(u.adjoint() * u, identity(total));
  if (residual > tol.tp)
    throw Error(ErrorCode::CompletionFailure, "completed matrix is not unitary", residual);

  return Dilation{n, anc, std::move(u), 0};
}

ComplexMatrix partial_trace_raw(const ComplexMatrix& m, Index dim1, Index dim2,
                                int traced_factor) {
  if (m.rows() != dim1 * dim2 || m.cols() != dim1 * dim2)
    throw Error(ErrorCode::BadFactorization, "matrix does not factor as dim1 * dim2");
  if (traced_factor != 1 && traced_factor != 2)
    throw Error(ErrorCode::BadFactorization, "traced factor must be 1 or 2");

  if (traced_factor == 2) {
    ComplexMatrix out = ComplexMatrix::Zero(dim1, dim1);
    for (Index i = 0; i < dim1; ++i)
      for (Index j = 0; j < dim1; ++j)
        for (Index e = 0; e < dim2; ++e)
          out(i, j) += m(i * dim2 + e, j * dim2 + e);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim2, dim2);
  for (Index a = 0; a < dim2; ++a)
    for (Index b = 0; b < dim2; ++b)
      for (Index s = 0; s < dim1; ++s)
        out(a, b) += m(s * dim2 + a, s * dim2 + b);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& joint, Index dim1, Index dim2,
                            int traced_factor, const Tolerances& tol) {
  if (joint.dim() != dim1 * dim2)
    throw Error(ErrorCode::BadFactorization, "state dimension is not dim1 * dim2");
  return DensityMatrix(partial_trace_raw(joint.matrix(), dim1, dim2, traced_factor), tol);
}

} // namespace kraus
