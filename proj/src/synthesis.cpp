#include "kraus/synthesis.hpp"

#include <cmath>
#include <sstream>

#include "kraus/random.hpp"

namespace kraus {

namespace {

// below this residual norm two unit vectors are treated as parallel
constexpr double kParallelFloor = 1e-12;

// Unitary plane rotation sending `from` to `to` exactly and acting as the
// identity on the orthogonal complement of span{from, to}. When the vectors
// are parallel this degenerates to a global phase.
ComplexMatrix rotation_mapping(const ComplexVector& from, const ComplexVector& to) {
  Index n = from.size();
  Complex overlap = from.dot(to); // <from|to>
  ComplexVector residual = to - overlap * from;
  double b = residual.norm();
  if (b < kParallelFloor) {
    Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
    return phase * identity(n);
  }
  ComplexVector w = residual / b;
  ComplexMatrix u = identity(n);
  u -= from * from.adjoint();
  u -= w * w.adjoint();
  u += (overlap * from + b * w) * from.adjoint();
  u += (-b * from + std::conj(overlap) * w) * w.adjoint();
  return u;
}

bool is_pure(const Spectrum& spec, const Tolerances& tol) {
  return 1.0 - spec.eigenvalues(0) <= tol.rank;
}

} // namespace

ComplexMatrix Basis::materialize(Index dim) const {
  if (!seed)
    return identity(dim);
  Rng rng(*seed);
  return random_unitary(dim, rng);
}

const char* strategy_name(StrategyTag tag) {
  switch (tag) {
    case StrategyTag::Auto: return "auto";
    case StrategyTag::UnitaryTransfer: return "unitary";
    case StrategyTag::PureToAny: return "pta";
    case StrategyTag::AllToPure: return "atp";
    case StrategyTag::AllToAny: return "all-to-any";
    case StrategyTag::ComposedPtaAtp: return "composed";
    case StrategyTag::QubitPtp: return "qubit-ptp";
  }
  return "unknown";
}

KrausMap all_to_pure(const PureState& psi, const Basis& basis, const Tolerances& tol) {
  Index n = psi.dim();
  ComplexMatrix chi = basis.materialize(n);
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i)
    ops.push_back(psi.vector() * chi.col(i).adjoint());
  return KrausMap(std::move(ops), tol);
}

KrausMap all_to_any(const DensityMatrix& rho_f, const Basis& basis, const Tolerances& tol) {
  Index n = rho_f.dim();
  Spectrum spec = spectral_decompose(rho_f, tol);
  ComplexMatrix chi = basis.materialize(n);

  std::vector<ComplexMatrix> ops;
  for (Index i = 0; i < n; ++i) {
    double p = spec.eigenvalues(i);
    if (p <= tol.rank)
      continue;
    for (Index j = 0; j < n; ++j)
      ops.push_back(std::sqrt(p) * spec.eigenvectors.col(i) * chi.col(j).adjoint());
  }
  return KrausMap(std::move(ops), tol);
}

KrausMap pure_to_any(const PureState& psi, const DensityMatrix& rho_f,
                     const Tolerances& tol) {
  if (psi.dim() != rho_f.dim())
    throw Error(ErrorCode::DimMismatch, "state dimensions differ");
  Spectrum spec = spectral_decompose(rho_f, tol);

  std::vector<ComplexMatrix> ops;
  for (Index i = 0; i < rho_f.dim(); ++i) {
    double p = spec.eigenvalues(i);
    if (p <= tol.rank)
      continue;
    ComplexMatrix rot = rotation_mapping(psi.vector(), spec.eigenvectors.col(i));
    ops.push_back(std::sqrt(p) * rot);
  }
  return KrausMap(std::move(ops), tol);
}

KrausMap composed_pta_atp(const PureState& psi_intermediate, const DensityMatrix& rho_f,
                          const Basis& basis, const Tolerances& tol) {
  if (psi_intermediate.dim() != rho_f.dim())
    throw Error(ErrorCode::DimMismatch, "state dimensions differ");
  return compose(pure_to_any(psi_intermediate, rho_f, tol),
                 all_to_pure(psi_intermediate, basis, tol), tol);
}

QubitPtpResult qubit_pure_to_pure(const std::array<Complex, 4>& x, const PureState& psi_in,
                                  const PureState& psi_f, const Tolerances& tol) {
  if (psi_in.dim() != 2 || psi_f.dim() != 2)
    throw Error(ErrorCode::DimMismatch, "this family is defined for qubits");

  double c1 = std::norm(x[0]) + std::norm(x[2]);
  double c2 = std::norm(x[1]) + std::norm(x[3]);
  if (std::abs(c1 - 1.0) > tol.tp)
    throw Error(ErrorCode::BadCoefficients,
                "|x1|^2 + |x3|^2 must equal 1", std::abs(c1 - 1.0));
  if (std::abs(c2 - 1.0) > tol.tp)
    throw Error(ErrorCode::BadCoefficients,
                "|x2|^2 + |x4|^2 must equal 1", std::abs(c2 - 1.0));
  // a vanishing operator leaves a bare unitary, not a two-operator family
  double k1_norm = std::norm(x[0]) + std::norm(x[1]);
  double k2_norm = std::norm(x[2]) + std::norm(x[3]);
  if (k1_norm <= tol.rank)
    throw Error(ErrorCode::BadCoefficients, "K1 vanishes (x1 = x2 = 0)", k1_norm);
  if (k2_norm <= tol.rank)
    throw Error(ErrorCode::BadCoefficients, "K2 vanishes (x3 = x4 = 0)", k2_norm);

  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k2 = ComplexMatrix::Zero(2, 2);
  k1(1, 0) = x[0];
  k1(0, 1) = x[1];
  k2(1, 0) = x[2];
  k2(0, 1) = x[3];

  // rotate the canonical |0> -> |1> family into the requested frame
  ComplexVector e0 = PureState::basis_state(2, 0).vector();
  ComplexVector e1 = PureState::basis_state(2, 1).vector();
  ComplexMatrix to_canonical = rotation_mapping(psi_in.vector(), e0);
  ComplexMatrix from_canonical = rotation_mapping(e1, psi_f.vector());
  k1 = from_canonical * k1 * to_canonical;
  k2 = from_canonical * k2 * to_canonical;

  // linear dependence of the pair via the second singular value of the
  // stacked coefficient matrix
  ComplexMatrix stacked(2, 4);
  stacked.row(0) = Eigen::Map<const ComplexVector>(k1.data(), 4).transpose();
  stacked.row(1) = Eigen::Map<const ComplexVector>(k2.data(), 4).transpose();
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked);
  bool dependent = svd.singularValues()(1) <= tol.rank;

  return QubitPtpResult{KrausMap({std::move(k1), std::move(k2)}, tol), dependent};
}

KrausMap unitary_transfer(const DensityMatrix& rho1, const DensityMatrix& rho2,
                          double spectrum_tol, const Tolerances& tol) {
  if (rho1.dim() != rho2.dim())
    throw Error(ErrorCode::DimMismatch, "state dimensions differ");
  Spectrum s1 = spectral_decompose(rho1, tol);
  Spectrum s2 = spectral_decompose(rho2, tol);
  double gap = (s1.eigenvalues - s2.eigenvalues).cwiseAbs().maxCoeff();
  if (gap > spectrum_tol)
    throw Error(ErrorCode::NotKinematicallyEquivalent,
                "sorted spectra differ; no unitary connects these states", gap);
  ComplexMatrix u = s2.eigenvectors * s1.eigenvectors.adjoint();
  return from_unitary(u, tol);
}

SynthesisResult synthesize(const DensityMatrix& rho_in, const DensityMatrix& rho_f,
                           const SynthesisStrategy& strategy, const Tolerances& tol) {
  if (rho_in.dim() != rho_f.dim())
    throw Error(ErrorCode::DimMismatch, "state dimensions differ");
  Index n = rho_in.dim();

  Spectrum spec_in = spectral_decompose(rho_in, tol);
  Spectrum spec_f = spectral_decompose(rho_f, tol);

  StrategyTag tag = strategy.tag;
  if (tag == StrategyTag::Auto) {
    if (kinematically_equivalent(rho_in, rho_f, 1e-8))
      tag = StrategyTag::UnitaryTransfer;
    else if (is_pure(spec_in, tol))
      tag = StrategyTag::PureToAny;
    else
      tag = StrategyTag::AllToAny;
  }

  switch (tag) {
    case StrategyTag::UnitaryTransfer: {
      if (!kinematically_equivalent(rho_in, rho_f, 1e-8))
        throw Error(ErrorCode::StrategyInapplicable,
                    "unitary transfer needs matching spectra");
      return {unitary_transfer(rho_in, rho_f, 1e-8, tol), tag};
    }
    case StrategyTag::PureToAny: {
      if (!is_pure(spec_in, tol))
        throw Error(ErrorCode::StrategyInapplicable,
                    "pure-to-any needs a rank-1 input state");
      return {pure_to_any(spec_in.eigenstate(0), rho_f, tol), tag};
    }
    case StrategyTag::AllToPure: {
      if (!is_pure(spec_f, tol))
        throw Error(ErrorCode::StrategyInapplicable,
                    "all-to-pure needs a rank-1 target state");
      return {all_to_pure(spec_f.eigenstate(0), strategy.basis, tol), tag};
    }
    case StrategyTag::AllToAny:
      return {all_to_any(rho_f, strategy.basis, tol), tag};
    case StrategyTag::ComposedPtaAtp: {
      PureState psi = strategy.intermediate ? *strategy.intermediate
                                            : PureState::basis_state(n, 0);
      if (psi.dim() != n)
        throw Error(ErrorCode::StrategyInapplicable,
                    "intermediate state dimension differs");
      return {composed_pta_atp(psi, rho_f, strategy.basis, tol), tag};
    }
    case StrategyTag::QubitPtp: {
      if (n != 2)
        throw Error(ErrorCode::StrategyInapplicable, "qubit-ptp needs dimension 2");
      if (!is_pure(spec_in, tol) || !is_pure(spec_f, tol))
        throw Error(ErrorCode::StrategyInapplicable,
                    "qubit-ptp needs pure input and target states");
      std::array<Complex, 4> coeffs =
          strategy.ptp_coeffs.value_or(std::array<Complex, 4>{1.0, 0.0, 0.0, 1.0});
      return {qubit_pure_to_pure(coeffs, spec_in.eigenstate(0), spec_f.eigenstate(0), tol).map,
              tag};
    }
    case StrategyTag::Auto:
      break;
  }
  throw Error(ErrorCode::StrategyInapplicable, "unresolved strategy");
}

} // namespace kraus
