// Channel constructions for arbitrary state-to-state transfer: the all-to-one
// families, pure-to-any, the composed pathway, the qubit pure-to-pure family,
// spectrum-matching unitary transfer, and a strategy dispatcher.
#ifndef KRAUS_SYNTHESIS_HPP
#define KRAUS_SYNTHESIS_HPP

#include <array>
#include <cstdint>
#include <optional>

#include "kraus/channel.hpp"
#include "kraus/density.hpp"

namespace kraus {

// Orthonormal basis choice for the all-to-* constructions: the computational
// basis or the columns of a seeded random unitary.
struct Basis {
  std::optional<std::uint64_t> seed;

  static Basis computational() { return Basis{}; }
  static Basis seeded(std::uint64_t s) { return Basis{s}; }

  // columns are the basis vectors
  ComplexMatrix materialize(Index dim) const;
};

enum class StrategyTag {
  Auto,
  UnitaryTransfer,
  PureToAny,
  AllToPure,
  AllToAny,
  ComposedPtaAtp,
  QubitPtp,
};

const char* strategy_name(StrategyTag tag);

struct SynthesisStrategy {
  StrategyTag tag = StrategyTag::Auto;
  Basis basis = Basis::computational();
  std::optional<PureState> intermediate;                // ComposedPtaAtp
  std::optional<std::array<Complex, 4>> ptp_coeffs;     // QubitPtp
};

// N operators |psi><chi_i| over an orthonormal basis {chi_i}; sends every
// state to |psi><psi|.
KrausMap all_to_pure(const PureState& psi, const Basis& basis = {},
                     const Tolerances& tol = {});

// Operators sqrt(p_i) |phi_i><chi_j| over the spectral decomposition of the
// target (terms with p_i <= tol.rank omitted), lexicographic (i, j) order;
// sends every state to rho_f.
KrausMap all_to_any(const DensityMatrix& rho_f, const Basis& basis = {},
                    const Tolerances& tol = {});

// One operator sqrt(p_i) U_i per nonzero eigenvalue, with U_i the plane
// rotation in span{psi, phi_i} sending psi to phi_i (identity elsewhere);
// sends |psi><psi| to rho_f and is one-to-one.
KrausMap pure_to_any(const PureState& psi, const DensityMatrix& rho_f,
                     const Tolerances& tol = {});

// pure_to_any(psi, rho_f) composed after all_to_pure(psi); equal as a channel
// to all_to_any(rho_f) for every intermediate psi.
KrausMap composed_pta_atp(const PureState& psi_intermediate, const DensityMatrix& rho_f,
                          const Basis& basis = {}, const Tolerances& tol = {});

struct QubitPtpResult {
  KrausMap map;
  bool is_unitary; // K1, K2 linearly dependent within tol.rank
};

// Two-operator qubit family K1 = x1|1><0| + x2|0><1|, K2 = x3|1><0| + x4|0><1|
// (requires |x1|^2+|x3|^2 = 1 and |x2|^2+|x4|^2 = 1), rotated so it maps
// psi_in to psi_f instead of |0> to |1>.
QubitPtpResult qubit_pure_to_pure(const std::array<Complex, 4>& x,
                                  const PureState& psi_in, const PureState& psi_f,
                                  const Tolerances& tol = {});

// Single-operator channel U = V2 V1^dag built from eigenvectors paired in
// descending-eigenvalue order; requires matching spectra within spectrum_tol.
KrausMap unitary_transfer(const DensityMatrix& rho1, const DensityMatrix& rho2,
                          double spectrum_tol = 1e-8, const Tolerances& tol = {});

struct SynthesisResult {
  KrausMap map;
  StrategyTag chosen; // resolved strategy (never Auto)
};

// Builds a channel with apply(map, rho_in) = rho_f. Auto picks
// UnitaryTransfer when spectra match, PureToAny when rho_in is pure,
// AllToAny otherwise.
SynthesisResult synthesize(const DensityMatrix& rho_in, const DensityMatrix& rho_f,
                           const SynthesisStrategy& strategy = {},
                           const Tolerances& tol = {});

} // namespace kraus

#endif
