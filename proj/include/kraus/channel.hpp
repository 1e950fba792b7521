// CPTP channel algebra: Kraus representations, composition, unitary freedom,
// Choi conversion, equality testing and Stinespring dilation.
#ifndef KRAUS_CHANNEL_HPP
#define KRAUS_CHANNEL_HPP

#include <vector>

#include "kraus/density.hpp"
#include "kraus/errors.hpp"
#include "kraus/types.hpp"

namespace kraus {

// Ordered list of N x N operators K_i with sum K_i^dag K_i = I.
class KrausMap {
public:
  KrausMap(std::vector<ComplexMatrix> ops, const Tolerances& tol = {});

  Index dim() const { return ops_.front().rows(); }
  Index size() const { return static_cast<Index>(ops_.size()); }
  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  const ComplexMatrix& op(Index i) const { return ops_[static_cast<size_t>(i)]; }

private:
  std::vector<ComplexMatrix> ops_;
};

// N^2 x N^2 matrix C = sum_{ij} |i><j| (x) Phi[|i><j|]. Hermitian and PSD
// (complete positivity); its partial trace over the output factor is I_N
// (trace preservation). Block (i,j) of size N x N holds Phi[|i><j|].
class ChoiMatrix {
public:
  ChoiMatrix(Index dim, const ComplexMatrix& mat, const Tolerances& tol = {});

  Index dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return mat_; }

private:
  Index dim_;
  ComplexMatrix mat_;
};

// Unitary realization of a channel on system (x) ancilla. The ancilla
// reference vector is |ancilla_ref> (always 0 here); composite index order is
// system-major: (s, e) -> s * ancilla_dim + e.
struct Dilation {
  Index system_dim;
  Index ancilla_dim;
  ComplexMatrix unitary;
  Index ancilla_ref;
};

// Validating constructors (spec operation names).
KrausMap make_kraus(std::vector<ComplexMatrix> ops, const Tolerances& tol = {});
KrausMap from_unitary(const ComplexMatrix& u, const Tolerances& tol = {});

// Phi[rho] = sum K_i rho K_i^dag
DensityMatrix apply(const KrausMap& phi, const DensityMatrix& rho,
                    const Tolerances& tol = {});

// Raw operator-sum action on a matrix (no density validation of the result).
ComplexMatrix apply_raw(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& m);

// (phi2 o phi1): operators K2_i K1_j in lexicographic (i, j) order.
KrausMap compose(const KrausMap& phi2, const KrausMap& phi1, const Tolerances& tol = {});

// K~_i = sum_j w_ij K_j for an m x n matrix W with W^dag W = I_n; represents
// the same channel with m operators.
KrausMap unitary_mix(const KrausMap& phi, const ComplexMatrix& w,
                     const Tolerances& tol = {});

// Choi matrix of an arbitrary operator list (no TP requirement); used by
// verification on unvalidated input.
ComplexMatrix choi_matrix_of(const std::vector<ComplexMatrix>& ops);

ChoiMatrix kraus_to_choi(const KrausMap& phi, const Tolerances& tol = {});

// Eigendecomposition of the Choi matrix; one operator per eigenvalue above
// tol.rank, ordered by descending eigenvalue, eigenvectors phase-canonicalized.
// Result has at most N^2 operators.
KrausMap choi_to_kraus(const ChoiMatrix& choi, const Tolerances& tol = {});

// Channel equality = Choi matrices within tol in max-norm.
bool maps_equal(const KrausMap& phi1, const KrausMap& phi2, double tol);

// Numerical rank of the Choi matrix (eigenvalues > tol.rank); <= N^2.
Index kraus_rank(const KrausMap& phi, const Tolerances& tol = {});

// U(|psi> (x) |0>) = sum_i K_i |psi> (x) |e_i>, completed to a unitary with
// deterministic seeded Gram-Schmidt columns.
Dilation stinespring_dilate(const KrausMap& phi, const Tolerances& tol = {});

// Traces out one factor of a state on a (dim1, dim2) tensor product;
// `traced_factor` is 1 or 2, the result lives on the kept factor.
DensityMatrix partial_trace(const DensityMatrix& joint, Index dim1, Index dim2,
                            int traced_factor, const Tolerances& tol = {});

// Partial trace on a raw matrix (same index conventions).
ComplexMatrix partial_trace_raw(const ComplexMatrix& m, Index dim1, Index dim2,
                                int traced_factor);

} // namespace kraus

#endif
