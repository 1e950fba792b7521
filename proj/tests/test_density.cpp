#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "kraus/density.hpp"
#include "kraus/random.hpp"

using namespace kraus;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// independent 2x2 Hermitian eigenvalues via the quadratic formula
std::pair<double, double> eig2(const ComplexMatrix& m) {
  double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
  double disc = std::sqrt(0.25 * std::pow(m(0, 0).real() - m(1, 1).real(), 2) +
                          std::norm(m(0, 1)));
  return {mean + disc, mean - disc};
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an error");
}

} // namespace

TEST_CASE("validate_density accepts canonical states") {
  DensityMatrix mixed(ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK(mixed.dim() == 2);

  DensityMatrix ground(mat2(1, 0, 0, 0));
  CHECK(ground.matrix()(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("validate_density rejects each invariant violation") {
  CHECK(code_of([] { validate_density(ComplexMatrix::Ones(2, 3)); }) ==
        ErrorCode::NotSquare);
  CHECK(code_of([] { validate_density(mat2(0.5, 0.3, 0.0, 0.5)); }) ==
        ErrorCode::NotHermitian);
  CHECK(code_of([] { validate_density(mat2(1.5, 0, 0, -0.5)); }) ==
        ErrorCode::NotPositive);

  try {
    validate_density(mat2(0.6, 0, 0, 0.6));
    FAIL("expected TraceNotOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TraceNotOne);
    CHECK(e.residual() == doctest::Approx(0.2).epsilon(1e-12));
  }
}

TEST_CASE("validate_density symmetrizes roundoff-level asymmetry") {
  ComplexMatrix m = mat2(0.5, Complex(0.25, 1e-12), Complex(0.25, 1e-12), 0.5);
  DensityMatrix rho(m);
  CHECK(max_dist(rho.matrix(), rho.matrix().adjoint()) == 0.0);
}

TEST_CASE("spectral_decompose on a diagonal state") {
  DensityMatrix rho(mat2(0.7, 0, 0, 0.3));
  Spectrum s = spectral_decompose(rho);
  CHECK(s.eigenvalues(0) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(s.eigenvalues(1) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(s.eigenvectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(s.eigenvectors(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("spectral_decompose canonicalizes the |+> projector") {
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  DensityMatrix rho(plus * plus.adjoint());
  Spectrum s = spectral_decompose(rho);
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(0.0));
  // phase convention: first sizable component real positive
  CHECK(s.eigenvectors(0, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(s.eigenvectors(0, 0).imag() == doctest::Approx(0.0));
  CHECK(s.eigenvectors(1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("spectral_decompose reconstructs random states") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DensityMatrix rho = random_density(3, 3, seed);
    Spectrum s = spectral_decompose(rho);
    // oracle: rebuild sum p_i |phi_i><phi_i| with plain loops
    ComplexMatrix rebuilt = ComplexMatrix::Zero(3, 3);
    for (Index i = 0; i < 3; ++i)
      for (Index a = 0; a < 3; ++a)
        for (Index b = 0; b < 3; ++b)
          rebuilt(a, b) += s.eigenvalues(i) * s.eigenvectors(a, i) *
                           std::conj(s.eigenvectors(b, i));
    CHECK(max_dist(rebuilt, rho.matrix()) <= 1e-10);
  }
}

TEST_CASE("state_metrics on identical and orthogonal states") {
  DensityMatrix rho = random_density(3, 2, 5);
  StateMetrics same = state_metrics(rho, rho);
  CHECK(same.trace_distance == doctest::Approx(0.0).epsilon(1e-12));

  DensityMatrix zero(mat2(1, 0, 0, 0));
  DensityMatrix one(mat2(0, 0, 0, 1));
  StateMetrics m = state_metrics(zero, one);
  CHECK(m.trace_distance == doctest::Approx(1.0));
  CHECK(m.purity1 == doctest::Approx(1.0));
  CHECK(m.purity2 == doctest::Approx(1.0));
  CHECK(m.vn_entropy1 == doctest::Approx(0.0));
  CHECK(m.vn_entropy2 == doctest::Approx(0.0));
}

TEST_CASE("state_metrics pure vs maximally mixed") {
  DensityMatrix zero(mat2(1, 0, 0, 0));
  DensityMatrix mixed(ComplexMatrix::Identity(2, 2) / 2.0);
  StateMetrics m = state_metrics(zero, mixed);

  // oracle: eigenvalues of the 2x2 difference via the quadratic formula
  auto [hi, lo] = eig2(zero.matrix() - mixed.matrix());
  double expected_td = 0.5 * (std::abs(hi) + std::abs(lo));
  CHECK(expected_td == doctest::Approx(0.5).epsilon(1e-14));

  CHECK(m.trace_distance == doctest::Approx(expected_td).epsilon(1e-12));
  CHECK(m.purity2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.vn_entropy2 == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(state_metrics(zero, random_density(3, 1, 0)), Error);
}

TEST_CASE("kinematic equivalence matches spectra") {
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  DensityMatrix zero(mat2(1, 0, 0, 0));
  DensityMatrix plus_state(plus * plus.adjoint());
  DensityMatrix mixed(ComplexMatrix::Identity(2, 2) / 2.0);

  CHECK(kinematically_equivalent(zero, plus_state, 1e-9));
  CHECK_FALSE(kinematically_equivalent(zero, mixed, 1e-9));

  DensityMatrix rho(mat2(0.7, 0, 0, 0.3));
  Rng rng(11);
  ComplexMatrix u = random_unitary(2, rng);
  DensityMatrix conjugated(u * rho.matrix() * u.adjoint());
  CHECK(kinematically_equivalent(rho, conjugated, 1e-9));
}

TEST_CASE("thermal_state limits and finite temperature") {
  Rng rng(3);
  ComplexMatrix g = random_gaussian_matrix(3, 3, rng);
  ComplexMatrix h = g + g.adjoint();

  DensityMatrix hot = thermal_state(h, 0.0);
  CHECK(max_dist(hot.matrix(), ComplexMatrix::Identity(3, 3) / 3.0) <= 1e-12);

  ComplexMatrix h2 = mat2(0, 0, 0, 50.0);
  DensityMatrix cold = thermal_state(h2, 1.0);
  CHECK(std::abs(cold.matrix()(0, 0) - Complex(1.0)) <= 1e-20);
  CHECK(std::abs(cold.matrix()(1, 1)) <= 1e-20);

  // oracle: scalar exponentials
  ComplexMatrix h3 = mat2(0, 0, 0, 1.0);
  DensityMatrix gibbs = thermal_state(h3, 1.0);
  double z = 1.0 + std::exp(-1.0);
  CHECK(gibbs.matrix()(0, 0).real() == doctest::Approx(1.0 / z).epsilon(1e-14));
  CHECK(gibbs.matrix()(1, 1).real() == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-14));

  CHECK(code_of([] { thermal_state(mat2(0, 1, 0, 0), 1.0); }) == ErrorCode::NotHermitian);
}

TEST_CASE("thermal_state commutes with its Hamiltonian") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    ComplexMatrix g = random_gaussian_matrix(4, 4, rng);
    ComplexMatrix h = g + g.adjoint();
    DensityMatrix rho = thermal_state(h, 0.7);
    CHECK(max_dist(rho.matrix() * h, h * rho.matrix()) <= 1e-10);
  }
}

TEST_CASE("random_density determinism and rank structure") {
  DensityMatrix a = random_density(2, 2, 42);
  DensityMatrix b = random_density(2, 2, 42);
  CHECK(a.matrix() == b.matrix()); // bit-for-bit

  DensityMatrix pure = random_density(4, 1, 9);
  double purity = (pure.matrix() * pure.matrix()).trace().real();
  CHECK(purity == doctest::Approx(1.0).epsilon(1e-10));

  DensityMatrix full = random_density(4, 4, 7);
  Spectrum s = spectral_decompose(full);
  CHECK(s.eigenvalues(3) > 0.0);

  CHECK(code_of([] { random_density(3, 0, 1); }) == ErrorCode::BadRank);
  CHECK(code_of([] { random_density(3, 4, 1); }) == ErrorCode::BadRank);
}

TEST_CASE("spectrum properties over seeded random states") {
  for (Index n = 2; n <= 5; ++n) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Index rank = 1 + static_cast<Index>(seed % static_cast<std::uint64_t>(n));
      DensityMatrix rho = random_density(n, rank, seed * 131 + 7);
      Spectrum s = spectral_decompose(rho);

      double sum = 0.0;
      for (Index i = 0; i < n; ++i) {
        CHECK(s.eigenvalues(i) >= 0.0);
        CHECK(s.eigenvalues(i) <= 1.0 + 1e-9);
        sum += s.eigenvalues(i);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(max_dist(s.reconstruct(), rho.matrix()) <= 1e-10);

      // Gram matrix of eigenvectors is the identity
      CHECK(max_dist(s.eigenvectors.adjoint() * s.eigenvectors,
                     ComplexMatrix::Identity(n, n)) <= 1e-9);

      double purity = (rho.matrix() * rho.matrix()).trace().real();
      StateMetrics m = state_metrics(rho, rho);
      if (rank == 1) {
        CHECK(purity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(m.vn_entropy1 <= 1e-7);
      } else {
        CHECK(purity < 1.0 - 1e-6);
      }
    }
  }
}

TEST_CASE("unitary conjugation preserves spectra") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Index n = 2 + static_cast<Index>(seed % 3);
    DensityMatrix rho = random_density(n, n, seed + 100);
    Rng rng(seed);
    ComplexMatrix u = random_unitary(n, rng);
    DensityMatrix conjugated(u * rho.matrix() * u.adjoint());
    CHECK(kinematically_equivalent(rho, conjugated, 1e-9));
  }
}
