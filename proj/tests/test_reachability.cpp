#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kraus/random.hpp"
#include "kraus/reachability.hpp"
#include "kraus/synthesis.hpp"

using namespace kraus;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix pauli_x() { return mat2(0, 1, 1, 0); }

ComplexMatrix hadamard() {
  double s = 1.0 / std::sqrt(2.0);
  return mat2(s, s, s, -s);
}

// projective dephasing in the computational basis
KrausMap dephase() {
  return KrausMap({mat2(1, 0, 0, 0), mat2(0, 0, 0, 1)});
}

ControlSet qubit_controls() {
  PureState zero = PureState::basis_state(2, 0);
  return ControlSet({{"atp0", all_to_pure(zero)}, {"X", from_unitary(pauli_x())}});
}

} // namespace

TEST_CASE("trivial reachability at depth zero") {
  DensityMatrix rho = random_density(2, 2, 1);
  ReachabilityReport r = reach_state(rho, rho, qubit_controls(), 0, 1e-6);
  CHECK(r.reached);
  CHECK(r.witness.empty());
  CHECK(r.depth_explored == 0);
  REQUIRE(r.replay_residual.has_value());
  CHECK(*r.replay_residual <= 1e-6);
}

TEST_CASE("two-step witness through the pure relay") {
  DensityMatrix mixed(ComplexMatrix::Identity(2, 2) / 2.0);
  DensityMatrix excited(PureState::basis_state(2, 1).projector());
  ReachabilityReport r = reach_state(mixed, excited, qubit_controls(), 2, 1e-6);
  CHECK(r.reached);
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0] == "atp0");
  CHECK(r.witness[1] == "X");
  CHECK(r.depth_explored == 2);
  REQUIRE(r.replay_residual.has_value());
  CHECK(*r.replay_residual <= 1e-6);

  // oracle: direct two-step application
  DensityMatrix step1 = apply(all_to_pure(PureState::basis_state(2, 0)), mixed);
  DensityMatrix step2 = apply(from_unitary(pauli_x()), step1);
  CHECK(trace_distance(step2, excited) <= 1e-12);
}

TEST_CASE("unitary controls cannot change the spectrum") {
  DensityMatrix zero(PureState::basis_state(2, 0).projector());
  DensityMatrix mixed(ComplexMatrix::Identity(2, 2) / 2.0);
  ControlSet unitaries({{"H", from_unitary(hadamard())},
                        {"X", from_unitary(pauli_x())}});

  ReachabilityReport r = reach_state(zero, mixed, unitaries, 5, 1e-6);
  CHECK_FALSE(r.reached);
  CHECK(r.closest_distance == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(r.replay_residual.has_value());
}

TEST_CASE("monotonicity in the depth bound") {
  DensityMatrix mixed(ComplexMatrix::Identity(2, 2) / 2.0);
  DensityMatrix excited(PureState::basis_state(2, 1).projector());
  for (Index depth = 2; depth <= 5; ++depth) {
    ReachabilityReport r = reach_state(mixed, excited, qubit_controls(), depth, 1e-6);
    CHECK(r.reached);
    CHECK(r.witness.size() == 2); // BFS returns the shortest witness
  }
  ReachabilityReport shallow = reach_state(mixed, excited, qubit_controls(), 1, 1e-6);
  CHECK_FALSE(shallow.reached);
}

TEST_CASE("frontier sizes respect the generator bound") {
  DensityMatrix rho0 = random_density(2, 1, 3);
  DensityMatrix target = random_density(2, 2, 4);
  ControlSet controls({{"H", from_unitary(hadamard())},
                       {"X", from_unitary(pauli_x())},
                       {"deph", dephase()}});
  ReachabilityReport r = reach_state(rho0, target, controls, 4, 1e-6);
  REQUIRE(!r.frontier_sizes.empty());
  CHECK(r.frontier_sizes[0] == 1);
  double bound = 1.0;
  for (size_t d = 1; d < r.frontier_sizes.size(); ++d) {
    bound *= static_cast<double>(controls.size());
    CHECK(static_cast<double>(r.frontier_sizes[d]) <= bound);
  }
}

TEST_CASE("channel reachability composes generators in order") {
  KrausMap x_chan = from_unitary(pauli_x());
  KrausMap deph = dephase();
  ControlSet controls({{"X", x_chan}, {"deph", deph}});

  KrausMap id = from_unitary(ComplexMatrix::Identity(2, 2));
  ReachabilityReport trivial = reach_channel(id, controls, 0, 1e-6);
  CHECK(trivial.reached);
  CHECK(trivial.witness.empty());

  // target: X first, then dephase
  KrausMap target = compose(deph, x_chan);
  ReachabilityReport r = reach_channel(target, controls, 2, 1e-6);
  CHECK(r.reached);
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0] == "X");
  CHECK(r.witness[1] == "deph");
  REQUIRE(r.replay_residual.has_value());
  CHECK(*r.replay_residual <= 1e-6);

  // oracle: explicit composition differs from both single generators
  CHECK_FALSE(maps_equal(target, x_chan, 1e-3));
  CHECK_FALSE(maps_equal(target, deph, 1e-3));
}

TEST_CASE("unitary compositions never reach a rank-4 channel") {
  ControlSet unitaries({{"H", from_unitary(hadamard())},
                        {"X", from_unitary(pauli_x())}});
  DensityMatrix mixed(ComplexMatrix::Identity(2, 2) / 2.0);
  KrausMap target = all_to_any(mixed);
  CHECK(kraus_rank(target) == 4);

  ReachabilityReport r = reach_channel(target, unitaries, 5, 1e-6);
  CHECK_FALSE(r.reached);
  CHECK(r.closest_distance > 1e-3);
}

TEST_CASE("dsc_sample fractions") {
  Index dim = 2;
  Index samples = 8;
  std::uint64_t seed = 5;

  // generators that hit exactly the sampled targets: fraction 1 at depth 1
  auto pairs = sample_state_pairs(dim, samples, seed);
  std::vector<LabeledChannel> gens;
  for (size_t i = 0; i < pairs.size(); ++i)
    gens.push_back({"ata" + std::to_string(i), all_to_any(pairs[i].second)});
  ControlSet grid(std::move(gens));
  CHECK(dsc_sample(grid, samples, 1, 1e-8, seed) == doctest::Approx(1.0));

  // identity-only controls: success is exactly "already within tolerance"
  ControlSet only_id({{"id", from_unitary(ComplexMatrix::Identity(2, 2))}});
  double expected = 0.0;
  for (const auto& [a, b] : pairs)
    if (trace_distance(a, b) <= 1e-3)
      expected += 1.0;
  expected /= static_cast<double>(samples);
  CHECK(dsc_sample(only_id, samples, 3, 1e-3, seed) == doctest::Approx(expected));

  // deterministic across repeated runs
  ControlSet controls({{"atp0", all_to_pure(PureState::basis_state(2, 0))},
                       {"H", from_unitary(hadamard())}});
  double f1 = dsc_sample(controls, 6, 3, 1e-2, 9);
  double f2 = dsc_sample(controls, 6, 3, 1e-2, 9);
  CHECK(f1 == f2);
}

TEST_CASE("control set validation") {
  CHECK_THROWS_AS(ControlSet({}), Error);
  KrausMap id2 = from_unitary(ComplexMatrix::Identity(2, 2));
  KrausMap id3 = from_unitary(ComplexMatrix::Identity(3, 3));
  CHECK_THROWS_AS(ControlSet({{"a", id2}, {"b", id3}}), Error);
  CHECK_THROWS_AS(ControlSet({{"a", id2}, {"a", id2}}), Error);

  DensityMatrix rho = random_density(2, 2, 2);
  DensityMatrix other = random_density(3, 3, 2);
  ControlSet controls({{"id", id2}});
  CHECK_THROWS_AS(reach_state(rho, other, controls, 1, 1e-6), Error);
  CHECK_THROWS_AS(reach_state(rho, rho, controls, 1, 0.0), Error);
}
