// Breadth-first reachability over finite compositions of a control alphabet,
// in state space and in channel (Choi) space.
#ifndef KRAUS_REACHABILITY_HPP
#define KRAUS_REACHABILITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kraus/channel.hpp"
#include "kraus/density.hpp"

namespace kraus {

struct LabeledChannel {
  std::string label;
  KrausMap channel;
};

// Finite generator alphabet; labels must be unique, dims must agree.
class ControlSet {
public:
  explicit ControlSet(std::vector<LabeledChannel> generators);

  Index dim() const { return generators_.front().channel.dim(); }
  Index size() const { return static_cast<Index>(generators_.size()); }
  const std::vector<LabeledChannel>& generators() const { return generators_; }

private:
  std::vector<LabeledChannel> generators_;
};

struct ReachabilityReport {
  bool reached = false;
  std::vector<std::string> witness;     // generator labels, first applied first
  Index depth_explored = 0;
  std::vector<Index> frontier_sizes;    // unique new nodes per depth (index 0 = root)
  double closest_distance = 0.0;        // nearest visited node to the target
  std::optional<double> replay_residual; // witness replayed on the source
};

// BFS over generator sequences applied to rho0. Visited states are
// deduplicated at trace distance <= tol; reached iff some visited state is
// within tol of the target. The first witness found is the shortest and
// lexicographically earliest in generator declaration order.
ReachabilityReport reach_state(const DensityMatrix& rho0, const DensityMatrix& target,
                               const ControlSet& controls, Index max_depth, double tol,
                               const Tolerances& num_tol = {});

// BFS over composed channels starting from the identity channel,
// deduplicated by Choi max-norm distance <= tol.
ReachabilityReport reach_channel(const KrausMap& target, const ControlSet& controls,
                                 Index max_depth, double tol,
                                 const Tolerances& num_tol = {});

// The deterministic (rho1, rho2) sample stream used by dsc_sample; exposed so
// diagnostics can be replayed against the exact sampled pairs.
std::vector<std::pair<DensityMatrix, DensityMatrix>> sample_state_pairs(
    Index dim, Index count, std::uint64_t seed, const Tolerances& tol = {});

// Fraction of sampled pairs for which reach_state succeeds.
double dsc_sample(const ControlSet& controls, Index state_samples, Index max_depth,
                  double tol, std::uint64_t seed, const Tolerances& num_tol = {});

} // namespace kraus

#endif
