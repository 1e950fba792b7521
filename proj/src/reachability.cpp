#include "kraus/reachability.hpp"

#include <algorithm>
#include <set>

#include "kraus/random.hpp"

namespace kraus {

namespace {

// shared BFS bookkeeping: parent links give the witness
struct SearchNode {
  Index parent;    // -1 for the root
  Index generator; // index into the control set, -1 for the root
};

std::vector<std::string> witness_of(const std::vector<SearchNode>& nodes,
                                    const ControlSet& controls, Index idx) {
  std::vector<std::string> labels;
  for (Index i = idx; nodes[static_cast<size_t>(i)].parent >= 0;
       i = nodes[static_cast<size_t>(i)].parent)
    labels.push_back(
        controls.generators()[static_cast<size_t>(nodes[static_cast<size_t>(i)].generator)].label);
  std::reverse(labels.begin(), labels.end());
  return labels;
}

} // namespace

ControlSet::ControlSet(std::vector<LabeledChannel> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty())
    throw Error(ErrorCode::EmptyList, "a control set needs at least one generator");
  Index n = generators_.front().channel.dim();
  std::set<std::string> labels;
  for (const auto& g : generators_) {
    if (g.channel.dim() != n)
      throw Error(ErrorCode::DimMismatch, "generators must share one dimension");
    if (!labels.insert(g.label).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate generator label: " + g.label);
  }
}

ReachabilityReport reach_state(const DensityMatrix& rho0, const DensityMatrix& target,
                               const ControlSet& controls, Index max_depth, double tol,
                               const Tolerances& num_tol) {
  if (rho0.dim() != target.dim() || rho0.dim() != controls.dim())
    throw Error(ErrorCode::DimMismatch, "state and control dimensions differ");
  if (tol <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  std::vector<DensityMatrix> states;
  std::vector<SearchNode> nodes;
  states.push_back(rho0);
  nodes.push_back({-1, -1});

  ReachabilityReport report;
  report.frontier_sizes.push_back(1);
  report.closest_distance = trace_distance(rho0, target);

  auto finish_reached = [&](Index idx, Index depth) {
    report.reached = true;
    report.witness = witness_of(nodes, controls, idx);
    report.depth_explored = depth;
    DensityMatrix replay = rho0;
    for (const auto& label : report.witness) {
      for (const auto& g : controls.generators())
        if (g.label == label) {
          replay = apply(g.channel, replay, num_tol);
          break;
        }
    }
    report.replay_residual = trace_distance(replay, target);
    return report;
  };

  if (report.closest_distance <= tol)
    return finish_reached(0, 0);

  std::vector<Index> frontier{0};
  for (Index depth = 1; depth <= max_depth; ++depth) {
    std::vector<Index> next;
    report.frontier_sizes.push_back(0);
    for (Index idx : frontier) {
      for (Index g = 0; g < controls.size(); ++g) {
        DensityMatrix candidate =
            apply(controls.generators()[static_cast<size_t>(g)].channel,
                  states[static_cast<size_t>(idx)], num_tol);
        bool duplicate = false;
        for (const auto& seen : states)
          if (trace_distance(candidate, seen) <= tol) {
            duplicate = true;
            break;
          }
        if (duplicate)
          continue;
        states.push_back(candidate);
        nodes.push_back({idx, g});
        next.push_back(static_cast<Index>(states.size()) - 1);
        report.frontier_sizes.back() += 1;

        double d = trace_distance(candidate, target);
        report.closest_distance = std::min(report.closest_distance, d);
        if (d <= tol)
          return finish_reached(static_cast<Index>(states.size()) - 1, depth);
      }
    }
    report.depth_explored = depth;
    if (next.empty())
      break;
    frontier = std::move(next);
  }
  return report;
}

ReachabilityReport reach_channel(const KrausMap& target, const ControlSet& controls,
                                 Index max_depth, double tol, const Tolerances& num_tol) {
  if (target.dim() != controls.dim())
    throw Error(ErrorCode::DimMismatch, "channel and control dimensions differ");
  if (tol <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  Index n = controls.dim();
  ComplexMatrix target_choi = choi_matrix_of(target.ops());

  struct ChannelNode {
    KrausMap map;
    ComplexMatrix choi;
  };
  std::vector<ChannelNode> channels;
  std::vector<SearchNode> nodes;

  KrausMap id = from_unitary(identity(n), num_tol);
  channels.push_back({id, choi_matrix_of(id.ops())});
  nodes.push_back({-1, -1});

  ReachabilityReport report;
  report.frontier_sizes.push_back(1);
  report.closest_distance = max_dist(channels.front().choi, target_choi);

  auto finish_reached = [&](Index idx, Index depth) {
    report.reached = true;
    report.witness = witness_of(nodes, controls, idx);
    report.depth_explored = depth;
    KrausMap replay = id;
    for (const auto& label : report.witness) {
      for (const auto& g : controls.generators())
        if (g.label == label) {
          replay = compose(g.channel, replay, num_tol);
          break;
        }
    }
    report.replay_residual = max_dist(choi_matrix_of(replay.ops()), target_choi);
    return report;
  };

  if (report.closest_distance <= tol)
    return finish_reached(0, 0);

  std::vector<Index> frontier{0};
  for (Index depth = 1; depth <= max_depth; ++depth) {
    std::vector<Index> next;
    report.frontier_sizes.push_back(0);
    for (Index idx : frontier) {
      for (Index g = 0; g < controls.size(); ++g) {
        KrausMap composed = compose(controls.generators()[static_cast<size_t>(g)].channel,
                                    channels[static_cast<size_t>(idx)].map, num_tol);
        ComplexMatrix choi = choi_matrix_of(composed.ops());
        // keep operator counts bounded by re-extracting a minimal set
        if (composed.size() > n * n)
          composed = choi_to_kraus(ChoiMatrix(n, choi, num_tol), num_tol);

        bool duplicate = false;
        for (const auto& seen : channels)
          if (max_dist(choi, seen.choi) <= tol) {
            duplicate = true;
            break;
          }
        if (duplicate)
          continue;
        channels.push_back({composed, choi});
        nodes.push_back({idx, g});
        next.push_back(static_cast<Index>(channels.size()) - 1);
        report.frontier_sizes.back() += 1;

        double d = max_dist(choi, target_choi);
        report.closest_distance = std::min(report.closest_distance, d);
        if (d <= tol)
          return finish_reached(static_cast<Index>(channels.size()) - 1, depth);
      }
    }
    report.depth_explored = depth;
    if (next.empty())
      break;
    frontier = std::move(next);
  }
  return report;
}

std::vector<std::pair<DensityMatrix, DensityMatrix>> sample_state_pairs(
    Index dim, Index count, std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  auto draw = [&]() {
    Index rank = 1 + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(dim)));
    ComplexMatrix g = random_gaussian_matrix(dim, rank, rng);
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(m, tol);
  };
  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs;
  pairs.reserve(static_cast<size_t>(count));
  for (Index k = 0; k < count; ++k) {
    DensityMatrix a = draw();
    DensityMatrix b = draw();
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

double dsc_sample(const ControlSet& controls, Index state_samples, Index max_depth,
                  double tol, std::uint64_t seed, const Tolerances& num_tol) {
  if (state_samples < 1)
    throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  auto pairs = sample_state_pairs(controls.dim(), state_samples, seed, num_tol);
  Index hits = 0;
  for (const auto& [rho1, rho2] : pairs)
    if (reach_state(rho1, rho2, controls, max_depth, tol, num_tol).reached)
      ++hits;
  return static_cast<double>(hits) / static_cast<double>(state_samples);
}

} // namespace kraus
