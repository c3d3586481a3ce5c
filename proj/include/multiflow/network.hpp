// Concrete k-pair networks with unit arc capacities, path systems,
// elementary flows, assembly of multi-flows from coefficient tuples, and
// conservation / rate / feasibility verification.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "multiflow/coefficients.hpp"
#include "multiflow/rational.hpp"
#include "multiflow/samples.hpp"

namespace multiflow {

// Structural problem with a network, path system or flow query.
class NetworkError : public std::runtime_error {
 public:
  explicit NetworkError(const std::string& what) : std::runtime_error(what) {}
};

// One directed unit-capacity arc between node indices.
struct Arc {
  int tail = 0;
  int head = 0;
  bool operator==(const Arc&) const = default;
};

// Directed k-pair network: named nodes, unit-capacity arcs, and the sender
// and receiver node of each commodity.
struct Network {
  int k = 0;
  std::vector<std::string> nodes;
  std::vector<Arc> arcs;
  std::vector<int> senders;    // node index of s_1..s_k
  std::vector<int> receivers;  // node index of r_1..r_k

  // Index of a named node, -1 when absent.
  int node_index(const std::string& name) const;
  // Endpoint indices in range, k >= 1, exactly k senders and receivers.
  bool is_valid() const;
  std::string arc_str(int arc) const;  // "tail->head" for reports
};

// One directed s_i -> r_j path per pair, stored as arc-index sequences.
struct PathSystem {
  int k = 0;
  std::vector<std::vector<int>> paths;  // slot i*k + j holds P_{i,j}

  PathSystem() = default;
  explicit PathSystem(int k_)
      : k(k_), paths(static_cast<std::size_t>(k_) * k_) {}

  std::vector<int>& path(int i, int j) {
    return paths[static_cast<std::size_t>(i) * k + j];
  }
  const std::vector<int>& path(int i, int j) const {
    return paths[static_cast<std::size_t>(i) * k + j];
  }
};

// Signed rational flow: one value per arc.
struct Flow {
  std::vector<Rational> value;
};

// k flows, one per commodity.
struct MultiFlow {
  int k = 0;
  std::vector<Flow> flows;
};

// Inflow minus outflow of a flow at one node (receivers end up positive).
Rational excess(const Network& n, const Flow& f, int node);

// All k^2 paths are valid directed s_i -> r_j walks over existing arcs, and
// for each fixed receiver column j the k paths into r_j are pairwise
// arc-disjoint. On failure, writes the first violated (column, arc) pair
// into *violation when given.
bool validate_strongly_reachable(const Network& n, const PathSystem& p,
                                 std::string* violation = nullptr);

// Unit indicator flow along P_{i,j} (0-based i, j).
Flow elementary_flow(const Network& n, const PathSystem& p, int i, int j);

// Arc-wise sum of a flow ending at node m and a flow starting at m, viewed
// as one flow; the two excesses at m must cancel exactly.
Flow concatenate(const Network& n, const Flow& f, const Flow& g, int m);

// The multi-flow whose commodity l routes c^(l)_{i,j} along every P_{i,j}.
MultiFlow assemble(const CoefficientTuple& c, const Network& n,
                   const PathSystem& p);

// One conservation failure: nonzero excess away from the commodity's
// endpoints.
struct ConservationViolation {
  int commodity = 0;  // 0-based
  int node = 0;
  Rational excess;
};

// Conservation check and per-commodity rates (signed excess at the
// receiver, the positive-at-receiver convention).
struct RateReport {
  std::vector<Rational> rates;
  std::vector<ConservationViolation> violations;
  bool conserved() const { return violations.empty(); }
};

RateReport check_conservation_and_rate(const MultiFlow& mf, const Network& n);

// The sample of pairs whose paths traverse the arc. Throws NetworkError when
// no path uses the arc, or when two paths of the same receiver column do
// (which a strongly reachable system rules out).
Sample arc_sample(int arc, const PathSystem& p);

// Total load sum_l |f_l(a)| on one arc.
Rational arc_load(const MultiFlow& mf, int arc);

// Every arc load <= 1; reports the worst arc either way.
struct FeasibilityReport {
  bool feasible = false;
  int worst_arc = -1;
  Rational worst_load;
};

FeasibilityReport check_feasibility(const MultiFlow& mf, const Network& n);

// Guaranteed routing rate 1 / optimum for 1 <= k <= 10.
Rational routing_rate(int k);

// A generated fixture: network plus its path system.
struct GeneratedNetwork {
  Network net;
  PathSystem paths;
};

// One dedicated two-arc path per pair through a private relay node.
GeneratedNetwork generate_disjoint_network(int k);

// One bottleneck arc traversed by exactly the paths indexed by s (routed
// through a shared relay pair); every other pair keeps a dedicated path.
GeneratedNetwork generate_shared_arc_network(int k, const Sample& s);

}  // namespace multiflow
