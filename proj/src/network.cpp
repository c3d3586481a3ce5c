#include "multiflow/network.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "multiflow/perturb.hpp"

namespace multiflow {

int Network::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == name) return static_cast<int>(i);
  return -1;
}

bool Network::is_valid() const {
  if (k < 1) return false;
  if (senders.size() != static_cast<std::size_t>(k) ||
      receivers.size() != static_cast<std::size_t>(k))
    return false;
  const int n = static_cast<int>(nodes.size());
  const auto in_range = [n](int v) { return v >= 0 && v < n; };
  for (int v : senders)
    if (!in_range(v)) return false;
  for (int v : receivers)
    if (!in_range(v)) return false;
  for (const Arc& a : arcs)
    if (!in_range(a.tail) || !in_range(a.head)) return false;
  return true;
}

std::string Network::arc_str(int arc) const {
  if (arc < 0 || arc >= static_cast<int>(arcs.size())) return "<no arc>";
  return nodes[arcs[arc].tail] + "->" + nodes[arcs[arc].head];
}

Rational excess(const Network& n, const Flow& f, int node) {
  if (f.value.size() != n.arcs.size())
    throw NetworkError("flow has " + std::to_string(f.value.size()) +
                       " arc values for a network with " +
                       std::to_string(n.arcs.size()) + " arcs");
  Rational acc;
  for (std::size_t a = 0; a < n.arcs.size(); ++a) {
    if (f.value[a].is_zero()) continue;
    if (n.arcs[a].head == node) acc += f.value[a];
    if (n.arcs[a].tail == node) acc -= f.value[a];
  }
  return acc;
}

namespace {

// A path is a chained arc walk from `from` to `to`; empty only when the two
// endpoints coincide.
bool path_ok(const Network& n, const std::vector<int>& path, int from, int to,
             std::string* why) {
  if (path.empty()) {
    if (from == to) return true;
    if (why) *why = "empty path between distinct endpoints";
    return false;
  }
  int at = from;
  for (int a : path) {
    if (a < 0 || a >= static_cast<int>(n.arcs.size())) {
      if (why) *why = "arc index " + std::to_string(a) + " out of range";
      return false;
    }
    if (n.arcs[a].tail != at) {
      if (why)
        *why = "arc " + n.arc_str(a) + " does not continue from " +
               n.nodes[at];
      return false;
    }
    at = n.arcs[a].head;
  }
  if (at != to) {
    if (why) *why = "path ends at " + n.nodes[at] + ", not " + n.nodes[to];
    return false;
  }
  return true;
}

}  // namespace

bool validate_strongly_reachable(const Network& n, const PathSystem& p,
                                 std::string* violation) {
  if (!n.is_valid()) {
    if (violation) *violation = "network structure is invalid";
    return false;
  }
  if (p.k != n.k ||
      p.paths.size() != static_cast<std::size_t>(n.k) * n.k) {
    if (violation) *violation = "path system size does not match k";
    return false;
  }
  for (int i = 0; i < n.k; ++i)
    for (int j = 0; j < n.k; ++j) {
      std::string why;
      if (!path_ok(n, p.path(i, j), n.senders[i], n.receivers[j], &why)) {
        if (violation)
          *violation = "path (" + std::to_string(i + 1) + "," +
                       std::to_string(j + 1) + "): " + why;
        return false;
      }
    }
  // Pairwise arc-disjointness of the k paths into each receiver column.
  for (int j = 0; j < n.k; ++j) {
    std::map<int, int> user;  // arc -> first sender using it
    for (int i = 0; i < n.k; ++i)
      for (int a : p.path(i, j)) {
        const auto [it, fresh] = user.emplace(a, i);
        if (!fresh && it->second != i) {
          if (violation)
            *violation = "receiver column " + std::to_string(j + 1) +
                         ": arc " + n.arc_str(a) + " shared by senders " +
                         std::to_string(it->second + 1) + " and " +
                         std::to_string(i + 1);
          return false;
        }
      }
  }
  return true;
}

Flow elementary_flow(const Network& n, const PathSystem& p, int i, int j) {
  if (i < 0 || i >= p.k || j < 0 || j >= p.k)
    throw NetworkError("pair index out of range");
  Flow f;
  f.value.assign(n.arcs.size(), Rational(0));
  for (int a : p.path(i, j)) f.value[a] += Rational(1);
  return f;
}

Flow concatenate(const Network& n, const Flow& f, const Flow& g, int m) {
  const Rational in = excess(n, f, m);
  const Rational out = excess(n, g, m);
  if (in.is_zero() || in != -out)
    throw NetworkError(
        "concatenation endpoint mismatch: the excesses at the middle node "
        "do not cancel");
  Flow sum;
  sum.value.resize(f.value.size());
  for (std::size_t a = 0; a < f.value.size(); ++a)
    sum.value[a] = f.value[a] + g.value[a];
  return sum;
}

MultiFlow assemble(const CoefficientTuple& c, const Network& n,
                   const PathSystem& p) {
  if (c.k != n.k || p.k != n.k)
    throw NetworkError("coefficient tuple, network and path system disagree "
                       "on k");
  MultiFlow mf;
  mf.k = n.k;
  mf.flows.assign(static_cast<std::size_t>(n.k), Flow{});
  for (Flow& f : mf.flows) f.value.assign(n.arcs.size(), Rational(0));
  for (int l = 0; l < n.k; ++l)
    for (int i = 0; i < n.k; ++i)
      for (int j = 0; j < n.k; ++j) {
        const Rational& w = c.at(l, i, j);
        if (w.is_zero()) continue;
        for (int a : p.path(i, j)) mf.flows[l].value[a] += w;
      }
  return mf;
}

RateReport check_conservation_and_rate(const MultiFlow& mf, const Network& n) {
  if (mf.k != n.k || mf.flows.size() != static_cast<std::size_t>(n.k))
    throw NetworkError("multi-flow does not match the network's k");
  RateReport report;
  report.rates.reserve(static_cast<std::size_t>(n.k));
  for (int l = 0; l < n.k; ++l) {
    for (int v = 0; v < static_cast<int>(n.nodes.size()); ++v) {
      if (v == n.senders[l] || v == n.receivers[l]) continue;
      Rational e = excess(n, mf.flows[l], v);
      if (!e.is_zero())
        report.violations.push_back(
            ConservationViolation{l, v, std::move(e)});
    }
    report.rates.push_back(excess(n, mf.flows[l], n.receivers[l]));
  }
  return report;
}

Sample arc_sample(int arc, const PathSystem& p) {
  Sample s;
  s.k = p.k;
  for (int i = 0; i < p.k; ++i)
    for (int j = 0; j < p.k; ++j)
      for (int a : p.path(i, j))
        if (a == arc) {
          s.elements.emplace_back(i, j);
          break;
        }
  if (s.elements.empty())
    throw NetworkError("no path uses arc " + std::to_string(arc));
  std::sort(s.elements.begin(), s.elements.end(),
            [](const auto& lhs, const auto& rhs) {
              return lhs.second < rhs.second;
            });
  for (std::size_t t = 1; t < s.elements.size(); ++t)
    if (s.elements[t].second == s.elements[t - 1].second)
      throw NetworkError(
          "arc " + std::to_string(arc) +
          " carries two paths of the same receiver column; the path system "
          "is not strongly reachable");
  return s;
}

Rational arc_load(const MultiFlow& mf, int arc) {
  Rational load;
  for (const Flow& f : mf.flows) load += f.value[arc].abs();
  return load;
}

FeasibilityReport check_feasibility(const MultiFlow& mf, const Network& n) {
  if (mf.k != n.k || mf.flows.size() != static_cast<std::size_t>(n.k))
    throw NetworkError("multi-flow does not match the network's k");
  FeasibilityReport report;
  report.feasible = true;
  for (int a = 0; a < static_cast<int>(n.arcs.size()); ++a) {
    Rational load = arc_load(mf, a);
    if (report.worst_arc < 0 || load > report.worst_load) {
      report.worst_arc = a;
      report.worst_load = std::move(load);
    }
  }
  if (report.worst_arc >= 0 && report.worst_load > Rational(1))
    report.feasible = false;
  return report;
}

Rational routing_rate(int k) { return build_cdd(k).optimum.reciprocal(); }

GeneratedNetwork generate_disjoint_network(int k) {
  if (k < 1) throw NetworkError("k must be at least 1");
  GeneratedNetwork g;
  Network& n = g.net;
  n.k = k;
  for (int i = 0; i < k; ++i) n.nodes.push_back("s" + std::to_string(i + 1));
  for (int j = 0; j < k; ++j) n.nodes.push_back("r" + std::to_string(j + 1));
  n.senders.resize(k);
  n.receivers.resize(k);
  for (int i = 0; i < k; ++i) n.senders[i] = i;
  for (int j = 0; j < k; ++j) n.receivers[j] = k + j;

  g.paths = PathSystem(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const int relay = static_cast<int>(n.nodes.size());
      n.nodes.push_back("v" + std::to_string(i + 1) + "_" +
                        std::to_string(j + 1));
      const int up = static_cast<int>(n.arcs.size());
      n.arcs.push_back(Arc{n.senders[i], relay});
      const int down = static_cast<int>(n.arcs.size());
      n.arcs.push_back(Arc{relay, n.receivers[j]});
      g.paths.path(i, j) = {up, down};
    }
  return g;
}

GeneratedNetwork generate_shared_arc_network(int k, const Sample& s) {
  if (k < 1) throw NetworkError("k must be at least 1");
  if (s.k != k || !s.is_valid())
    throw NetworkError("sample does not fit the requested k");

  GeneratedNetwork g;
  Network& n = g.net;
  n.k = k;
  for (int i = 0; i < k; ++i) n.nodes.push_back("s" + std::to_string(i + 1));
  for (int j = 0; j < k; ++j) n.nodes.push_back("r" + std::to_string(j + 1));
  n.senders.resize(k);
  n.receivers.resize(k);
  for (int i = 0; i < k; ++i) n.senders[i] = i;
  for (int j = 0; j < k; ++j) n.receivers[j] = k + j;
  const int u = static_cast<int>(n.nodes.size());
  n.nodes.push_back("u");
  const int w = static_cast<int>(n.nodes.size());
  n.nodes.push_back("w");

  const int bottleneck = static_cast<int>(n.arcs.size());
  n.arcs.push_back(Arc{u, w});

  // Shared approach arcs: one per distinct sender row of the sample (two
  // elements with the same row enter through the same arc, which is fine
  // because their receiver columns differ), one exit arc per column.
  std::map<int, int> into_u;   // row i -> arc s_i -> u
  std::map<int, int> out_of_w; // col j -> arc w -> r_j
  std::set<std::pair<int, int>> in_sample(s.elements.begin(),
                                          s.elements.end());
  for (const auto& [i, j] : s.elements) {
    if (!into_u.count(i)) {
      into_u[i] = static_cast<int>(n.arcs.size());
      n.arcs.push_back(Arc{n.senders[i], u});
    }
    if (!out_of_w.count(j)) {
      out_of_w[j] = static_cast<int>(n.arcs.size());
      n.arcs.push_back(Arc{w, n.receivers[j]});
    }
  }

  g.paths = PathSystem(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (in_sample.count({i, j})) {
        g.paths.path(i, j) = {into_u.at(i), bottleneck, out_of_w.at(j)};
        continue;
      }
      const int relay = static_cast<int>(n.nodes.size());
      n.nodes.push_back("v" + std::to_string(i + 1) + "_" +
                        std::to_string(j + 1));
      const int up = static_cast<int>(n.arcs.size());
      n.arcs.push_back(Arc{n.senders[i], relay});
      const int down = static_cast<int>(n.arcs.size());
      n.arcs.push_back(Arc{relay, n.receivers[j]});
      g.paths.path(i, j) = {up, down};
    }
  std::string why;
  if (!validate_strongly_reachable(n, g.paths, &why))
    throw NetworkError("generated network failed validation: " + why);
  return g;
}

}  // namespace multiflow
