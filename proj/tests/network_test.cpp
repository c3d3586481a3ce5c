#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "multiflow/coefficients.hpp"
#include "multiflow/evaluate.hpp"
#include "multiflow/network.hpp"
#include "multiflow/perturb.hpp"
#include "multiflow/rational.hpp"
#include "multiflow/samples.hpp"

using multiflow::Arc;
using multiflow::CoefficientTuple;
using multiflow::Flow;
using multiflow::frac;
using multiflow::MultiFlow;
using multiflow::Network;
using multiflow::NetworkError;
using multiflow::PathSystem;
using multiflow::Rational;
using multiflow::Sample;

namespace {

// Four nodes s1, s2, m, r1 / r2 with a middle node every path crosses, so
// paths of the same receiver column share the arc into that receiver.
struct SharedColumnFixture {
  Network net;
  PathSystem paths;

  SharedColumnFixture() {
    net.k = 2;
    net.nodes = {"s1", "s2", "m", "r1", "r2"};
    net.arcs = {{0, 2}, {1, 2}, {2, 3}, {2, 4}};
    net.senders = {0, 1};
    net.receivers = {3, 4};
    paths = PathSystem(2);
    paths.path(0, 0) = {0, 2};
    paths.path(0, 1) = {0, 3};
    paths.path(1, 0) = {1, 2};
    paths.path(1, 1) = {1, 3};
  }
};

}  // namespace

TEST_CASE("the disjoint generator produces a valid k-pair network") {
  const auto gen = multiflow::generate_disjoint_network(2);
  CHECK(gen.net.is_valid());
  CHECK(gen.net.k == 2);
  CHECK(gen.net.nodes.size() == 8);  // 2 senders + 2 receivers + 4 relays
  CHECK(gen.net.arcs.size() == 8);   // two arcs per pair
  std::string why;
  CHECK(multiflow::validate_strongly_reachable(gen.net, gen.paths, &why));
  CHECK(why.empty());
  CHECK(gen.net.node_index("s1") == 0);
  CHECK(gen.net.node_index("absent") == -1);
  CHECK(gen.net.arc_str(0).find("->") != std::string::npos);
}

TEST_CASE("column-sharing path systems are rejected with a reason") {
  const SharedColumnFixture fx;
  std::string why;
  CHECK(!multiflow::validate_strongly_reachable(fx.net, fx.paths, &why));
  CHECK(why.find("receiver column 1") != std::string::npos);
  CHECK(why.find("shared") != std::string::npos);

  // A path that ends at the wrong node is reported as a path defect.
  auto broken = fx;
  broken.paths.path(0, 1) = {0, 2};  // ends at r1 instead of r2
  CHECK(!multiflow::validate_strongly_reachable(broken.net, broken.paths,
                                                &why));
  CHECK(why.find("path (1,2)") != std::string::npos);
}

TEST_CASE("the shared-arc generator routes exactly the sample's pairs") {
  const Sample diag = Sample::parse(3, "(1,1);(2,2);(3,3)");
  const auto gen = multiflow::generate_shared_arc_network(3, diag);
  CHECK(gen.net.is_valid());
  CHECK(multiflow::validate_strongly_reachable(gen.net, gen.paths));
  // The bottleneck is the first arc by construction.
  CHECK(multiflow::arc_sample(0, gen.paths) == diag);

  const Sample cross = Sample::parse(3, "(2,1);(1,2)");
  const auto gen2 = multiflow::generate_shared_arc_network(3, cross);
  CHECK(multiflow::validate_strongly_reachable(gen2.net, gen2.paths));
  CHECK(multiflow::arc_sample(0, gen2.paths) == cross);
}

TEST_CASE("elementary flows push one unit along one path") {
  const auto gen = multiflow::generate_disjoint_network(2);
  const Flow f = multiflow::elementary_flow(gen.net, gen.paths, 0, 1);
  CHECK(multiflow::excess(gen.net, f, gen.net.senders[0]) == Rational(-1));
  CHECK(multiflow::excess(gen.net, f, gen.net.receivers[1]) == Rational(1));
  const int relay = gen.net.arcs[gen.paths.path(0, 1)[0]].head;
  CHECK(multiflow::excess(gen.net, f, relay) == Rational(0));
  CHECK(multiflow::excess(gen.net, f, gen.net.receivers[0]) == Rational(0));
}

TEST_CASE("concatenation joins flows that meet at a node") {
  Network n;
  n.k = 1;
  n.nodes = {"A", "B", "C"};
  n.arcs = {{0, 1}, {1, 2}};
  n.senders = {0};
  n.receivers = {2};
  const Flow f{{Rational(1), Rational(0)}};
  const Flow g{{Rational(0), Rational(1)}};
  const Flow joined = multiflow::concatenate(n, f, g, 1);
  CHECK(joined.value == std::vector<Rational>{Rational(1), Rational(1)});
  const Flow half{{Rational(0), frac(1, 2)}};
  CHECK_THROWS_AS(multiflow::concatenate(n, f, half, 1), NetworkError);
}

TEST_CASE("assembly routes each coefficient along its pair's path") {
  const auto gen = multiflow::generate_disjoint_network(2);
  const CoefficientTuple c = multiflow::expand(multiflow::build_shf(2));
  const MultiFlow mf = multiflow::assemble(c, gen.net, gen.paths);
  REQUIRE(mf.k == 2);
  // In the disjoint network every arc belongs to exactly one path, so the
  // flow value on a path arc is exactly the pair's coefficient.
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int arc : gen.paths.path(i, j))
          CHECK(mf.flows[l].value[arc] == c.at(l, i, j));
  CHECK(mf.flows[0].value[gen.paths.path(0, 0)[0]] == frac(3, 4));
  CHECK(mf.flows[0].value[gen.paths.path(1, 1)[0]] == frac(-1, 4));
}

TEST_CASE("members of the coefficient space route one unit per commodity") {
  const auto gen = multiflow::generate_disjoint_network(3);
  const CoefficientTuple c = multiflow::expand(multiflow::build_shf(3));
  const MultiFlow mf = multiflow::assemble(c, gen.net, gen.paths);
  const auto report = multiflow::check_conservation_and_rate(mf, gen.net);
  CHECK(report.conserved());
  CHECK(report.rates ==
        std::vector<Rational>{Rational(1), Rational(1), Rational(1)});

  // Scaling by the routing rate scales every rate with it.
  const auto scaled =
      multiflow::assemble(multiflow::scale(c, frac(11, 12)), gen.net,
                          gen.paths);
  const auto scaled_report =
      multiflow::check_conservation_and_rate(scaled, gen.net);
  CHECK(scaled_report.conserved());
  for (const Rational& r : scaled_report.rates) CHECK(r == frac(11, 12));

  // Breaking a row sum surfaces as a conservation violation at that sender.
  CoefficientTuple bad = c;
  bad.at(0, 1, 2) += Rational(1);
  const auto bad_report = multiflow::check_conservation_and_rate(
      multiflow::assemble(bad, gen.net, gen.paths), gen.net);
  CHECK(!bad_report.conserved());
  REQUIRE(!bad_report.violations.empty());
  CHECK(bad_report.violations[0].commodity == 0);
  CHECK(bad_report.violations[0].node == gen.net.senders[1]);
  CHECK(bad_report.violations[0].excess == Rational(-1));
}

TEST_CASE("arc samples collect the pairs whose paths use the arc") {
  const auto gen = multiflow::generate_disjoint_network(3);
  const int up_arc = gen.paths.path(1, 2)[0];
  CHECK(multiflow::arc_sample(up_arc, gen.paths) == Sample::parse(3, "(2,3)"));

  auto extra = gen;
  extra.net.arcs.push_back(Arc{0, 1});  // no path uses it
  CHECK_THROWS_AS(multiflow::arc_sample(
                      static_cast<int>(extra.net.arcs.size()) - 1,
                      extra.paths),
                  NetworkError);

  const SharedColumnFixture fx;
  CHECK_THROWS_AS(multiflow::arc_sample(2, fx.paths), NetworkError);
}

TEST_CASE("the scaled optimum saturates the bottleneck at exactly one") {
  const Sample s = Sample::parse(3, "(1,2);(2,1)");
  const auto gen = multiflow::generate_shared_arc_network(3, s);
  const CoefficientTuple c = multiflow::expand(multiflow::build_cdd(3).cdd);

  const MultiFlow raw = multiflow::assemble(c, gen.net, gen.paths);
  const auto infeasible = multiflow::check_feasibility(raw, gen.net);
  CHECK(!infeasible.feasible);
  CHECK(infeasible.worst_arc == 0);
  CHECK(infeasible.worst_load == frac(12, 11));
  CHECK(multiflow::arc_load(raw, 0) == frac(12, 11));

  const MultiFlow scaled = multiflow::assemble(
      multiflow::scale(c, multiflow::routing_rate(3)), gen.net, gen.paths);
  const auto feasible = multiflow::check_feasibility(scaled, gen.net);
  CHECK(feasible.feasible);
  CHECK(feasible.worst_arc == 0);
  CHECK(feasible.worst_load == Rational(1));
  const auto rates = multiflow::check_conservation_and_rate(scaled, gen.net);
  CHECK(rates.conserved());
  for (const Rational& r : rates.rates) CHECK(r == frac(11, 12));
}

TEST_CASE("arc loads equal the sample evaluation of the arc's pairs") {
  const Sample s = Sample::parse(3, "(1,2);(2,1)");
  const auto gen = multiflow::generate_shared_arc_network(3, s);
  const CoefficientTuple c = multiflow::expand(multiflow::build_cdd(3).cdd);
  const MultiFlow mf = multiflow::assemble(c, gen.net, gen.paths);
  for (int a = 0; a < static_cast<int>(gen.net.arcs.size()); ++a)
    CHECK(multiflow::arc_load(mf, a) ==
          multiflow::g_sample(c, multiflow::arc_sample(a, gen.paths)));
}

TEST_CASE("the zero multi-flow is feasible") {
  const auto gen = multiflow::generate_disjoint_network(2);
  MultiFlow zero;
  zero.k = 2;
  zero.flows.assign(2, Flow{std::vector<Rational>(gen.net.arcs.size())});
  const auto report = multiflow::check_feasibility(zero, gen.net);
  CHECK(report.feasible);
  CHECK(report.worst_load == Rational(0));
  const auto rates = multiflow::check_conservation_and_rate(zero, gen.net);
  CHECK(rates.conserved());
  CHECK(rates.rates == std::vector<Rational>{Rational(0), Rational(0)});
}

TEST_CASE("guaranteed routing rates for k = 1..10") {
  const std::vector<Rational> expected = {
      Rational(1),  Rational(1),  frac(11, 12),  frac(11, 12), frac(9, 10),
      frac(9, 10),  frac(9, 10),  frac(67, 75),  frac(206, 231),
      frac(25, 28)};
  for (int k = 1; k <= 10; ++k)
    CHECK(multiflow::routing_rate(k) == expected[k - 1]);
}

TEST_CASE("assembly is linear in the coefficient tuple") {
  const Sample s = Sample::parse(3, "(1,1);(2,2);(3,3)");
  const auto gen = multiflow::generate_shared_arc_network(3, s);
  const CoefficientTuple c = multiflow::expand(multiflow::build_cdd(3).cdd);
  const Rational lambda = frac(11, 12);
  const MultiFlow base = multiflow::assemble(c, gen.net, gen.paths);
  const MultiFlow scaled =
      multiflow::assemble(multiflow::scale(c, lambda), gen.net, gen.paths);
  for (int l = 0; l < 3; ++l)
    for (std::size_t a = 0; a < gen.net.arcs.size(); ++a)
      CHECK(scaled.flows[l].value[a] == lambda * base.flows[l].value[a]);
}

TEST_CASE("membership is equivalent to unit rates with conservation") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> num(-2, 2);
  for (int k = 2; k <= 3; ++k) {
    const auto gen = multiflow::generate_disjoint_network(k);
    const auto basis =
        multiflow::kernel_basis(multiflow::membership_constraint_matrix(k));
    for (int trial = 0; trial < 10; ++trial) {
      CoefficientTuple c = multiflow::expand(multiflow::build_shf(k));
      if (trial % 2 == 0) {
        // Stay inside the membership space.
        for (const auto& v : basis) {
          const Rational w = frac(num(rng), 3);
          for (std::size_t e = 0; e < v.size(); ++e) c.entries[e] += w * v[e];
        }
      } else {
        // Nudge one arbitrary entry; usually leaves the space.
        c.at(rng() % k, rng() % k, rng() % k) += frac(num(rng), 5);
      }
      const bool member = multiflow::validate_membership(c);
      const auto report = multiflow::check_conservation_and_rate(
          multiflow::assemble(c, gen.net, gen.paths), gen.net);
      bool unit_rates = report.conserved();
      for (const Rational& r : report.rates)
        if (!(r == Rational(1))) unit_rates = false;
      CHECK(member == unit_rates);
    }
  }
}
