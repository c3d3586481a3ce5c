#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "multiflow/evaluate.hpp"
#include "multiflow/perturb.hpp"
#include "multiflow/rational.hpp"
#include "multiflow/samples.hpp"

using multiflow::FixedDirection;
using multiflow::FixedPointParams;
using multiflow::frac;
using multiflow::PerturbationClass;
using multiflow::PerturbResult;
using multiflow::Rational;
using multiflow::Sample;
using multiflow::TableRow;

namespace {

struct RowFacts {
  Rational value;
  Rational slope;
  PerturbationClass cls;
};

std::map<std::string, RowFacts> row_map(const std::vector<TableRow>& rows) {
  std::map<std::string, RowFacts> m;
  for (const TableRow& r : rows) {
    REQUIRE(!m.count(r.label));
    m[r.label] = RowFacts{r.value, r.slope, r.cls};
  }
  return m;
}

std::string type_label(int k, const std::string& sample_text) {
  return multiflow::type_of(Sample::parse(k, sample_text)).str();
}

}  // namespace

TEST_CASE("strong homogeneous flow parameters") {
  const FixedPointParams p3 = multiflow::build_shf(3);
  CHECK(p3.x == frac(5, 9));
  CHECK(p3.y == frac(-1, 9));
  CHECK(p3.a == frac(2, 9));
  CHECK(p3.b == frac(-1, 9));

  const FixedPointParams p1 = multiflow::build_shf(1);
  CHECK(p1.x == Rational(1));

  for (int k = 1; k <= 12; ++k)
    CHECK(multiflow::build_shf(k).satisfies_invariants());
}

TEST_CASE("maximizing sizes per residue") {
  using sizes = std::vector<int>;
  CHECK(multiflow::maximizing_d(1) == sizes{1});
  CHECK(multiflow::maximizing_d(2) == sizes{1, 2});
  CHECK(multiflow::maximizing_d(3) == sizes{2});
  CHECK(multiflow::maximizing_d(4) == sizes{3});
  CHECK(multiflow::maximizing_d(5) == sizes{4});
  CHECK(multiflow::maximizing_d(6) == sizes{4, 5});
  CHECK(multiflow::maximizing_d(7) == sizes{5});
  CHECK(multiflow::maximizing_d(8) == sizes{6});
  CHECK(multiflow::maximizing_d(9) == sizes{7});
  CHECK(multiflow::maximizing_d(10) == sizes{7, 8});
  CHECK(multiflow::maximizing_d(12) == sizes{9});
  CHECK(multiflow::maximizing_d(41) == sizes{31});
}

TEST_CASE("perturbation directions") {
  const auto expect = [](int k, const Rational& xbar, const Rational& ybar,
                         const Rational& abar, const Rational& bbar) {
    const FixedDirection d = multiflow::delta_star(k);
    CHECK(d.xbar == xbar);
    CHECK(d.ybar == ybar);
    CHECK(d.abar == abar);
    CHECK(d.bbar == bbar);
    CHECK(d.satisfies_invariants());
  };
  expect(3, Rational(-2), Rational(-5), Rational(1), Rational(4));
  expect(4, Rational(3), Rational(-5), Rational(-1), Rational(3));
  expect(5, Rational(4), frac(-17, 7), Rational(-1), frac(8, 7));
  expect(7, Rational(6), frac(-39, 11), Rational(-1), frac(10, 11));
  expect(8, Rational(7), frac(-13, 5), Rational(-1), frac(3, 5));
  expect(9, Rational(8), frac(-67, 31), Rational(-1), frac(14, 31));
  CHECK_THROWS_AS(multiflow::delta_star(2), multiflow::NoValidDirection);
  CHECK_THROWS_AS(multiflow::delta_star(6), multiflow::NoValidDirection);
  CHECK_THROWS_AS(multiflow::delta_star(10), multiflow::NoValidDirection);
}

TEST_CASE("class table for k=3") {
  const auto rows = multiflow::table_rows(3);
  CHECK(rows.size() == 9);
  const auto m = row_map(rows);
  const auto row = [&](const std::string& label) {
    REQUIRE(m.count(label));
    return m.at(label);
  };
  CHECK(row("S_3(1,1,1)").value == frac(7, 9));
  CHECK(row("S_3(1,1,1)").slope == Rational(8));
  CHECK(row("S_3(1,2,0)").value == frac(5, 9));
  CHECK(row("S_3(1,2,0)").slope == Rational(-2));
  CHECK(row("S_3(2,2)").value == frac(10, 9));
  CHECK(row("S_3(2,2)").slope == Rational(-4));
  CHECK(row("S_3(2,3,0)").value == frac(2, 3));
  CHECK(row("S_3(2,3,0)").slope == Rational(12));
  CHECK(row("S_3(2,3,1)").value == frac(2, 3));
  CHECK(row("S_3(2,3,1)").slope == Rational(-6));
  CHECK(row("S_3(3,3,0)").value == Rational(1));
  CHECK(row("S_3(3,3,0)").slope == Rational(18));
  CHECK(row("S_3(3,3,1)").value == Rational(1));
  CHECK(row("S_3(3,3,1)").slope == Rational(0));
  CHECK(row("S_3(3,3,3)").value == Rational(1));
  CHECK(row("S_3(3,3,3)").slope == Rational(-36));
  CHECK(row("S_3(3,3,2)").value == Rational(1));
  CHECK(row("S_3(3,3,2)").slope == Rational(0));
  CHECK(row("S_3(3,3,2)").cls == PerturbationClass::II);
  for (const auto& [label, facts] : m)
    if (label != "S_3(3,3,2)") CHECK(facts.cls == PerturbationClass::I);
}

TEST_CASE("class table for k=4") {
  const auto rows = multiflow::table_rows(4);
  CHECK(rows.size() == 19);
  const auto m = row_map(rows);
  const auto check = [&](const std::string& label, const Rational& value,
                         const Rational& slope, PerturbationClass cls) {
    REQUIRE(m.count(label));
    CHECK(m.at(label).value == value);
    CHECK(m.at(label).slope == slope);
    CHECK(m.at(label).cls == cls);
  };
  const auto I = PerturbationClass::I;
  const auto II = PerturbationClass::II;
  check("S_4(1,1,1)", frac(5, 8), Rational(18), I);
  check("S_4(1,2,0)", frac(1, 2), Rational(-8), I);
  check("S_4(2,2,0)", Rational(1), Rational(-16), I);
  check("S_4(2,2,1)", Rational(1), Rational(0), I);
  check("S_4(2,2,2)", Rational(1), Rational(16), I);
  check("S_4(2,3)", frac(3, 4), Rational(-4), I);
  check("S_4(2,4,0)", frac(1, 2), Rational(8), I);
  check("S_4(3,3)", frac(9, 8), Rational(-6), I);
  check("S_4(3,4,0)", frac(3, 4), Rational(12), I);
  check("S_4(3,4,1)", frac(3, 4), Rational(-4), I);
  check("S_4(3,4,2)", frac(3, 4), Rational(-20), I);
  check("S_4(4,4,0)", Rational(1), Rational(16), I);
  check("S_4(4,4,1)", Rational(1), Rational(0), I);
  check("S_4(4,4,4)", Rational(1), Rational(-48), I);
  check("S_4(4,4,3)", Rational(1), Rational(0), II);
  // The (4,4,2) class splits by type: delta = 0 falls in class I, the
  // delta = 2 types in class II.
  check(type_label(4, "(1,1);(2,2);(4,3);(3,4)"), Rational(1), Rational(-16),
        I);
  check(type_label(4, "(1,1);(2,2);(1,3);(3,4)"), Rational(1), Rational(0),
        II);
  check(type_label(4, "(1,1);(2,2);(1,3);(2,4)"), Rational(1), Rational(16),
        II);
  check(type_label(4, "(1,1);(2,2);(1,3);(1,4)"), Rational(1), Rational(16),
        II);
}

TEST_CASE("slopes agree with the linearized formula on every class") {
  for (int k : {3, 4}) {
    const FixedDirection d = multiflow::delta_star(k);
    for (const multiflow::ClassInfo& info : multiflow::class_infos(k)) {
      multiflow::SampleStats st;
      st.k = k;
      st.alpha = info.key.alpha;
      st.beta = info.key.beta;
      st.gamma = info.key.gamma;
      st.delta = info.key.delta;
      CHECK(multiflow::h_value(st, info.cls, d, Rational(1)) == info.slope);
    }
  }
}

TEST_CASE("perturbation sizes") {
  CHECK(multiflow::epsilon_star(3) == frac(1, 198));
  CHECK(multiflow::epsilon_star(4) == frac(1, 176));
  CHECK(multiflow::epsilon_star(5) == frac(7, 2700));
  CHECK(multiflow::epsilon_star(7) == frac(11, 5292));
  CHECK(multiflow::epsilon_star(8) == frac(5, 4288));
  CHECK(multiflow::epsilon_star(9) == frac(31, 66744));
}

TEST_CASE("validity bounds by exhaustive sign scan") {
  CHECK(multiflow::max_valid_epsilon(3) == frac(1, 36));
  CHECK(multiflow::max_valid_epsilon(4) == frac(1, 176));
  CHECK(multiflow::max_valid_epsilon(5) == frac(7, 1450));
  // The k=3 and k=5 crossings happen strictly inside the valid range; at
  // k=4 the crossing exactly exhausts it.
  CHECK(multiflow::epsilon_star(3) < multiflow::max_valid_epsilon(3));
  CHECK(multiflow::epsilon_star(4) == multiflow::max_valid_epsilon(4));
  CHECK(multiflow::epsilon_star(5) < multiflow::max_valid_epsilon(5));
}

TEST_CASE("perturbed points and optima for every supported k") {
  const auto expect_point = [](int k, const Rational& x, const Rational& a,
                               const Rational& b, const Rational& y) {
    const PerturbResult r = multiflow::build_cdd(k);
    CHECK(!r.shf_optimal);
    CHECK(r.cdd.x == x);
    CHECK(r.cdd.a == a);
    CHECK(r.cdd.b == b);
    CHECK(r.cdd.y == y);
    CHECK(r.cdd.satisfies_invariants());
  };
  expect_point(3, frac(6, 11), frac(5, 22), frac(-1, 11), frac(-3, 22));
  expect_point(4, frac(5, 11), frac(2, 11), frac(-1, 22), frac(-1, 11));
  expect_point(5, frac(40, 108), frac(17, 108), frac(-4, 108), frac(-5, 108));
  expect_point(7, frac(30, 108), frac(13, 108), frac(-2, 108), frac(-3, 108));
  expect_point(8, frac(65, 268), frac(29, 268), frac(-4, 268), frac(-5, 268));
  expect_point(9, frac(176, 824), frac(81, 824), frac(-10, 824),
               frac(-11, 824));

  const std::vector<Rational> optima = {
      Rational(1),  Rational(1),  frac(12, 11), frac(12, 11), frac(10, 9),
      frac(10, 9),  frac(10, 9),  frac(75, 67), frac(231, 206), frac(28, 25)};
  for (int k = 1; k <= 10; ++k) {
    const PerturbResult r = multiflow::build_cdd(k);
    CHECK(r.optimum == optima[k - 1]);
    CHECK(r.report.value == r.optimum);
    if (k == 1 || k == 2 || k == 6 || k == 10) {
      CHECK(r.shf_optimal);
      CHECK(r.epsilon_star == Rational(0));
      const FixedPointParams shf = multiflow::build_shf(k);
      CHECK(r.cdd.x == shf.x);
      CHECK(r.cdd.a == shf.a);
    }
  }
  CHECK_THROWS_AS(multiflow::build_cdd(0), multiflow::UnsupportedK);
  CHECK_THROWS_AS(multiflow::build_cdd(11), multiflow::UnsupportedK);
}

TEST_CASE("maximizing sets of the perturbed points") {
  using labels = std::vector<std::string>;
  CHECK(multiflow::build_cdd(3).max_set == labels{"S_3(2,2)", "S_3(3,3,0)"});
  CHECK(multiflow::build_cdd(4).max_set ==
        labels{"S_4(2,2,2)", "S_4(3,3)", "S_4(4,4,0)", "S_4(4,4,2,2)"});
  CHECK(multiflow::build_cdd(5).max_set == labels{"S_5(3,3,3)", "S_5(4,4)"});
  CHECK(multiflow::build_cdd(6).max_set == labels{"S_6(4,4)", "S_6(5,5)"});
  CHECK(multiflow::build_cdd(7).max_set ==
        labels{"S_7(4,4,4)", "S_7(5,5)", "S_7(6,6,0)"});
  CHECK(multiflow::build_cdd(8).max_set == labels{"S_8(5,5,5)", "S_8(6,6)"});
  CHECK(multiflow::build_cdd(9).max_set == labels{"S_9(6,6,6)", "S_9(7,7)"});
  CHECK(multiflow::build_cdd(10).max_set ==
        labels{"S_10(7,7)", "S_10(8,8)"});
}

TEST_CASE("the perturbed value drops from the shf value at the stated rate") {
  for (int k : {3, 4, 5, 7, 8, 9}) {
    const PerturbResult r = multiflow::build_cdd(k);
    const Rational shf_value =
        multiflow::shf_value_closed(k, multiflow::maximizing_d(k).front(),
                                    multiflow::maximizing_d(k).front());
    // The maximum follows the slowest-decreasing maximizing class.
    Rational slope;
    bool found = false;
    for (const multiflow::ClassInfo& info : multiflow::class_infos(k)) {
      if (info.value != shf_value) continue;
      if (!found || info.slope > slope) slope = info.slope;
      found = true;
    }
    REQUIRE(found);
    CHECK(slope < Rational(0));
    CHECK(r.optimum == shf_value + r.epsilon_star * slope);
  }
}
