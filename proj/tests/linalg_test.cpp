#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <vector>

#include "multiflow/linalg.hpp"
#include "multiflow/rational.hpp"

using multiflow::frac;
using multiflow::LinearInequality;
using multiflow::Rational;
using multiflow::RationalMatrix;

namespace {

RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(0, rows.empty() ? 0 : rows.front().size());
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

TEST_CASE("rank and rref on small matrices") {
  RationalMatrix m = from_rows({{Rational(1), Rational(2), Rational(3)},
                                {Rational(2), Rational(4), Rational(6)},
                                {Rational(0), Rational(1), Rational(1)}});
  CHECK(multiflow::rank(m) == 2);
  CHECK(multiflow::rank(RationalMatrix::identity(4)) == 4);
  RationalMatrix z(3, 3);
  CHECK(multiflow::rank(z) == 0);
}

TEST_CASE("kernel basis spans the null space exactly") {
  RationalMatrix m = from_rows({{Rational(1), Rational(1), Rational(0)},
                                {Rational(0), Rational(1), Rational(1)}});
  const auto basis = multiflow::kernel_basis(m);
  REQUIRE(basis.size() == 1);
  for (std::size_t r = 0; r < m.rows; ++r) {
    std::vector<Rational> row(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) row[c] = m.at(r, c);
    CHECK(dot(row, basis[0]) == Rational(0));
  }
  CHECK(multiflow::kernel_basis(RationalMatrix::identity(3)).empty());
}

TEST_CASE("row-space membership") {
  RationalMatrix m = from_rows({{Rational(1), Rational(0), Rational(1)},
                                {Rational(0), Rational(1), Rational(1)}});
  CHECK(multiflow::in_row_space({Rational(2), Rational(3), Rational(5)}, m));
  CHECK(multiflow::in_row_space({Rational(0), Rational(0), Rational(0)}, m));
  CHECK(!multiflow::in_row_space({Rational(1), Rational(0), Rational(0)}, m));
}

TEST_CASE("fourier-motzkin finds witnesses of feasible strict systems") {
  // x > 0, y > 0, x + y < 3
  std::vector<LinearInequality> sys = {
      {{Rational(1), Rational(0)}, Rational(0), true},
      {{Rational(0), Rational(1)}, Rational(0), true},
      {{Rational(-1), Rational(-1)}, Rational(3), true},
  };
  const auto res = multiflow::fourier_motzkin(sys, 2);
  REQUIRE(res.feasible);
  REQUIRE(res.witness.size() == 2);
  for (const auto& ineq : sys) {
    Rational lhs = ineq.constant + dot(ineq.coef, res.witness);
    CHECK(lhs > Rational(0));
  }
}

TEST_CASE("fourier-motzkin reports contradiction rows of infeasible systems") {
  // x > 1 and x < 0 cannot hold together.
  std::vector<LinearInequality> sys = {
      {{Rational(1)}, Rational(-1), true},
      {{Rational(-1)}, Rational(0), true},
  };
  const auto res = multiflow::fourier_motzkin(sys, 1);
  REQUIRE(!res.feasible);
  CHECK(res.contradiction_rows == std::vector<std::size_t>{1, 2});
}

TEST_CASE("fourier-motzkin handles constraints without variables") {
  std::vector<LinearInequality> sys = {
      {{Rational(0)}, Rational(-1), true},  // -1 > 0: false outright
  };
  const auto res = multiflow::fourier_motzkin(sys, 1);
  CHECK(!res.feasible);
  CHECK(res.contradiction_rows == std::vector<std::size_t>{1});
}

TEST_CASE("non-strict inequalities admit boundary witnesses") {
  // x >= 2 and -x >= -2 force x = 2.
  std::vector<LinearInequality> sys = {
      {{Rational(1)}, Rational(-2), false},
      {{Rational(-1)}, Rational(2), false},
  };
  const auto res = multiflow::fourier_motzkin(sys, 1);
  REQUIRE(res.feasible);
  CHECK(res.witness[0] == Rational(2));
}

TEST_CASE("positive combinations of plane vectors") {
  using V = std::array<Rational, 2>;
  // (1,0), (-1,1), (0,-1): weights 1,1,1.
  auto w = multiflow::positive_combination(
      {V{Rational(1), Rational(0)}, V{Rational(-1), Rational(1)},
       V{Rational(0), Rational(-1)}});
  REQUIRE(w.has_value());
  CHECK(w->size() == 3);
  CHECK((*w)[0] == Rational(1));
  Rational sx, sy;
  sx = (*w)[0] * Rational(1) + (*w)[1] * Rational(-1);
  sy = (*w)[1] * Rational(1) + (*w)[2] * Rational(-1);
  CHECK(sx == Rational(0));
  CHECK(sy == Rational(0));
  for (const Rational& wi : *w) CHECK(wi > Rational(0));

  // Two vectors on the same side of a line admit no positive combination.
  CHECK(!multiflow::positive_combination(
             {V{Rational(1), Rational(0)}, V{Rational(1), Rational(1)}})
             .has_value());

  // Opposite vectors balance with weights 1, 1.
  auto pair = multiflow::positive_combination(
      {V{Rational(2), Rational(-4)}, V{Rational(-2), Rational(4)}});
  REQUIRE(pair.has_value());
  CHECK((*pair)[1] == Rational(1));
}

TEST_CASE("matrix-vector multiply") {
  RationalMatrix m = from_rows({{Rational(1), Rational(2)},
                                {Rational(3), Rational(4)}});
  const auto out = multiflow::multiply(m, {frac(1, 2), frac(1, 4)});
  REQUIRE(out.size() == 2);
  CHECK(out[0] == Rational(1));
  CHECK(out[1] == frac(5, 2));
}
