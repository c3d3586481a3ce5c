#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "multiflow/coefficients.hpp"
#include "multiflow/evaluate.hpp"
#include "multiflow/perturb.hpp"
#include "multiflow/rational.hpp"
#include "multiflow/samples.hpp"

using multiflow::CoefficientTuple;
using multiflow::FixedDirection;
using multiflow::FixedPointParams;
using multiflow::frac;
using multiflow::MaxReport;
using multiflow::Profile;
using multiflow::Rational;
using multiflow::Sample;

namespace {

FixedPointParams random_fixed_point(int k, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(3, 9);
  FixedPointParams p;
  p.k = k;
  p.a = frac(num(rng), den(rng));
  p.b = k > 2 ? frac(num(rng), den(rng)) : Rational(0);
  p.x = Rational(1) - Rational(k - 1) * p.a;
  p.y = -p.a - Rational(k - 2) * p.b;
  return p;
}

FixedPointParams nudged(const FixedPointParams& p, const FixedDirection& d,
                        const Rational& eps) {
  FixedPointParams out;
  out.k = p.k;
  out.x = p.x + eps * d.xbar;
  out.y = p.y + eps * d.ybar;
  out.a = p.a + eps * d.abar;
  out.b = p.b + eps * d.bbar;
  return out;
}

}  // namespace

TEST_CASE("per-layer sums and g on hand samples") {
  const CoefficientTuple c = multiflow::expand(multiflow::build_shf(3));
  // x = 5/9, y = -1/9, a = 2/9, b = -1/9.
  const Sample diag = Sample::parse(3, "(1,1)");
  CHECK(multiflow::g_component(c, diag, 0) == frac(5, 9));
  CHECK(multiflow::g_component(c, diag, 1) == frac(-1, 9));
  CHECK(multiflow::g_component(c, diag, 2) == frac(-1, 9));
  CHECK(multiflow::g_sample(c, diag) == frac(7, 9));

  const Sample two = Sample::parse(3, "(1,2);(2,1)");
  CHECK(multiflow::g_component(c, two, 0) == frac(4, 9));
  CHECK(multiflow::g_component(c, two, 2) == frac(-2, 9));
  CHECK(multiflow::g_sample(c, two) == frac(10, 9));

  const Sample full = Sample::parse(3, "(1,1);(2,2);(3,3)");
  CHECK(multiflow::g_sample(c, full) == Rational(1));
}

TEST_CASE("closed form matches direct evaluation at the shf") {
  for (int k = 1; k <= 4; ++k) {
    const CoefficientTuple c = multiflow::expand(multiflow::build_shf(k));
    multiflow::enumerate_samples(k, [&](const Sample& s) {
      const multiflow::SampleStats st = multiflow::stats(s);
      CHECK(multiflow::g_sample(c, s) ==
            multiflow::shf_value_closed(k, st.alpha, st.beta));
    });
  }
}

TEST_CASE("profile evaluation equals sample evaluation at fixed points") {
  std::mt19937 rng(21);
  for (int k = 2; k <= 4; ++k) {
    std::vector<FixedPointParams> points = {multiflow::build_shf(k),
                                            multiflow::build_cdd(k).cdd,
                                            random_fixed_point(k, rng)};
    for (const auto& p : points) {
      const CoefficientTuple c = multiflow::expand(p);
      multiflow::enumerate_samples(k, [&](const Sample& s) {
        const Profile pr = multiflow::profile_of(s);
        CHECK(multiflow::g_fixed(p, pr) == multiflow::g_sample(c, s));
        CHECK(multiflow::in_s_dagger(c, s) ==
              multiflow::profile_in_dagger(p, pr));
      });
    }
  }
}

TEST_CASE("exhaustive and profile maxima agree with consistent achievers") {
  std::mt19937 rng(5);
  for (int k = 2; k <= 4; ++k) {
    std::vector<FixedPointParams> points = {multiflow::build_shf(k),
                                            multiflow::build_cdd(k).cdd};
    for (int t = 0; t < 3; ++t) points.push_back(random_fixed_point(k, rng));
    for (const auto& p : points) {
      const MaxReport ex =
          multiflow::g_max_exhaustive(multiflow::expand(p), 1);
      const MaxReport prof = multiflow::g_max_fixed(p);
      CHECK(ex.value == prof.value);
      CHECK(ex.achievers == prof.achievers);
    }
  }
}

TEST_CASE("max reports carry counts and value tables") {
  const FixedPointParams p = multiflow::build_shf(3);
  const MaxReport ex = multiflow::g_max_exhaustive(multiflow::expand(p), 1);
  REQUIRE(ex.max_count.has_value());
  // The maximum 10/9 is achieved by exactly the 12 samples of S_3(2,2).
  CHECK(*ex.max_count == 12);
  CHECK(ex.value == frac(10, 9));

  const MaxReport prof = multiflow::g_max_fixed(p);
  REQUIRE(!prof.values.empty());
  CHECK(prof.values.front().value == prof.value);
  for (std::size_t i = 1; i < prof.values.size(); ++i)
    CHECK(prof.values[i].value < prof.values[i - 1].value);
}

TEST_CASE("thread count does not change the exhaustive result") {
  const CoefficientTuple c = multiflow::expand(multiflow::build_cdd(4).cdd);
  const MaxReport one = multiflow::g_max_exhaustive(c, 1);
  const MaxReport four = multiflow::g_max_exhaustive(c, 4);
  CHECK(one.value == four.value);
  CHECK(one.achievers == four.achievers);
  CHECK(*one.max_count == *four.max_count);
}

TEST_CASE("directional rate matches finite differences inside the dagger set") {
  for (int k : {3, 4}) {
    const FixedPointParams p = multiflow::build_shf(k);
    const FixedDirection d = multiflow::delta_star(k);
    const Rational eps = frac(1, 1000);
    const FixedPointParams q = nudged(p, d, eps);
    for (const Profile& pr : multiflow::all_profiles(k)) {
      if (!multiflow::profile_in_dagger(p, pr)) continue;
      if (!multiflow::profile_in_dagger(q, pr)) continue;
      CHECK(multiflow::g_fixed(q, pr) - multiflow::g_fixed(p, pr) ==
            eps * multiflow::profile_h_linear(pr, d));
    }
  }
}

TEST_CASE("dagger membership is strict") {
  // A sample with a vanishing layer sum is not in the dagger set.
  CoefficientTuple c(2);
  // Layer 1 puts 1 at (1,1); layer 2 zero everywhere: sums are not strict.
  c.at(0, 0, 0) = Rational(1);
  CHECK(!multiflow::in_s_dagger(c, Sample::parse(2, "(1,1)")));
  const CoefficientTuple shf = multiflow::expand(multiflow::build_shf(2));
  CHECK(multiflow::in_s_dagger(shf, Sample::parse(2, "(1,1)")));
}
