// Exact evaluation of the per-commodity sums g^(l)_s, the sample objective
// g_s, and the minimax objective max over all k-samples: an exhaustive path
// for arbitrary coefficient tuples and a profile path for fixed points.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multiflow/coefficients.hpp"
#include "multiflow/rational.hpp"
#include "multiflow/samples.hpp"

namespace multiflow {

// (alpha, beta, gamma, delta) class of a sample.
struct ClassKey {
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  int delta = 0;

  std::string label(int k) const;
  bool operator==(const ClassKey&) const = default;
  auto operator<=>(const ClassKey&) const = default;
};

ClassKey class_key(const SampleStats& st);

// One class achieving a value, with every type in the class that achieves it.
struct AchieverClass {
  ClassKey key;
  std::vector<TypeDescriptor> types;  // sorted
  bool operator==(const AchieverClass&) const = default;
};

// One distinct objective value with its achieving classes (descending tables).
struct ValueEntry {
  Rational value;
  std::vector<AchieverClass> classes;
};

// Result of a maximization over all samples or all profiles.
struct MaxReport {
  Rational value;
  std::vector<AchieverClass> achievers;  // sorted by class key
  // Number of maximizing samples; present only on the exhaustive path.
  std::optional<Int> max_count;
  // All distinct values, descending; present only on the profile path.
  std::vector<ValueEntry> values;
};

// Exact partial sum of layer ell over the elements of s (ell is 0-based).
Rational g_component(const CoefficientTuple& c, const Sample& s, int ell);
Rational g_component(const GeneralDirection& d, const Sample& s, int ell);

// Sum of |g_component| over all layers.
Rational g_sample(const CoefficientTuple& c, const Sample& s);

// Component value at a fixed point of one index of the given category inside
// a sample with pr.gamma diagonal and pr.n non-diagonal elements.
Rational fixed_component(const FixedPointParams& p, int gamma, int n,
                         const IndexCategory& cat);

// Same component value under a fixed direction.
Rational fixed_component_dir(const FixedDirection& d, int gamma, int n,
                             const IndexCategory& cat);

// g value of any sample realizing the profile, evaluated at a fixed point.
Rational g_fixed(const FixedPointParams& p, const Profile& pr);

// Directional change rate of g on a profile whose component signs are all
// strict at the anchor: sum over indices of sign * component(direction),
// where sign is +1 on indices of the sample and -1 elsewhere.
Rational profile_h_linear(const Profile& pr, const FixedDirection& d);

// Exact maximum of g over every sample, by full enumeration (capped; the cap
// follows MULTIFLOW_MAX_K). threads = 0 picks hardware concurrency; results
// are identical for every thread count.
MaxReport g_max_exhaustive(const CoefficientTuple& c, int threads = 0);

// Exact maximum of g over all profiles; agrees with g_max_exhaustive on
// expand(p) whenever both are runnable. Also returns the full value table.
MaxReport g_max_fixed(const FixedPointParams& p);

// Closed-form value (3*k*alpha - 2*beta*alpha) / k^2 of g at the strong
// homogeneous flow for any sample with the given statistics.
Rational shf_value_closed(int k, int alpha, int beta);

// Strict sign pattern: every layer sum is > 0 on indices of the sample and
// < 0 on the others.
bool in_s_dagger(const CoefficientTuple& c, const Sample& s);

// Same strict sign pattern checked on a profile at a fixed point.
bool profile_in_dagger(const FixedPointParams& p, const Profile& pr);

}  // namespace multiflow
