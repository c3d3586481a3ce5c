// Enumeration and classification of k-samples (subsets of [k]x[k] with
// pairwise-distinct column coordinates) and of the profile abstraction used to
// evaluate fixed points without enumerating individual samples.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "multiflow/coefficients.hpp"
#include "multiflow/rational.hpp"

namespace multiflow {

// Thrown when a requested enumeration exceeds the configured size cap.
class EnumerationTooLarge : public std::runtime_error {
 public:
  explicit EnumerationTooLarge(const std::string& what)
      : std::runtime_error(what) {}
};

// Default cap on k for full sample enumeration, overridable through the
// MULTIFLOW_MAX_K environment variable ((k+1)^k - 1 samples exist).
int max_enumeration_k();

// A k-sample: a nonempty set of (row, col) pairs whose columns are pairwise
// distinct. Stored 0-based, sorted by column; rendered 1-based.
struct Sample {
  int k = 0;
  std::vector<std::pair<int, int>> elements;

  bool is_valid() const;
  // Parses "(1,1);(2,3)" (1-based); sorts by column; rejects duplicates.
  static Sample parse(int k, const std::string& text);
  std::string str() const;
  bool operator==(const Sample&) const = default;
};

// Counting statistics of a sample: alpha = |s|, beta = #indices appearing in
// any coordinate, gamma = #diagonal elements, delta = #indices appearing
// exactly once, mult = per-index coordinate multiplicity.
struct SampleStats {
  int k = 0;
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  int delta = 0;
  std::vector<int> mult;
};

SampleStats stats(const Sample& s);

// The multiset of per-index (diagonal multiplicity, non-diagonal multiplicity)
// pairs, including all-zero pairs for untouched indices. Two samples with the
// same type descriptor have the same g value at every fixed point.
struct TypeDescriptor {
  // Sorted descending; size k; diagonal multiplicity is 0 or 2.
  std::vector<std::pair<int, int>> pairs;

  std::string str() const;
  bool operator==(const TypeDescriptor&) const = default;
  auto operator<=>(const TypeDescriptor&) const = default;
};

TypeDescriptor type_of(const Sample& s);

// Relabels a sample by sigma (element (i,j) -> (sigma(i), sigma(j))) and
// restores column order.
Sample apply_permutation(const Permutation& sigma, const Sample& s);

// Number of samples: (k+1)^k - 1.
Int sample_count(int k);

// Visits every sample exactly once in odometer order (column digits 0=absent,
// r=row r). Throws EnumerationTooLarge above the cap.
void enumerate_samples(int k, const std::function<void(const Sample&)>& visit);

// Category of one index within a sample's structure: whether it hosts a
// diagonal element, whether it is the column of a non-diagonal element, and
// how many non-diagonal elements use it as their row.
struct IndexCategory {
  int is_diag = 0;
  int is_col = 0;
  int row_count = 0;
  auto operator<=>(const IndexCategory&) const = default;
};

// Multiset of index categories over all k indices. Determines g at every
// fixed point exactly, and refines TypeDescriptor (which only keeps
// is_col + row_count).
struct Profile {
  int k = 0;
  int gamma = 0;  // number of diagonal elements
  int n = 0;      // number of non-diagonal elements
  // Sorted ascending by category; counts sum to k.
  std::vector<std::pair<IndexCategory, int>> cats;

  SampleStats to_stats() const;
  TypeDescriptor type() const;
  std::string str() const;
  bool operator==(const Profile&) const = default;
  auto operator<=>(const Profile&) const = default;
};

Profile profile_of(const Sample& s);

// Yields every realizable profile exactly once. A profile is realizable iff
// row_count(v) <= n - is_col(v) for every index v (the only binding Hall sets
// are singletons because forbidden row/column pairs form a partial matching),
// together with the counting identities. Capped at k <= 12.
void enumerate_profiles(int k, const std::function<void(const Profile&)>& visit);
std::vector<Profile> all_profiles(int k);

// Discriminant of a sample under a fixed direction:
// abar + gamma*ybar + (alpha - gamma - 1)*bbar.
Rational discriminant(const SampleStats& st, const FixedDirection& d);

// Perturbation class. Class II iff alpha = beta = k, delta != 0 and the
// discriminant is negative; class I otherwise.
enum class PerturbationClass { I, II };

PerturbationClass classify(const SampleStats& st, const FixedDirection& d,
                           int k);

// Class label such as "S_3(2,2)", "S_4(3,3,0)" or "S_6(5,6,1,3)".
std::string class_label(int k, int alpha, int beta);
std::string class_label(int k, int alpha, int beta, int gamma);
std::string class_label(int k, int alpha, int beta, int gamma, int delta);

}  // namespace multiflow
