// Coefficient tuples C = (c^(1), ..., c^(k)): the affine solution space cut
// out by the per-commodity row/column/total-sum conditions, its fixed points
// under the simultaneous Sym(k) relabeling, and direction (difference)
// vectors of both spaces.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "multiflow/linalg.hpp"
#include "multiflow/rational.hpp"

namespace multiflow {

// Relabeling of {1..k}; stored 0-based.
struct Permutation {
  int k = 0;
  std::vector<int> image;  // image[i] = sigma(i), 0-based

  static Permutation identity(int k);
  static Permutation transposition(int k, int i, int j);  // 0-based i, j
  Permutation inverse() const;
  bool is_valid() const;
};

// k rational k-by-k matrices; layer l entry (i, j) is the coefficient the
// l-th commodity places on the elementary flow routed from sender i+1 to
// receiver j+1. Also used for scaled variants that intentionally leave the
// solution space.
struct CoefficientTuple {
  int k = 0;
  std::vector<Rational> entries;  // layer-major, then row-major: [l][i][j]

  CoefficientTuple() = default;
  explicit CoefficientTuple(int k_)
      : k(k_), entries(static_cast<std::size_t>(k_) * k_ * k_) {}

  Rational& at(int l, int i, int j) {
    return entries[(static_cast<std::size_t>(l) * k + i) * k + j];
  }
  const Rational& at(int l, int i, int j) const {
    return entries[(static_cast<std::size_t>(l) * k + i) * k + j];
  }

  bool operator==(const CoefficientTuple&) const = default;
};

// Parameters (x, y, a, b) of a fixed point: layer l has x at (l, l), y at the
// other diagonal cells, a where exactly one coordinate equals l, b elsewhere.
// Constraints: x + (k-1) a = 1 and y + a + (k-2) b = 0. For k = 2 the b-orbit
// is empty and b is carried as 0; for k = 1 the space is the single tuple
// ((1)).
struct FixedPointParams {
  int k = 0;
  Rational x, y, a, b;

  bool satisfies_invariants() const;
};

// A direction (difference of two members of the solution space): every layer
// has all row sums and all column sums zero.
struct GeneralDirection {
  int k = 0;
  std::vector<Rational> entries;  // same layout as CoefficientTuple

  GeneralDirection() = default;
  explicit GeneralDirection(int k_)
      : k(k_), entries(static_cast<std::size_t>(k_) * k_ * k_) {}

  Rational& at(int l, int i, int j) {
    return entries[(static_cast<std::size_t>(l) * k + i) * k + j];
  }
  const Rational& at(int l, int i, int j) const {
    return entries[(static_cast<std::size_t>(l) * k + i) * k + j];
  }
};

// A direction tangent to the fixed-point subspace, parametrized like a fixed
// point but with homogeneous constraints xbar + (k-1) abar = 0 and
// ybar + abar + (k-2) bbar = 0; determined by (abar, bbar).
struct FixedDirection {
  int k = 0;
  Rational xbar, ybar, abar, bbar;

  // Completes (abar, bbar) to the full parameter tuple via the constraints.
  static FixedDirection from_ab(int k, const Rational& abar,
                                const Rational& bbar);
  bool satisfies_invariants() const;
  FixedDirection scaled(const Rational& factor) const;
};

// --- membership and structure ---------------------------------------------

// True iff all 2k-1 per-layer sum conditions hold exactly.
bool validate_membership(const CoefficientTuple& c);

// True iff every layer of d has all row and column sums zero.
bool validate_direction(const GeneralDirection& d);

// Builds the fixed point described by p. The result always passes
// validate_membership.
CoefficientTuple expand(const FixedPointParams& p);

// Builds the entry tensor of a fixed direction (same placement pattern as
// expand). The result always passes validate_direction.
GeneralDirection expand_direction(const FixedDirection& d);

// Entry (l, i, j) of the result is entry (sigma^-1(l), sigma^-1(i),
// sigma^-1(j)) of c; membership is preserved.
CoefficientTuple apply_permutation(const Permutation& sigma,
                                   const CoefficientTuple& c);

// True iff sigma(C) = C for the k-1 adjacent transpositions, which generate
// the full symmetric group.
bool is_fixed_point(const CoefficientTuple& c);

// Orbit averages of the entries of c (the closed form of averaging c over
// the full group): x over {(l,l,l)}, y over {(l,i,i): i != l}, a over the
// cells with exactly one coordinate equal to the layer, b over the rest.
// Requires validate_membership(c).
FixedPointParams symmetrize(const CoefficientTuple& c);

// Entrywise multiplication by lambda. The result leaves the solution space
// unless lambda = 1; it is the form handed to flow assembly.
CoefficientTuple scale(const CoefficientTuple& c, const Rational& lambda);

// c + epsilon * delta, entrywise.
CoefficientTuple add_scaled(const CoefficientTuple& c, const Rational& epsilon,
                            const GeneralDirection& delta);

// --- constraint matrices ----------------------------------------------------

// Homogeneous part of the membership conditions over the k^3 entry variables:
// per layer, the k-1 off-index row sums, the k-1 off-index column sums, and
// the total sum. Rank is k(2k-1).
RationalMatrix membership_constraint_matrix(int k);

// Constraints of the direction space: per layer, all k row sums and all k
// column sums. Same rank k(2k-1); kernel dimension k(k-1)^2.
RationalMatrix direction_constraint_matrix(int k);

// Flattened index of entry (l, i, j) in the k^3 coordinate order used by the
// constraint matrices and class functionals.
inline std::size_t entry_index(int k, int l, int i, int j) {
  return (static_cast<std::size_t>(l) * k + i) * k + j;
}

}  // namespace multiflow
