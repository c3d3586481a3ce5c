// Small exact linear algebra: dense rational matrices, kernel bases, row-space
// membership, strictly positive combinations of plane vectors, and exact
// Fourier-Motzkin elimination for small strict-inequality systems.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "multiflow/rational.hpp"

namespace multiflow {

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what)
      : std::invalid_argument(what) {}
};

// Dense row-major rational matrix.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> entries;  // rows * cols, row-major

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), entries(r * c) {}

  Rational& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return entries[r * cols + c];
  }

  void append_row(const std::vector<Rational>& row);

  static RationalMatrix identity(std::size_t n);
};

std::vector<Rational> multiply(const RationalMatrix& m,
                               const std::vector<Rational>& v);

// Reduced row echelon form in place; returns the pivot column of each pivot
// row (row count of the result = rank). Exact: pivots are the first nonzero
// entry of each remaining row, no tolerances.
std::vector<std::size_t> reduce_to_rref(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

// Basis of the right null space { v : m v = 0 }, via exact Gauss-Jordan
// elimination. Empty result iff the null space is {0}.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

// True iff `functional` is a rational linear combination of the rows of
// `constraints` (equivalently: vanishes on the null space of `constraints`).
bool in_row_space(const std::vector<Rational>& functional,
                  const RationalMatrix& constraints);

// One linear inequality sum(coef[i] * x_i) + constant REL 0, with REL being
// ">" when strict, ">=" otherwise.
struct LinearInequality {
  std::vector<Rational> coef;
  Rational constant;
  bool strict = true;
};

// Outcome of an exact Fourier-Motzkin elimination run.
struct FourierMotzkinResult {
  bool feasible = false;
  // A satisfying assignment when feasible.
  std::vector<Rational> witness;
  // 1-based indices of the input rows jointly contradictory when infeasible.
  std::vector<std::size_t> contradiction_rows;
  // Human-readable elimination transcript (combination steps and the final
  // contradiction or witness).
  std::vector<std::string> transcript;
};

// Decides feasibility of a conjunction of linear inequalities over
// `num_vars` rational unknowns by eliminating variables one at a time.
// Intended for the small systems of this project (at most 3 unknowns).
FourierMotzkinResult fourier_motzkin(
    const std::vector<LinearInequality>& system, std::size_t num_vars);

// Strictly positive weights w (first weight normalized to 1) with
// sum_i w_i * vs[i] = (0, 0), or nullopt when none exist. Accepts 2 to 4
// vectors; decided exactly via elimination plus Fourier-Motzkin on the free
// parameters.
std::optional<std::vector<Rational>> positive_combination(
    const std::vector<std::array<Rational, 2>>& vs);

}  // namespace multiflow
