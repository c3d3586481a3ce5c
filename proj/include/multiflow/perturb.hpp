// Construction of the strong homogeneous flow, the valid perturbation
// direction, perturbation sizes, and the perturbed optimum candidate for each
// supported k.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multiflow/coefficients.hpp"
#include "multiflow/evaluate.hpp"
#include "multiflow/rational.hpp"
#include "multiflow/samples.hpp"

namespace multiflow {

// Requested k outside the range this project can answer exactly.
class UnsupportedK : public std::runtime_error {
 public:
  explicit UnsupportedK(const std::string& what) : std::runtime_error(what) {}
};

// No valid perturbation direction exists (k mod 4 == 2 has two maximizing
// sizes d and no direction decreases both classes).
class NoValidDirection : public std::runtime_error {
 public:
  explicit NoValidDirection(const std::string& what)
      : std::runtime_error(what) {}
};

// A computed quantity failed its own verification; indicates a formula was
// applied outside its validity range.
class InternalInconsistency : public std::logic_error {
 public:
  explicit InternalInconsistency(const std::string& what)
      : std::logic_error(what) {}
};

// Coefficients of the linearized change h = (A*xbar + B*ybar + C*abar +
// D*bbar) * epsilon of g on a sample class under a fixed direction.
struct HCoefficients {
  Rational A, B, C, D;
};

// Full result of the perturbation pipeline for one k.
struct PerturbResult {
  int k = 0;
  bool shf_optimal = false;     // k in {1, 2, 6, 10}: no perturbation applies
  FixedDirection delta_star;    // zero direction when shf_optimal
  Rational epsilon_star;        // 0 when shf_optimal
  FixedPointParams cdd;         // perturbed point (or the SHF itself)
  Rational optimum;             // g_max_fixed(cdd).value
  std::vector<std::string> max_set;
  MaxReport report;
};

// One row of the class table at the strong homogeneous flow: value and
// epsilon-slope under the valid perturbation direction.
struct TableRow {
  std::string label;
  Rational value;
  Rational slope;
  PerturbationClass cls = PerturbationClass::I;
};

// Aggregated per-class data behind the table and the crossing search.
struct ClassInfo {
  ClassKey key;
  std::vector<TypeDescriptor> types;
  Rational value;
  Rational slope;
  PerturbationClass cls = PerturbationClass::I;
};

// Strong homogeneous flow parameters: x = 2/k - 1/k^2, a = 1/k - 1/k^2,
// y = b = -1/k^2 (k = 1 gives the single tuple ((1))).
FixedPointParams build_shf(int k);

// Sample size(s) d maximizing g at the strong homogeneous flow; two sizes tie
// exactly when k mod 4 == 2.
std::vector<int> maximizing_d(int k);

// The unique fixed direction with |abar| = 1 satisfying
// abar = (k^2/(2d) - k + 1) * bbar that strictly decreases the maximizing
// class. Throws NoValidDirection when k mod 4 == 2.
FixedDirection delta_star(int k);

// Linearized-change coefficients for a sample of the given class.
HCoefficients h_coefficients(const SampleStats& st, PerturbationClass cls,
                             int k);

// Evaluates the linearized change at epsilon times the direction.
Rational h_value(const SampleStats& st, PerturbationClass cls,
                 const FixedDirection& d, const Rational& epsilon);

// Largest epsilon >= 0 such that no per-layer sum changes sign anywhere
// between the strong homogeneous flow and its perturbation (exhaustive over
// all samples and layers; capped at k <= 5).
Rational max_valid_epsilon(int k);

// Per-class (value, slope) data at the strong homogeneous flow under the
// valid perturbation direction.
std::vector<ClassInfo> class_infos(int k);

// Class table rows grouped to the coarsest granularity at which value, slope
// and class are uniform.
std::vector<TableRow> table_rows(int k);

// Smallest epsilon > 0 at which the decreasing maximum meets a rising class,
// verified by direct evaluation of the perturbed point.
Rational epsilon_star(int k);

// Runs the whole pipeline: direction, crossing size, perturbed point, and its
// directly evaluated optimum and maximizing classes. 1 <= k <= 10.
PerturbResult build_cdd(int k);

// Coalesced class labels of a maximizing set: the coarsest of
// S_k(a,b) / S_k(a,b,c) / S_k(a,b,c,d) / single types that exactly covers the
// achieving profiles.
std::vector<std::string> format_max_set(int k,
                                        const std::vector<AchieverClass>& achievers);

}  // namespace multiflow
