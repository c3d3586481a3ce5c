// Optimality certificates for the perturbed points: sample-class functionals
// and their aggregate H-vectors, positive combinations, infeasibility proofs
// for the two sizes where the strong homogeneous flow is already optimal,
// uniqueness kernels, an explicit second optimum at k = 10, and the limit
// table of the maximum toward 9/8.
#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiflow/coefficients.hpp"
#include "multiflow/evaluate.hpp"
#include "multiflow/linalg.hpp"
#include "multiflow/perturb.hpp"
#include "multiflow/rational.hpp"
#include "multiflow/samples.hpp"

namespace multiflow {

// A certificate stage failed its own verification.
class CertificateError : public std::runtime_error {
 public:
  explicit CertificateError(const std::string& what)
      : std::runtime_error(what) {}
};

// Exact binomial coefficient; 0 outside 0 <= r <= n.
Int binomial(int n, int r);

// Descriptor of the sample class S_k(alpha, beta, gamma).
struct ClassSpec {
  int alpha = 0;
  int beta = 0;
  int gamma = 0;

  std::string label(int k) const;
  bool operator==(const ClassSpec&) const = default;
};

// Linear functional on all k^3 entry positions representing
// delta |-> sum over the class of the sign-linearized per-sample change,
// where the sign on layer l is +1 when l carries the sample and -1 otherwise.
struct ClassFunctional {
  int k = 0;
  ClassSpec spec;
  Int sample_count{0};
  std::vector<Rational> coef;  // size k^3, entry_index order
};

// Coefficients on the two diagonal aggregates
// phi1 = sum_i delta^(i)_{i,i} and phi2 = sum_{i != j} delta^(i)_{j,j}.
struct HVector {
  Rational A, B;
  bool operator==(const HVector&) const = default;
};

// The fixed directions whose aggregate pairs (phi1, phi2) are (1, 0) and
// (0, 1); they span the fixed-direction plane. Require k >= 3.
FixedDirection phi1_direction(int k);
FixedDirection phi2_direction(int k);

// The aggregate functionals themselves as k^3 coefficient vectors.
std::vector<Rational> phi1_functional(int k);
std::vector<Rational> phi2_functional(int k);

// Brute-force class functional: enumerates every k-sample, keeps the class
// members, verifies the strict sign pattern of the anchor on each member and
// accumulates +-1 per (layer, i, j). Capped at k <= 7.
ClassFunctional class_functional(int k, const ClassSpec& spec,
                                 const FixedPointParams& anchor);

// Dot product of a k^3 functional with a direction tensor.
Rational evaluate_functional(const std::vector<Rational>& coef,
                             const GeneralDirection& d);

// Aggregate coefficients of a class functional: evaluates it on the two
// extraction directions and verifies that f - A*phi1 - B*phi2 vanishes on
// the whole direction space (throws CertificateError when it does not).
HVector extract_h_vector(const ClassFunctional& f);

// Fixed-subspace view of a class functional for classes with alpha == beta,
// computed by symmetry reduction: one canonical column set {1..d} times the
// row maps with exactly gamma fixed points, scaled by C(k, d). Verifies the
// strict sign pattern of the anchor on every distinct profile. Valid for
// evaluating the class sum on fixed directions only.
struct FixedSubspaceFunctional {
  int k = 0;
  ClassSpec spec;
  Int sample_count{0};
  HVector h_raw;
};

FixedSubspaceFunctional class_functional_fixed(int k, const ClassSpec& spec,
                                               const FixedPointParams& anchor);

// Closed forms for the two certificate families (raw for the all-diagonal
// family, normalized for the no-diagonal family):
//   all-diagonal S_k(d,d,d): [ C(k-1,d-1), C(k-2,d-2) - C(k-2,d-1) ]
//   no-diagonal  S_k(d,d,0): [ v - 2u, -v ] with u = C(k-2,d-2),
//                            v = C(k-3,d-3) - C(k-3,d-2)
HVector h_all_diagonal_closed(int k, int d);
HVector h_no_diagonal_closed(int k, int d);

// Divisor applied when reporting a class H-vector: (d-1)^(d-1) for the
// no-diagonal family S_k(d,d,0) with d >= 2, and 1 otherwise.
Int h_normalization(const ClassSpec& spec);

// The three certificate classes used for each supported k, in the order
// paired with the quoted weight triple.
std::array<ClassSpec, 3> certificate_classes(int k);

// Quoted proportional weight triple for the certificate combination.
std::array<Int, 3> reference_weights(int k);

// One verified class inside an optimality certificate.
struct ClassCertificate {
  ClassSpec spec;
  std::string label;
  Int sample_count{0};
  HVector h_raw;        // raw aggregate coefficients of the class sum
  HVector h;            // h_raw / normalization
  Int normalization{1};
  bool dagger_ok = false;    // class contained in the strict sign set
  bool residual_ok = false;  // full scope: reduces to the aggregates
};

// Full certificate that the perturbed point is optimal for its k.
struct OptimalityCertificate {
  int k = 0;
  bool reduced_scope = false;  // k >= 6: fixed-direction subspace only
  FixedPointParams anchor;     // the perturbed point being certified
  Rational optimum;
  std::vector<ClassCertificate> classes;
  std::vector<Rational> weights;  // on normalized H-vectors; first = 1
  std::array<Int, 3> reference{};
  bool weights_match_reference = false;
  bool combination_vanishes = false;   // weighted H-vectors sum to zero
  bool full_space_verified = false;    // weighted functional vanishes on L
  bool verified = false;
  std::vector<std::string> notes;
};

// Builds and checks the whole certificate for k in {3,4,5,7,8,9}: class
// membership in the strict sign set, aggregate H-vectors, strictly positive
// combination weights, and the vanishing of the weighted functional (on the
// full direction space for k <= 5, on the fixed-direction subspace above).
OptimalityCertificate verify_optimality(int k);

// Report that the strong homogeneous flow itself is optimal (k = 6, 10):
// the strict two-variable system expressing a direction that decreases every
// maximizing class is infeasible, and a rational grid scan of small fixed
// directions finds none either.
struct ShfOptimalityReport {
  int k = 0;
  Rational optimum;
  std::vector<LinearInequality> system;
  FourierMotzkinResult fm;
  // The quoted contradiction certificate, re-verified by exhibiting strictly
  // positive multipliers that combine the rows into an unsatisfiable claim.
  std::vector<std::size_t> contradiction_rows;
  std::vector<Rational> farkas_weights;
  std::size_t grid_points = 0;
  std::size_t improving_directions = 0;
  bool verified = false;
  std::vector<std::string> notes;
};

ShfOptimalityReport verify_shf_optimal(int k);

// Dimension of the solution space of {h_s(delta) = 0 for s in the pinning
// sample family} together with all row/column-sum-zero constraints, over the
// full k^3 entry space. 0 proves the perturbed point is the unique optimum.
// k = 3 pins with S_3(2,2) and S_3(3,3,0); k = 4 with S_4(3,3,0),
// S_4(3,3,1) and S_4(4,4,0). With drop_final_class the last family member is
// omitted (k = 3 only), exposing a positive-dimensional kernel.
std::size_t uniqueness_kernel(int k, bool drop_final_class = false);

// A second optimal point for k = 10: the strong homogeneous flow moved by
// the fixed direction with abar = -2*delta, bbar = delta. Requires
// 0 < delta <= 1/1800 (the step at which S_10(6,6,6), rising with slope 72
// from 27/25, ties the maximizers); verifies the optimum stays exactly
// 28/25.
CoefficientTuple nonuniqueness_witness_k10(const Rational& delta);

// One row of the limit table: the maximum of g at the strong homogeneous
// flow, by the closed per-residue form, and its gap to 9/8.
struct AsymptoticRow {
  int k = 0;
  int d = 0;  // maximizing sample size
  Rational value;
  Rational gap;
};

// Closed-form maximum of g at the strong homogeneous flow.
Rational shf_max_closed(int k);

// Rows k = 1..k_max (k_max <= 64).
std::vector<AsymptoticRow> asymptotic_table(int k_max);

}  // namespace multiflow
