// Deterministic JSON (and CSV) rendering of every report type, plus parsing
// of coefficient-tuple and network documents. All rationals travel as exact
// [numerator, denominator] pairs; key order is fixed so identical inputs
// produce byte-identical documents.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "multiflow/certify.hpp"
#include "multiflow/coefficients.hpp"
#include "multiflow/evaluate.hpp"
#include "multiflow/network.hpp"
#include "multiflow/perturb.hpp"
#include "multiflow/rational.hpp"

namespace multiflow {

using ojson = nlohmann::ordered_json;

// Malformed or semantically invalid input document.
class JsonError : public std::runtime_error {
 public:
  explicit JsonError(const std::string& what) : std::runtime_error(what) {}
};

// Arbitrary-precision integer: a JSON integer when it fits in 64 bits,
// otherwise its decimal digits as a string.
ojson int_json(const Int& v);

// [num, den]; always in lowest terms with positive denominator.
ojson rational_json(const Rational& r);

// Accepts [num, den] pairs or bare integers (den = 1).
Rational rational_from_json(const ojson& j);

// {"x": .., "y": .., "a": .., "b": ..}
ojson fixed_point_json(const FixedPointParams& p);

// {"xbar": .., "ybar": .., "abar": .., "bbar": ..}
ojson fixed_direction_json(const FixedDirection& d);

// {"k": int, "layers": [[[num,den], ...k^2 entries...], ...k layers...]},
// each layer row-major.
ojson coefficients_json(const CoefficientTuple& c);
CoefficientTuple coefficients_from_json(const ojson& j);

// {"value", "achievers": [labels], "max_count"?}
ojson max_report_json(int k, const MaxReport& r);

// {"k", "delta_star", "epsilon_star", "cdd", "optimum", "max_set"}
ojson perturb_result_json(const PerturbResult& r);

// {"k", "rows": [{"label", "class", "value", "slope"}]}
ojson table_json(int k, const std::vector<TableRow>& rows);

// Header "label,class,value,slope"; exact fraction strings.
std::string table_csv(const std::vector<TableRow>& rows);

ojson optimality_certificate_json(const OptimalityCertificate& c);
ojson shf_report_json(const ShfOptimalityReport& r);

// {"k_max", "rows": [{"k", "d", "value", "gap"}]}
ojson asymptotic_json(const std::vector<AsymptoticRow>& rows);

// {"k", "nodes", "arcs" (name pairs), "senders", "receivers",
//  "paths": {"i,j" (1-based): [0-based arc indices]}}
ojson network_json(const Network& n, const PathSystem& p);

// Parses and semantically validates the same document shape. Node
// references may be names or 0-based indices. Throws NetworkError.
void network_from_json(const ojson& j, Network* n, PathSystem* p);

// Flow-pipeline report pieces; arcs referenced as "tail->head" strings.
ojson rate_report_json(const RateReport& r, const Network& n);
ojson feasibility_report_json(const FeasibilityReport& r, const Network& n);

// Per-arc loads aligned with the network's arc list.
ojson arc_loads_json(const MultiFlow& mf, const Network& n);

// Renders any document with 2-space indentation and a trailing newline.
std::string dump_json(const ojson& j);

}  // namespace multiflow
