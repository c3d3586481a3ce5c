#include "multiflow/json_io.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

namespace multiflow {

namespace {

const char* kClassNames[] = {"I", "II"};

std::string class_name(PerturbationClass cls) {
  return kClassNames[cls == PerturbationClass::II ? 1 : 0];
}

}  // namespace

ojson int_json(const Int& v) {
  if (v.fits_slong_p())
    return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

ojson rational_json(const Rational& r) {
  return ojson::array({int_json(r.num()), int_json(r.den())});
}

namespace {

Int int_from_json(const ojson& j, const char* what) {
  if (j.is_number_integer())
    return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw JsonError(std::string(what) + ": expected an integer");
}

}  // namespace

Rational rational_from_json(const ojson& j) {
  if (j.is_number_integer())
    return Rational(Int(static_cast<long>(j.get<std::int64_t>())));
  if (j.is_array() && j.size() == 2) {
    const Int num = int_from_json(j[0], "numerator");
    const Int den = int_from_json(j[1], "denominator");
    if (den == 0) throw JsonError("rational with zero denominator");
    return Rational(num, den);
  }
  throw JsonError("expected a rational as [num, den] or an integer");
}

ojson fixed_point_json(const FixedPointParams& p) {
  ojson j;
  j["x"] = rational_json(p.x);
  j["y"] = rational_json(p.y);
  j["a"] = rational_json(p.a);
  j["b"] = rational_json(p.b);
  return j;
}

ojson fixed_direction_json(const FixedDirection& d) {
  ojson j;
  j["xbar"] = rational_json(d.xbar);
  j["ybar"] = rational_json(d.ybar);
  j["abar"] = rational_json(d.abar);
  j["bbar"] = rational_json(d.bbar);
  return j;
}

ojson coefficients_json(const CoefficientTuple& c) {
  ojson j;
  j["k"] = c.k;
  ojson layers = ojson::array();
  for (int l = 0; l < c.k; ++l) {
    ojson layer = ojson::array();
    for (int i = 0; i < c.k; ++i)
      for (int jj = 0; jj < c.k; ++jj)
        layer.push_back(rational_json(c.at(l, i, jj)));
    layers.push_back(std::move(layer));
  }
  j["layers"] = std::move(layers);
  return j;
}

CoefficientTuple coefficients_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("layers"))
    throw JsonError("coefficient document needs \"k\" and \"layers\"");
  if (!j["k"].is_number_integer())
    throw JsonError("\"k\" must be an integer");
  const int k = j["k"].get<int>();
  if (k < 1) throw JsonError("\"k\" must be at least 1");
  const auto& layers = j["layers"];
  if (!layers.is_array() || layers.size() != static_cast<std::size_t>(k))
    throw JsonError("\"layers\" must hold exactly k layers");
  CoefficientTuple c(k);
  for (int l = 0; l < k; ++l) {
    const auto& layer = layers[l];
    if (!layer.is_array() ||
        layer.size() != static_cast<std::size_t>(k) * k)
      throw JsonError("layer " + std::to_string(l + 1) +
                      " must hold exactly k*k entries (row-major)");
    for (int i = 0; i < k; ++i)
      for (int jj = 0; jj < k; ++jj)
        c.at(l, i, jj) =
            rational_from_json(layer[static_cast<std::size_t>(i) * k + jj]);
  }
  return c;
}

ojson max_report_json(int k, const MaxReport& r) {
  ojson j;
  j["value"] = rational_json(r.value);
  ojson achievers = ojson::array();
  for (const AchieverClass& a : r.achievers)
    achievers.push_back(a.key.label(k));
  j["achievers"] = std::move(achievers);
  if (r.max_count) j["max_count"] = int_json(*r.max_count);
  return j;
}

ojson perturb_result_json(const PerturbResult& r) {
  ojson j;
  j["k"] = r.k;
  j["delta_star"] = fixed_direction_json(r.delta_star);
  j["epsilon_star"] = rational_json(r.epsilon_star);
  j["cdd"] = fixed_point_json(r.cdd);
  j["optimum"] = rational_json(r.optimum);
  j["max_set"] = r.max_set;
  return j;
}

ojson table_json(int k, const std::vector<TableRow>& rows) {
  ojson j;
  j["k"] = k;
  ojson out = ojson::array();
  for (const TableRow& row : rows) {
    ojson one;
    one["label"] = row.label;
    one["class"] = class_name(row.cls);
    one["value"] = rational_json(row.value);
    one["slope"] = rational_json(row.slope);
    out.push_back(std::move(one));
  }
  j["rows"] = std::move(out);
  return j;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "label,class,value,slope\n";
  for (const TableRow& row : rows)
    os << row.label << ',' << class_name(row.cls) << ',' << row.value.str()
       << ',' << row.slope.str() << '\n';
  return os.str();
}

ojson optimality_certificate_json(const OptimalityCertificate& c) {
  ojson j;
  j["k"] = c.k;
  j["scope"] = c.reduced_scope ? "fixed-direction subspace" : "full space";
  j["anchor"] = fixed_point_json(c.anchor);
  j["optimum"] = rational_json(c.optimum);
  ojson classes = ojson::array();
  for (const ClassCertificate& cc : c.classes) {
    ojson one;
    one["label"] = cc.label;
    one["sample_count"] = int_json(cc.sample_count);
    one["h_raw"] =
        ojson::array({rational_json(cc.h_raw.A), rational_json(cc.h_raw.B)});
    one["normalization"] = int_json(cc.normalization);
    one["h"] = ojson::array({rational_json(cc.h.A), rational_json(cc.h.B)});
    one["strict_sign_pattern"] = cc.dagger_ok;
    one["reduces_to_aggregates"] = cc.residual_ok;
    classes.push_back(std::move(one));
  }
  j["classes"] = std::move(classes);
  ojson weights = ojson::array();
  for (const Rational& w : c.weights) weights.push_back(rational_json(w));
  j["weights"] = std::move(weights);
  ojson ref = ojson::array();
  for (const Int& w : c.reference) ref.push_back(int_json(w));
  j["reference_weights"] = std::move(ref);
  j["weights_match_reference"] = c.weights_match_reference;
  j["combination_vanishes"] = c.combination_vanishes;
  j["full_space_verified"] = c.full_space_verified;
  j["verified"] = c.verified;
  j["notes"] = c.notes;
  return j;
}

ojson shf_report_json(const ShfOptimalityReport& r) {
  ojson j;
  j["k"] = r.k;
  j["optimum"] = rational_json(r.optimum);
  ojson system = ojson::array();
  for (const LinearInequality& ineq : r.system) {
    ojson one;
    ojson coef = ojson::array();
    for (const Rational& c : ineq.coef) coef.push_back(rational_json(c));
    one["coef"] = std::move(coef);
    one["constant"] = rational_json(ineq.constant);
    one["relation"] = ineq.strict ? ">" : ">=";
    system.push_back(std::move(one));
  }
  j["system"] = std::move(system);
  j["feasible"] = r.fm.feasible;
  ojson rows = ojson::array();
  for (std::size_t row : r.contradiction_rows)
    rows.push_back(static_cast<std::int64_t>(row));
  j["contradiction_rows"] = std::move(rows);
  ojson farkas = ojson::array();
  for (const Rational& w : r.farkas_weights)
    farkas.push_back(rational_json(w));
  j["farkas_weights"] = std::move(farkas);
  j["grid_points"] = static_cast<std::int64_t>(r.grid_points);
  j["improving_directions"] = static_cast<std::int64_t>(r.improving_directions);
  j["verified"] = r.verified;
  j["notes"] = r.notes;
  return j;
}

ojson asymptotic_json(const std::vector<AsymptoticRow>& rows) {
  ojson j;
  j["k_max"] = rows.empty() ? 0 : rows.back().k;
  ojson out = ojson::array();
  for (const AsymptoticRow& row : rows) {
    ojson one;
    one["k"] = row.k;
    one["d"] = row.d;
    one["value"] = rational_json(row.value);
    one["gap"] = rational_json(row.gap);
    out.push_back(std::move(one));
  }
  j["rows"] = std::move(out);
  return j;
}

ojson network_json(const Network& n, const PathSystem& p) {
  ojson j;
  j["k"] = n.k;
  j["nodes"] = n.nodes;
  ojson arcs = ojson::array();
  for (const Arc& a : n.arcs)
    arcs.push_back(ojson::array({n.nodes[a.tail], n.nodes[a.head]}));
  j["arcs"] = std::move(arcs);
  ojson senders = ojson::array();
  for (int v : n.senders) senders.push_back(n.nodes[v]);
  j["senders"] = std::move(senders);
  ojson receivers = ojson::array();
  for (int v : n.receivers) receivers.push_back(n.nodes[v]);
  j["receivers"] = std::move(receivers);
  ojson paths;
  for (int i = 0; i < n.k; ++i)
    for (int jj = 0; jj < n.k; ++jj) {
      const std::string key =
          std::to_string(i + 1) + "," + std::to_string(jj + 1);
      paths[key] = p.path(i, jj);
    }
  j["paths"] = std::move(paths);
  return j;
}

namespace {

int node_ref(const ojson& j, const Network& n, const char* what) {
  if (j.is_string()) {
    const int v = n.node_index(j.get<std::string>());
    if (v < 0)
      throw NetworkError(std::string(what) + ": unknown node \"" +
                         j.get<std::string>() + "\"");
    return v;
  }
  if (j.is_number_integer()) {
    const int v = j.get<int>();
    if (v < 0 || v >= static_cast<int>(n.nodes.size()))
      throw NetworkError(std::string(what) + ": node index " +
                         std::to_string(v) + " out of range");
    return v;
  }
  throw NetworkError(std::string(what) +
                     ": expected a node name or 0-based index");
}

}  // namespace

void network_from_json(const ojson& j, Network* n, PathSystem* p) {
  if (!j.is_object())
    throw NetworkError("network document must be a JSON object");
  for (const char* key : {"k", "nodes", "arcs", "senders", "receivers"})
    if (!j.contains(key))
      throw NetworkError(std::string("network document lacks \"") + key +
                         "\"");
  if (!j["k"].is_number_integer() || j["k"].get<int>() < 1)
    throw NetworkError("\"k\" must be a positive integer");
  n->k = j["k"].get<int>();
  n->nodes.clear();
  if (!j["nodes"].is_array() || j["nodes"].empty())
    throw NetworkError("\"nodes\" must be a nonempty array of names");
  std::set<std::string> seen;
  for (const auto& name : j["nodes"]) {
    if (!name.is_string())
      throw NetworkError("\"nodes\" entries must be strings");
    if (!seen.insert(name.get<std::string>()).second)
      throw NetworkError("duplicate node name \"" + name.get<std::string>() +
                         "\"");
    n->nodes.push_back(name.get<std::string>());
  }
  n->arcs.clear();
  if (!j["arcs"].is_array())
    throw NetworkError("\"arcs\" must be an array of [tail, head] pairs");
  for (const auto& pair : j["arcs"]) {
    if (!pair.is_array() || pair.size() != 2)
      throw NetworkError("each arc must be a [tail, head] pair");
    Arc a;
    a.tail = node_ref(pair[0], *n, "arc tail");
    a.head = node_ref(pair[1], *n, "arc head");
    n->arcs.push_back(a);
  }
  const auto read_endpoints = [&](const char* key, std::vector<int>* out) {
    const auto& list = j[key];
    if (!list.is_array() || list.size() != static_cast<std::size_t>(n->k))
      throw NetworkError(std::string("\"") + key +
                         "\" must list exactly k nodes");
    out->clear();
    for (const auto& ref : list) out->push_back(node_ref(ref, *n, key));
  };
  read_endpoints("senders", &n->senders);
  read_endpoints("receivers", &n->receivers);

  *p = PathSystem(n->k);
  if (!j.contains("paths") || !j["paths"].is_object())
    throw NetworkError("network document lacks a \"paths\" object");
  const auto& paths = j["paths"];
  std::size_t found = 0;
  for (int i = 0; i < n->k; ++i)
    for (int jj = 0; jj < n->k; ++jj) {
      const std::string key =
          std::to_string(i + 1) + "," + std::to_string(jj + 1);
      if (!paths.contains(key))
        throw NetworkError("missing path \"" + key + "\"");
      const auto& seq = paths[key];
      if (!seq.is_array())
        throw NetworkError("path \"" + key +
                           "\" must be an array of arc indices");
      for (const auto& idx : seq) {
        if (!idx.is_number_integer())
          throw NetworkError("path \"" + key + "\" has a non-integer entry");
        const int a = idx.get<int>();
        if (a < 0 || a >= static_cast<int>(n->arcs.size()))
          throw NetworkError("path \"" + key + "\": arc index " +
                             std::to_string(a) + " out of range");
        p->path(i, jj).push_back(a);
      }
      ++found;
    }
  if (paths.size() != found)
    throw NetworkError("\"paths\" holds keys beyond the k*k pairs");
}

ojson rate_report_json(const RateReport& r, const Network& n) {
  ojson j;
  ojson rates = ojson::array();
  for (const Rational& rate : r.rates) rates.push_back(rational_json(rate));
  j["rates"] = std::move(rates);
  j["conserved"] = r.conserved();
  ojson violations = ojson::array();
  for (const ConservationViolation& v : r.violations) {
    ojson one;
    one["commodity"] = v.commodity + 1;
    one["node"] = n.nodes[v.node];
    one["excess"] = rational_json(v.excess);
    violations.push_back(std::move(one));
  }
  j["violations"] = std::move(violations);
  return j;
}

ojson feasibility_report_json(const FeasibilityReport& r, const Network& n) {
  ojson j;
  j["feasible"] = r.feasible;
  if (r.worst_arc >= 0) {
    j["worst_arc"] = n.arc_str(r.worst_arc);
    j["worst_load"] = rational_json(r.worst_load);
  }
  return j;
}

ojson arc_loads_json(const MultiFlow& mf, const Network& n) {
  ojson loads = ojson::array();
  for (int a = 0; a < static_cast<int>(n.arcs.size()); ++a) {
    ojson one;
    one["arc"] = n.arc_str(a);
    one["load"] = rational_json(arc_load(mf, a));
    loads.push_back(std::move(one));
  }
  return loads;
}

std::string dump_json(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace multiflow
