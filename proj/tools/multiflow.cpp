// Command-line front end: exact optima, the strong homogeneous flow and its
// perturbation, class tables, optimality certificates, cross-checked
// evaluation, the limit table, and flow assembly on concrete networks.
//
// Exit codes: 0 success, 2 usage or input error (including unsupported k),
// 3 enumeration above the configured cap, 4 verification failure.
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multiflow/certify.hpp"
#include "multiflow/coefficients.hpp"
#include "multiflow/evaluate.hpp"
#include "multiflow/json_io.hpp"
#include "multiflow/network.hpp"
#include "multiflow/perturb.hpp"
#include "multiflow/rational.hpp"
#include "multiflow/samples.hpp"

namespace {

using multiflow::ojson;
using multiflow::Rational;

// "12/11 (1.090909)": exact fraction plus a 6-digit decimal for reading.
std::string human(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.approx());
  return r.str() + " (" + buf + ")";
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

std::string point_line(const multiflow::FixedPointParams& p) {
  return "x = " + p.x.str() + ", y = " + p.y.str() + ", a = " + p.a.str() +
         ", b = " + p.b.str();
}

void emit(const ojson& j) { std::cout << multiflow::dump_json(j); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw multiflow::JsonError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cmd_optimum(int k, bool as_json) {
  const multiflow::PerturbResult r = multiflow::build_cdd(k);
  const Rational rate = r.optimum.reciprocal();
  if (as_json) {
    ojson j;
    j["k"] = k;
    j["optimum"] = multiflow::rational_json(r.optimum);
    j["rate"] = multiflow::rational_json(rate);
    j["point"] = multiflow::fixed_point_json(r.cdd);
    j["max_set"] = r.max_set;
    emit(j);
    return 0;
  }
  std::cout << "k = " << k << "\n"
            << "optimum  " << human(r.optimum) << "\n"
            << "rate     " << human(rate) << "\n"
            << "point    " << point_line(r.cdd) << "\n"
            << "max set  " << join(r.max_set) << "\n";
  return 0;
}

int cmd_shf(int k, bool as_json) {
  const multiflow::FixedPointParams p = multiflow::build_shf(k);
  const multiflow::MaxReport report = multiflow::g_max_fixed(p);
  const std::vector<std::string> max_set =
      multiflow::format_max_set(k, report.achievers);
  if (as_json) {
    ojson j;
    j["k"] = k;
    j["point"] = multiflow::fixed_point_json(p);
    j["value"] = multiflow::rational_json(report.value);
    j["max_set"] = max_set;
    emit(j);
    return 0;
  }
  std::cout << "k = " << k << "\n"
            << "point    " << point_line(p) << "\n"
            << "value    " << human(report.value) << "\n"
            << "max set  " << join(max_set) << "\n";
  return 0;
}

int cmd_perturb(int k, bool as_json) {
  const multiflow::PerturbResult r = multiflow::build_cdd(k);
  if (as_json) {
    emit(multiflow::perturb_result_json(r));
    return 0;
  }
  std::cout << "k = " << k << "\n";
  if (r.shf_optimal)
    std::cout << "the strong homogeneous flow is already optimal; no "
                 "perturbation applies\n";
  std::cout << "delta*   xbar = " << r.delta_star.xbar.str()
            << ", ybar = " << r.delta_star.ybar.str()
            << ", abar = " << r.delta_star.abar.str()
            << ", bbar = " << r.delta_star.bbar.str() << "\n"
            << "eps*     " << human(r.epsilon_star) << "\n"
            << "point    " << point_line(r.cdd) << "\n"
            << "optimum  " << human(r.optimum) << "\n"
            << "max set  " << join(r.max_set) << "\n";
  return 0;
}

int cmd_table(int k, bool as_json, bool as_csv) {
  const std::vector<multiflow::TableRow> rows = multiflow::table_rows(k);
  if (as_json) {
    emit(multiflow::table_json(k, rows));
    return 0;
  }
  if (as_csv) {
    std::cout << multiflow::table_csv(rows);
    return 0;
  }
  std::size_t width = 5;
  for (const auto& row : rows) width = std::max(width, row.label.size());
  std::cout << "k = " << k << "\n";
  for (const auto& row : rows) {
    std::string label = row.label;
    label.resize(width, ' ');
    std::cout << label << "  "
              << (row.cls == multiflow::PerturbationClass::II ? "II" : "I ")
              << "  value " << human(row.value) << "  slope "
              << row.slope.str() << " eps\n";
  }
  return 0;
}

void print_certificate(const multiflow::OptimalityCertificate& c) {
  std::cout << "k = " << c.k << " ("
            << (c.reduced_scope ? "fixed-direction subspace" : "full space")
            << ")\n"
            << "anchor   " << point_line(c.anchor) << "\n"
            << "optimum  " << human(c.optimum) << "\n";
  for (const auto& cc : c.classes)
    std::cout << cc.label << ": count " << cc.sample_count.get_str()
              << ", H_raw = (" << cc.h_raw.A.str() << ", " << cc.h_raw.B.str()
              << "), norm " << cc.normalization.get_str() << ", H = ("
              << cc.h.A.str() << ", " << cc.h.B.str() << ")"
              << (cc.dagger_ok ? ", strict signs ok" : ", STRICT SIGNS FAIL")
              << (cc.residual_ok ? ", reduces to aggregates" : "") << "\n";
  std::cout << "weights  ";
  for (std::size_t i = 0; i < c.weights.size(); ++i)
    std::cout << (i ? ", " : "") << c.weights[i].str();
  std::cout << "  (reference ";
  for (std::size_t i = 0; i < c.reference.size(); ++i)
    std::cout << (i ? ":" : "") << c.reference[i].get_str();
  std::cout << (c.weights_match_reference ? ", match" : ", MISMATCH") << ")\n"
            << "combination vanishes: " << (c.combination_vanishes ? "yes" : "NO")
            << "\n";
  if (!c.reduced_scope)
    std::cout << "vanishes on the full direction space: "
              << (c.full_space_verified ? "yes" : "NO") << "\n";
  for (const std::string& note : c.notes) std::cout << "note: " << note << "\n";
  std::cout << "verified: " << (c.verified ? "yes" : "NO") << "\n";
}

void print_shf_report(const multiflow::ShfOptimalityReport& r) {
  std::cout << "k = " << r.k << "\n"
            << "optimum  " << human(r.optimum) << "\n"
            << "improving-direction system feasible: "
            << (r.fm.feasible ? "YES" : "no") << "\n"
            << "contradiction rows: ";
  for (std::size_t i = 0; i < r.contradiction_rows.size(); ++i)
    std::cout << (i ? ", " : "") << r.contradiction_rows[i];
  std::cout << "\nmultipliers: ";
  for (std::size_t i = 0; i < r.farkas_weights.size(); ++i)
    std::cout << (i ? ", " : "") << r.farkas_weights[i].str();
  std::cout << "\ngrid points scanned: " << r.grid_points
            << ", improving: " << r.improving_directions << "\n";
  for (const std::string& note : r.notes) std::cout << "note: " << note << "\n";
  std::cout << "verified: " << (r.verified ? "yes" : "NO") << "\n";
}

int cmd_certify(int k, bool as_json) {
  if (k == 6 || k == 10) {
    const multiflow::ShfOptimalityReport r = multiflow::verify_shf_optimal(k);
    ojson j = multiflow::shf_report_json(r);
    if (k == 10) {
      const Rational delta = multiflow::frac(1, 1800);
      const multiflow::CoefficientTuple witness =
          multiflow::nonuniqueness_witness_k10(delta);
      const multiflow::FixedPointParams back = multiflow::symmetrize(witness);
      const multiflow::MaxReport at = multiflow::g_max_fixed(back);
      ojson w;
      w["delta"] = multiflow::rational_json(delta);
      w["optimum"] = multiflow::rational_json(at.value);
      w["distinct"] =
          !(witness == multiflow::expand(multiflow::build_shf(10)));
      j["second_optimum_witness"] = std::move(w);
      if (!as_json)
        std::cout << "second optimum witness (delta = 1/1800): optimum "
                  << human(at.value) << ", distinct from the strong "
                  << "homogeneous flow\n";
    }
    if (as_json)
      emit(j);
    else
      print_shf_report(r);
    return r.verified ? 0 : 4;
  }
  const multiflow::OptimalityCertificate cert = multiflow::verify_optimality(k);
  ojson j = multiflow::optimality_certificate_json(cert);
  if (k == 3 || k == 4) {
    j["uniqueness_kernel_dimension"] =
        static_cast<std::int64_t>(multiflow::uniqueness_kernel(k));
  }
  if (as_json) {
    emit(j);
  } else {
    print_certificate(cert);
    if (k == 3 || k == 4)
      std::cout << "uniqueness kernel dimension: "
                << multiflow::uniqueness_kernel(k) << "\n";
  }
  return cert.verified ? 0 : 4;
}

int cmd_verify(int k, const std::string& point_name, bool exhaustive,
               int threads, bool as_json) {
  multiflow::FixedPointParams point;
  if (point_name == "shf")
    point = multiflow::build_shf(k);
  else
    point = multiflow::build_cdd(k).cdd;
  const multiflow::MaxReport prof = multiflow::g_max_fixed(point);
  bool verified = true;
  ojson j;
  j["k"] = k;
  j["point"] = point_name;
  j["profile_value"] = multiflow::rational_json(prof.value);
  j["max_set"] = multiflow::format_max_set(k, prof.achievers);
  if (point_name == "shf") {
    const Rational closed = multiflow::shf_max_closed(k);
    j["closed_value"] = multiflow::rational_json(closed);
    verified = verified && closed == prof.value;
  }
  j["exhaustive"] = exhaustive;
  if (exhaustive) {
    const multiflow::MaxReport ex =
        multiflow::g_max_exhaustive(multiflow::expand(point), threads);
    j["exhaustive_value"] = multiflow::rational_json(ex.value);
    const bool match =
        ex.value == prof.value && ex.achievers == prof.achievers;
    j["achievers_match"] = match;
    verified = verified && match;
  }
  j["verified"] = verified;
  if (as_json) {
    emit(j);
  } else {
    std::cout << "k = " << k << ", point " << point_name << "\n"
              << "profile maximum     " << human(prof.value) << "\n"
              << "max set             "
              << join(multiflow::format_max_set(k, prof.achievers)) << "\n";
    if (j.contains("closed_value"))
      std::cout << "closed-form maximum " << human(prof.value) << "\n";
    if (exhaustive)
      std::cout << "exhaustive maximum  "
                << human(multiflow::rational_from_json(j["exhaustive_value"]))
                << (j["achievers_match"].get<bool>()
                        ? " (classes agree)\n"
                        : " (CLASS MISMATCH)\n");
    std::cout << "verified: " << (verified ? "yes" : "NO") << "\n";
  }
  return verified ? 0 : 4;
}

int cmd_limit(int k_max, bool as_json, bool as_csv) {
  const std::vector<multiflow::AsymptoticRow> rows =
      multiflow::asymptotic_table(k_max);
  if (as_json) {
    emit(multiflow::asymptotic_json(rows));
    return 0;
  }
  if (as_csv) {
    std::cout << "k,d,value,gap\n";
    for (const auto& row : rows)
      std::cout << row.k << ',' << row.d << ',' << row.value.str() << ','
                << row.gap.str() << '\n';
    return 0;
  }
  for (const auto& row : rows)
    std::cout << "k = " << row.k << "  d = " << row.d << "  value "
              << human(row.value) << "  gap to 9/8: " << row.gap.str() << "\n";
  return 0;
}

int cmd_flow(int k, const std::string& network_file,
             const std::string& generate_spec, const std::string& coef_file,
             const std::string& point_name, const std::string& scale_mode,
             int threads, bool as_json) {
  multiflow::Network net;
  multiflow::PathSystem paths;
  if (!network_file.empty()) {
    const ojson doc = ojson::parse(read_file(network_file));
    multiflow::network_from_json(doc, &net, &paths);
    if (net.k != k)
      throw multiflow::NetworkError("network file has k = " +
                                    std::to_string(net.k) + ", expected " +
                                    std::to_string(k));
    std::string why;
    if (!multiflow::validate_strongly_reachable(net, paths, &why))
      throw multiflow::NetworkError("network is not strongly reachable: " +
                                    why);
  } else if (generate_spec == "disjoint") {
    multiflow::GeneratedNetwork g = multiflow::generate_disjoint_network(k);
    net = std::move(g.net);
    paths = std::move(g.paths);
  } else if (generate_spec.rfind("shared:", 0) == 0) {
    const multiflow::Sample s =
        multiflow::Sample::parse(k, generate_spec.substr(7));
    multiflow::GeneratedNetwork g =
        multiflow::generate_shared_arc_network(k, s);
    net = std::move(g.net);
    paths = std::move(g.paths);
  } else {
    throw multiflow::NetworkError(
        "--generate expects disjoint or shared:\"(i,j);...\"");
  }

  multiflow::CoefficientTuple c;
  std::string point_desc = point_name;
  if (!coef_file.empty()) {
    c = multiflow::coefficients_from_json(ojson::parse(read_file(coef_file)));
    if (c.k != k)
      throw multiflow::JsonError("coefficient file has k = " +
                                 std::to_string(c.k) + ", expected " +
                                 std::to_string(k));
    point_desc = "file";
  } else if (point_name == "shf") {
    c = multiflow::expand(multiflow::build_shf(k));
  } else {
    c = multiflow::expand(multiflow::build_cdd(k).cdd);
  }

  Rational factor(1);
  if (scale_mode == "auto") {
    Rational max_g;
    if (!coef_file.empty()) {
      if (multiflow::is_fixed_point(c) && multiflow::validate_membership(c))
        max_g = multiflow::g_max_fixed(multiflow::symmetrize(c)).value;
      else
        max_g = multiflow::g_max_exhaustive(c, threads).value;
    } else if (point_name == "shf") {
      max_g = multiflow::g_max_fixed(multiflow::build_shf(k)).value;
    } else {
      max_g = multiflow::build_cdd(k).optimum;
    }
    if (!max_g.is_zero()) factor = max_g.reciprocal();
  }

  const multiflow::CoefficientTuple scaled = multiflow::scale(c, factor);
  const multiflow::MultiFlow mf = multiflow::assemble(scaled, net, paths);
  const multiflow::RateReport rates =
      multiflow::check_conservation_and_rate(mf, net);
  const multiflow::FeasibilityReport feas =
      multiflow::check_feasibility(mf, net);
  const bool ok = rates.conserved() && feas.feasible;

  if (as_json) {
    ojson j;
    j["k"] = k;
    j["point"] = point_desc;
    j["scale"] = multiflow::rational_json(factor);
    j["network"] = multiflow::network_json(net, paths);
    const ojson rate_part = multiflow::rate_report_json(rates, net);
    j["rates"] = rate_part["rates"];
    j["conserved"] = rate_part["conserved"];
    j["violations"] = rate_part["violations"];
    const ojson feas_part = multiflow::feasibility_report_json(feas, net);
    j["feasible"] = feas_part["feasible"];
    if (feas_part.contains("worst_arc")) {
      j["worst_arc"] = feas_part["worst_arc"];
      j["worst_load"] = feas_part["worst_load"];
    }
    j["loads"] = multiflow::arc_loads_json(mf, net);
    emit(j);
    return ok ? 0 : 4;
  }

  std::cout << "k = " << k << ", point " << point_desc << ", scale "
            << factor.str() << "\n";
  std::cout << "rates   ";
  for (std::size_t i = 0; i < rates.rates.size(); ++i)
    std::cout << (i ? ", " : "") << rates.rates[i].str();
  std::cout << "\nconserved: " << (rates.conserved() ? "yes" : "NO") << "\n";
  for (const auto& v : rates.violations)
    std::cout << "  commodity " << v.commodity + 1 << " at "
              << net.nodes[v.node] << ": excess " << v.excess.str() << "\n";
  if (feas.worst_arc >= 0)
    std::cout << "worst arc " << net.arc_str(feas.worst_arc) << " load "
              << human(feas.worst_load) << "\n";
  std::cout << "feasible: " << (feas.feasible ? "yes" : "NO") << "\n";
  return ok ? 0 : 4;
}

int fail(int code, const char* prefix, const std::exception& e) {
  std::cerr << "multiflow: " << prefix << e.what() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact constructor, evaluator and verifier for optimal multi-flow "
      "coefficient tuples on k-pair networks"};
  app.require_subcommand(1);

  int k = 0;
  int k_max = 10;
  int threads = 0;
  bool as_json = false;
  bool as_csv = false;
  bool exhaustive = false;
  std::string point_name = "optimal";
  std::string network_file;
  std::string generate_spec;
  std::string coef_file;
  std::string scale_mode = "auto";

  const auto add_common = [&](CLI::App* sub, bool with_csv = false) {
    sub->add_flag("--json", as_json, "machine-readable JSON output");
    if (with_csv) {
      sub->add_flag("--csv", as_csv, "CSV output")
          ->excludes(sub->get_option("--json"));
    }
    sub->add_option("--threads", threads,
                    "worker threads for exhaustive enumeration (0 = all)");
  };

  CLI::App* c_optimum = app.add_subcommand(
      "optimum", "exact optimal value, optimal point and routing rate");
  c_optimum->add_option("--k", k, "number of commodity pairs")->required();
  add_common(c_optimum);

  CLI::App* c_shf = app.add_subcommand(
      "shf", "the strong homogeneous flow and its maximum");
  c_shf->add_option("--k", k, "number of commodity pairs")->required();
  add_common(c_shf);

  CLI::App* c_perturb = app.add_subcommand(
      "perturb", "perturbation direction, size and perturbed point");
  c_perturb->add_option("--k", k, "number of commodity pairs")->required();
  add_common(c_perturb);

  CLI::App* c_table = app.add_subcommand(
      "table", "class table at the strong homogeneous flow");
  c_table->add_option("--k", k, "number of commodity pairs")->required();
  add_common(c_table, /*with_csv=*/true);

  CLI::App* c_certify = app.add_subcommand(
      "certify", "optimality certificate or infeasibility proof");
  c_certify->add_option("--k", k, "number of commodity pairs")->required();
  add_common(c_certify);

  CLI::App* c_verify = app.add_subcommand(
      "verify", "cross-check profile evaluation against closed forms and "
                "full enumeration");
  c_verify->add_option("--k", k, "number of commodity pairs")->required();
  c_verify->add_option("--point", point_name, "shf or optimal")
      ->check(CLI::IsMember({"shf", "optimal"}));
  c_verify->add_flag("--exhaustive", exhaustive,
                     "also enumerate every sample");
  add_common(c_verify);

  CLI::App* c_limit =
      app.add_subcommand("limit", "maxima at the strong homogeneous flow "
                                  "and their gap to 9/8");
  c_limit->add_option("--kmax", k_max, "last k of the table")->required();
  add_common(c_limit, /*with_csv=*/true);

  CLI::App* c_flow = app.add_subcommand(
      "flow", "assemble a multi-flow on a network and check rates, "
              "conservation and feasibility");
  c_flow->add_option("--k", k, "number of commodity pairs")->required();
  CLI::Option* o_net =
      c_flow->add_option("--network", network_file, "network JSON file");
  c_flow->add_option("--generate", generate_spec,
                     "disjoint or shared:\"(i,j);...\"")
      ->excludes(o_net);
  c_flow->add_option("--coefficients", coef_file,
                     "coefficient tuple JSON file (overrides --point)");
  c_flow->add_option("--point", point_name, "shf or optimal")
      ->check(CLI::IsMember({"shf", "optimal"}));
  c_flow->add_option("--scale", scale_mode,
                     "auto (reciprocal of the point's maximum) or none")
      ->check(CLI::IsMember({"auto", "none"}));
  add_common(c_flow);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_optimum) return cmd_optimum(k, as_json);
    if (*c_shf) return cmd_shf(k, as_json);
    if (*c_perturb) return cmd_perturb(k, as_json);
    if (*c_table) return cmd_table(k, as_json, as_csv);
    if (*c_certify) return cmd_certify(k, as_json);
    if (*c_verify)
      return cmd_verify(k, point_name, exhaustive, threads, as_json);
    if (*c_limit) return cmd_limit(k_max, as_json, as_csv);
    if (*c_flow) {
      if (network_file.empty() && generate_spec.empty()) {
        std::cerr << "multiflow: flow needs --network FILE or --generate "
                     "SPEC\n";
        return 2;
      }
      return cmd_flow(k, network_file, generate_spec, coef_file, point_name,
                      scale_mode, threads, as_json);
    }
  } catch (const multiflow::UnsupportedK& e) {
    return fail(2, "unsupported: ", e);
  } catch (const multiflow::NoValidDirection& e) {
    return fail(2, "", e);
  } catch (const multiflow::EnumerationTooLarge& e) {
    return fail(3, "enumeration cap: ", e);
  } catch (const multiflow::CertificateError& e) {
    return fail(4, "verification failure: ", e);
  } catch (const multiflow::InternalInconsistency& e) {
    return fail(4, "verification failure: ", e);
  } catch (const ojson::parse_error& e) {
    return fail(2, "bad JSON: ", e);
  } catch (const std::exception& e) {
    return fail(2, "", e);
  }
  return 0;
}
