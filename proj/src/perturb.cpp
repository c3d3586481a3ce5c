#include "multiflow/perturb.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace multiflow {

FixedPointParams build_shf(int k) {
  if (k < 1) throw std::invalid_argument("build_shf requires k >= 1");
  FixedPointParams p;
  p.k = k;
  const Int k2 = Int(k) * k;
  p.x = Rational(2 * k - 1, k2);
  p.a = k >= 2 ? Rational(k - 1, k2) : Rational(0);
  p.y = k >= 2 ? Rational(-1, k2) : Rational(0);
  p.b = k >= 3 ? Rational(-1, k2) : Rational(0);
  if (!p.satisfies_invariants())
    throw InternalInconsistency("strong homogeneous flow violates constraints");
  return p;
}

std::vector<int> maximizing_d(int k) {
  if (k < 1) throw std::invalid_argument("maximizing_d requires k >= 1");
  const int ell = k / 4;
  switch (k % 4) {
    case 0:
      return {3 * ell};
    case 1:
      return {3 * ell + 1};
    case 2:
      return {3 * ell + 1, 3 * ell + 2};
    default:
      return {3 * ell + 2};
  }
}

FixedDirection delta_star(int k) {
  if (k < 1) throw std::invalid_argument("delta_star requires k >= 1");
  if (k % 4 == 2)
    throw NoValidDirection(
        "no valid perturbation direction for k=" + std::to_string(k) +
        ": two sample sizes maximize at the strong homogeneous flow");
  if (k < 3)
    throw NoValidDirection(
        "no valid perturbation direction for k=1: the fixed-direction "
        "space is trivial");
  const int d = maximizing_d(k).front();
  // abar = c * bbar with c = k^2/(2d) - k + 1; |abar| = 1; the sign is fixed
  // by requiring 2*abar + (2d - k - 2)*bbar < 0.
  const Rational c = Rational(Int(k) * k, 2 * d) - Rational(k - 1);
  if (c.is_zero())
    throw InternalInconsistency("degenerate direction constraint at k=" +
                                std::to_string(k));
  const Rational f = Rational(2) + Rational(2 * d - k - 2) / c;
  if (f.is_zero())
    throw InternalInconsistency(
        "no strictly decreasing direction sign exists at k=" +
        std::to_string(k));
  const Rational abar = f.sign() > 0 ? Rational(-1) : Rational(1);
  const FixedDirection dir = FixedDirection::from_ab(k, abar, abar / c);
  if ((Rational(2) * dir.abar + Rational(2 * d - k - 2) * dir.bbar).sign() >= 0)
    throw InternalInconsistency("direction fails its decrease condition");
  return dir;
}

HCoefficients h_coefficients(const SampleStats& st, PerturbationClass cls,
                             int k) {
  const int alpha = st.alpha, beta = st.beta, gamma = st.gamma,
            delta = st.delta;
  HCoefficients h;
  if (cls == PerturbationClass::I) {
    h.A = Rational(gamma);
    h.B = Rational(gamma) * Rational(2 * beta - k - 1);
    h.C = Rational(2 * (alpha - gamma));
    h.D = Rational(alpha - gamma) * Rational(2 * beta - k - 2);
  } else {
    h.A = Rational(gamma);
    h.B = Rational(gamma) * Rational(k - 2 * delta - 1);
    h.C = Rational(2 * (k - gamma - delta));
    h.D = Rational(k * k - (2 * delta + gamma + 2) * k + 2 * gamma * delta +
                   2 * gamma + 2 * delta);
  }
  return h;
}

Rational h_value(const SampleStats& st, PerturbationClass cls,
                 const FixedDirection& d, const Rational& epsilon) {
  const HCoefficients h = h_coefficients(st, cls, d.k);
  return (h.A * d.xbar + h.B * d.ybar + h.C * d.abar + h.D * d.bbar) * epsilon;
}

Rational max_valid_epsilon(int k) {
  if (k < 3) throw std::invalid_argument("max_valid_epsilon requires k >= 3");
  if (k > 5)
    throw EnumerationTooLarge(
        "max_valid_epsilon scans every sample and layer; capped at k<=5, "
        "got k=" + std::to_string(k));
  const CoefficientTuple cstar = expand(build_shf(k));
  const GeneralDirection dstar = expand_direction(delta_star(k));
  std::optional<Rational> bound;
  enumerate_samples(k, [&](const Sample& s) {
    for (int l = 0; l < k; ++l) {
      const Rational v = g_component(cstar, s, l);
      if (v.is_zero()) continue;
      const Rational w = g_component(dstar, s, l);
      if (v.sign() * w.sign() >= 0) continue;
      const Rational eps = -v / w;
      if (!bound || eps < *bound) bound = eps;
    }
  });
  if (!bound)
    throw InternalInconsistency("no layer sum ever changes sign under the "
                                "perturbation direction");
  return *bound;
}

std::vector<ClassInfo> class_infos(int k) {
  const FixedDirection dir = delta_star(k);
  std::map<ClassKey, ClassInfo> by_key;
  enumerate_profiles(k, [&](const Profile& pr) {
    const SampleStats st = pr.to_stats();
    const ClassKey key = class_key(st);
    auto [it, fresh] = by_key.try_emplace(key);
    ClassInfo& info = it->second;
    if (fresh) {
      info.key = key;
      info.value = shf_value_closed(k, st.alpha, st.beta);
      info.cls = classify(st, dir, k);
      const HCoefficients h = h_coefficients(st, info.cls, k);
      info.slope =
          h.A * dir.xbar + h.B * dir.ybar + h.C * dir.abar + h.D * dir.bbar;
    }
    const TypeDescriptor t = pr.type();
    if (std::find(info.types.begin(), info.types.end(), t) ==
        info.types.end())
      info.types.push_back(t);
  });
  std::vector<ClassInfo> out;
  out.reserve(by_key.size());
  for (auto& [key, info] : by_key) {
    std::sort(info.types.begin(), info.types.end());
    out.push_back(std::move(info));
  }
  return out;
}

namespace {

// Key for grouping table rows: class II sorts after class I, then by class.
struct RowOrder {
  int cls;
  ClassKey key;
  TypeDescriptor type;
  auto operator<=>(const RowOrder&) const = default;
};

}  // namespace

std::vector<TableRow> table_rows(int k) {
  const std::vector<ClassInfo> infos = class_infos(k);

  // Group by (alpha, beta); split by gamma, then by type, until value, slope
  // and class are uniform within each displayed row.
  std::map<std::pair<int, int>, std::vector<const ClassInfo*>> by_ab;
  for (const ClassInfo& info : infos)
    by_ab[{info.key.alpha, info.key.beta}].push_back(&info);

  std::map<RowOrder, TableRow> rows;
  const auto uniform = [](const std::vector<const ClassInfo*>& group) {
    for (const ClassInfo* info : group)
      if (info->value != group.front()->value ||
          info->slope != group.front()->slope || info->cls != group.front()->cls)
        return false;
    return true;
  };
  const auto emit = [&](const ClassInfo& rep, const std::string& label,
                        const TypeDescriptor& order_type) {
    rows.emplace(
        RowOrder{rep.cls == PerturbationClass::II ? 1 : 0, rep.key, order_type},
        TableRow{label, rep.value, rep.slope, rep.cls});
  };

  for (const auto& [ab, group] : by_ab) {
    if (uniform(group)) {
      std::set<int> gammas;
      for (const ClassInfo* info : group) gammas.insert(info->key.gamma);
      const ClassInfo& rep = *group.front();
      emit(rep,
           gammas.size() == 1
               ? class_label(k, ab.first, ab.second, *gammas.begin())
               : class_label(k, ab.first, ab.second),
           TypeDescriptor{});
      continue;
    }
    std::map<int, std::vector<const ClassInfo*>> by_gamma;
    for (const ClassInfo* info : group)
      by_gamma[info->key.gamma].push_back(info);
    for (const auto& [gamma, sub] : by_gamma) {
      if (uniform(sub)) {
        emit(*sub.front(), class_label(k, ab.first, ab.second, gamma),
             TypeDescriptor{});
        continue;
      }
      for (const ClassInfo* info : sub)
        for (const TypeDescriptor& t : info->types) emit(*info, t.str(), t);
    }
  }

  std::vector<TableRow> out;
  out.reserve(rows.size());
  for (auto& [order, row] : rows) out.push_back(std::move(row));
  return out;
}

Rational epsilon_star(int k) {
  const std::vector<ClassInfo> infos = class_infos(k);
  const Rational top_value =
      std::max_element(infos.begin(), infos.end(),
                       [](const ClassInfo& u, const ClassInfo& v) {
                         return u.value < v.value;
                       })
          ->value;

  std::set<ClassKey> top_keys;
  std::optional<Rational> top_slope;
  for (const ClassInfo& info : infos) {
    if (info.value != top_value) continue;
    top_keys.insert(info.key);
    if (!top_slope)
      top_slope = info.slope;
    else if (*top_slope != info.slope)
      throw InternalInconsistency(
          "maximizing classes do not decrease uniformly at k=" +
          std::to_string(k));
  }
  if (top_slope->sign() >= 0)
    throw InternalInconsistency(
        "perturbation direction fails to decrease the maximum at k=" +
        std::to_string(k));

  std::set<Rational> candidates;
  for (const ClassInfo& info : infos) {
    if (info.value >= top_value || info.slope <= *top_slope) continue;
    // top_value + eps*top_slope == info.value + eps*info.slope
    const Rational eps = (top_value - info.value) / (info.slope - *top_slope);
    if (eps.sign() > 0) candidates.insert(eps);
  }

  const FixedPointParams base = build_shf(k);
  const FixedDirection dir = delta_star(k);
  for (const Rational& eps : candidates) {
    FixedPointParams cand = base;
    cand.x += eps * dir.xbar;
    cand.y += eps * dir.ybar;
    cand.a += eps * dir.abar;
    cand.b += eps * dir.bbar;
    const MaxReport rep = g_max_fixed(cand);
    if (rep.value != top_value + eps * *top_slope) continue;
    bool new_class = false;
    for (const AchieverClass& ach : rep.achievers)
      if (!top_keys.count(ach.key)) new_class = true;
    if (new_class) return eps;
  }
  throw InternalInconsistency(
      "no crossing size passes direct verification at k=" + std::to_string(k));
}

PerturbResult build_cdd(int k) {
  if (k < 1 || k > 10)
    throw UnsupportedK("the optimum is implemented exactly for 1 <= k <= 10; "
                       "got k=" + std::to_string(k));
  PerturbResult result;
  result.k = k;
  const FixedPointParams shf = build_shf(k);
  if (k == 1 || k == 2 || k == 6 || k == 10) {
    result.shf_optimal = true;
    result.delta_star = FixedDirection::from_ab(k, Rational(0), Rational(0));
    result.epsilon_star = Rational(0);
    result.cdd = shf;
  } else {
    result.shf_optimal = false;
    result.delta_star = delta_star(k);
    result.epsilon_star = epsilon_star(k);
    result.cdd = shf;
    result.cdd.x += result.epsilon_star * result.delta_star.xbar;
    result.cdd.y += result.epsilon_star * result.delta_star.ybar;
    result.cdd.a += result.epsilon_star * result.delta_star.abar;
    result.cdd.b += result.epsilon_star * result.delta_star.bbar;
  }
  if (!result.cdd.satisfies_invariants())
    throw InternalInconsistency("perturbed point violates constraints");
  result.report = g_max_fixed(result.cdd);
  result.optimum = result.report.value;
  result.max_set = format_max_set(k, result.report.achievers);
  return result;
}

std::vector<std::string> format_max_set(
    int k, const std::vector<AchieverClass>& achievers) {
  // All realizable (class, type) pairs, for coverage comparison.
  std::map<ClassKey, std::set<TypeDescriptor>> all;
  enumerate_profiles(k, [&](const Profile& pr) {
    all[class_key(pr.to_stats())].insert(pr.type());
  });
  std::map<ClassKey, std::set<TypeDescriptor>> ach;
  for (const AchieverClass& a : achievers)
    ach[a.key].insert(a.types.begin(), a.types.end());

  // Labels ordered by (alpha, beta, gamma, delta, type).
  std::vector<std::string> labels;
  std::map<std::pair<int, int>, std::vector<ClassKey>> all_ab, ach_ab;
  for (const auto& [key, types] : all)
    all_ab[{key.alpha, key.beta}].push_back(key);
  for (const auto& [key, types] : ach)
    ach_ab[{key.alpha, key.beta}].push_back(key);

  for (const auto& [ab, keys] : ach_ab) {
    // Full (alpha, beta) coverage?
    bool full_ab = true;
    for (const ClassKey& key : all_ab[ab])
      if (ach[key] != all[key]) full_ab = false;
    if (full_ab && keys.size() == all_ab[ab].size()) {
      labels.push_back(class_label(k, ab.first, ab.second));
      continue;
    }
    // Per-gamma coverage.
    std::map<int, std::vector<ClassKey>> all_g, ach_g;
    for (const ClassKey& key : all_ab[ab]) all_g[key.gamma].push_back(key);
    for (const ClassKey& key : keys) ach_g[key.gamma].push_back(key);
    for (const auto& [gamma, gkeys] : ach_g) {
      bool full_g = true;
      for (const ClassKey& key : all_g[gamma])
        if (ach[key] != all[key]) full_g = false;
      if (full_g && gkeys.size() == all_g[gamma].size()) {
        labels.push_back(class_label(k, ab.first, ab.second, gamma));
        continue;
      }
      for (const ClassKey& key : gkeys) {
        if (ach[key] == all[key]) {
          labels.push_back(
              class_label(k, key.alpha, key.beta, key.gamma, key.delta));
        } else {
          for (const TypeDescriptor& t : ach[key]) labels.push_back(t.str());
        }
      }
    }
  }
  return labels;
}

}  // namespace multiflow
