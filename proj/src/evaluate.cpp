#include "multiflow/evaluate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

namespace multiflow {

std::string ClassKey::label(int k) const {
  return class_label(k, alpha, beta, gamma, delta);
}

ClassKey class_key(const SampleStats& st) {
  return ClassKey{st.alpha, st.beta, st.gamma, st.delta};
}

Rational g_component(const CoefficientTuple& c, const Sample& s, int ell) {
  Rational sum;
  for (const auto& [r, col] : s.elements) sum += c.at(ell, r, col);
  return sum;
}

Rational g_component(const GeneralDirection& d, const Sample& s, int ell) {
  Rational sum;
  for (const auto& [r, col] : s.elements) sum += d.at(ell, r, col);
  return sum;
}

Rational g_sample(const CoefficientTuple& c, const Sample& s) {
  Rational total;
  for (int l = 0; l < c.k; ++l) total += g_component(c, s, l).abs();
  return total;
}

Rational fixed_component(const FixedPointParams& p, int gamma, int n,
                         const IndexCategory& cat) {
  const int mnd = cat.is_col + cat.row_count;
  return Rational(cat.is_diag) * p.x + Rational(gamma - cat.is_diag) * p.y +
         Rational(mnd) * p.a + Rational(n - mnd) * p.b;
}

Rational fixed_component_dir(const FixedDirection& d, int gamma, int n,
                             const IndexCategory& cat) {
  const int mnd = cat.is_col + cat.row_count;
  return Rational(cat.is_diag) * d.xbar +
         Rational(gamma - cat.is_diag) * d.ybar + Rational(mnd) * d.abar +
         Rational(n - mnd) * d.bbar;
}

Rational g_fixed(const FixedPointParams& p, const Profile& pr) {
  Rational total;
  for (const auto& [cat, count] : pr.cats)
    total += Rational(count) * fixed_component(p, pr.gamma, pr.n, cat).abs();
  return total;
}

Rational profile_h_linear(const Profile& pr, const FixedDirection& d) {
  Rational h;
  for (const auto& [cat, count] : pr.cats) {
    const Rational v = fixed_component_dir(d, pr.gamma, pr.n, cat);
    const int m = 2 * cat.is_diag + cat.is_col + cat.row_count;
    h += Rational(count) * (m > 0 ? v : -v);
  }
  return h;
}

Rational shf_value_closed(int k, int alpha, int beta) {
  if (alpha < 1 || alpha > k || beta < alpha || beta > std::min(2 * alpha, k))
    throw std::invalid_argument("infeasible sample statistics alpha=" +
                                std::to_string(alpha) +
                                ", beta=" + std::to_string(beta) +
                                " for k=" + std::to_string(k));
  return Rational(3 * k * alpha - 2 * beta * alpha, Int(k) * k);
}

bool in_s_dagger(const CoefficientTuple& c, const Sample& s) {
  const SampleStats st = stats(s);
  for (int l = 0; l < c.k; ++l) {
    const int sign = g_component(c, s, l).sign();
    if (st.mult[l] > 0 ? sign <= 0 : sign >= 0) return false;
  }
  return true;
}

bool profile_in_dagger(const FixedPointParams& p, const Profile& pr) {
  for (const auto& [cat, count] : pr.cats) {
    (void)count;
    const int sign = fixed_component(p, pr.gamma, pr.n, cat).sign();
    const int m = 2 * cat.is_diag + cat.is_col + cat.row_count;
    if (m > 0 ? sign <= 0 : sign >= 0) return false;
  }
  return true;
}

namespace {

template <class I>
I abs_of(const I& v) {
  return v < I(0) ? I(-v) : v;
}

Int to_int(const Int& v) { return v; }
Int to_int(std::int64_t v) { return Int(static_cast<long>(v)); }

// Incremental enumeration state: mixed-radix digits over columns (0 = column
// absent, r = element (r, j)), per-layer sums of entries scaled to a common
// denominator, and running sample statistics.
template <class I>
struct OdometerState {
  int k = 0;
  const std::vector<I>* scaled = nullptr;  // k^3 entries, layer-major
  std::vector<int> digit;
  std::vector<I> sums;
  std::vector<int> mult, dm, nm;  // per index: total, diagonal, non-diagonal
  int alpha = 0, beta = 0, gamma = 0, delta = 0;

  OdometerState(int kk, const std::vector<I>& sc)
      : k(kk),
        scaled(&sc),
        digit(kk, 0),
        sums(kk, I(0)),
        mult(kk, 0),
        dm(kk, 0),
        nm(kk, 0) {}

  void bump(int v, int d) {
    const int old = mult[v];
    mult[v] += d;
    beta += (mult[v] > 0) - (old > 0);
    delta += (mult[v] == 1) - (old == 1);
  }

  void set_digit(int j, int nd) {
    const int od = digit[j];
    if (od == nd) return;
    if (od) {
      const int r = od - 1;
      for (int l = 0; l < k; ++l) sums[l] -= (*scaled)[(l * k + r) * k + j];
      --alpha;
      if (r == j) {
        --gamma;
        dm[r] -= 2;
        bump(r, -2);
      } else {
        --nm[r];
        --nm[j];
        bump(r, -1);
        bump(j, -1);
      }
    }
    if (nd) {
      const int r = nd - 1;
      for (int l = 0; l < k; ++l) sums[l] += (*scaled)[(l * k + r) * k + j];
      ++alpha;
      if (r == j) {
        ++gamma;
        dm[r] += 2;
        bump(r, 2);
      } else {
        ++nm[r];
        ++nm[j];
        bump(r, 1);
        bump(j, 1);
      }
    }
    digit[j] = nd;
  }

  void init_from_code(Int code) {
    std::vector<int> target(k, 0);
    for (int j = k - 1; j >= 0; --j) {
      const Int rem = code % (k + 1);
      target[j] = static_cast<int>(rem.get_si());
      code /= (k + 1);
    }
    for (int j = 0; j < k; ++j) set_digit(j, target[j]);
  }

  void advance() {
    int j = k - 1;
    while (digit[j] == k) set_digit(j--, 0);
    set_digit(j, digit[j] + 1);
  }

  I objective() const {
    I g(0);
    for (int l = 0; l < k; ++l) g += abs_of(sums[l]);
    return g;
  }

  ClassKey key() const { return ClassKey{alpha, beta, gamma, delta}; }

  TypeDescriptor type() const {
    TypeDescriptor t;
    t.pairs.reserve(k);
    for (int v = 0; v < k; ++v) t.pairs.emplace_back(dm[v], nm[v]);
    std::sort(t.pairs.begin(), t.pairs.end(), std::greater<>());
    return t;
  }
};

template <class I>
struct RangeResult {
  bool any = false;
  I best = I(0);
  std::map<ClassKey, std::set<TypeDescriptor>> achievers;
  Int count = 0;
};

template <class I>
void scan_range(int k, const std::vector<I>& scaled, const Int& first,
                const Int& last, RangeResult<I>& out) {
  OdometerState<I> st(k, scaled);
  st.init_from_code(first);
  Int code = first;
  while (true) {
    const I g = st.objective();
    if (!out.any || out.best < g) {
      out.any = true;
      out.best = g;
      out.achievers.clear();
      out.count = 0;
    }
    if (g == out.best) {
      out.achievers[st.key()].insert(st.type());
      ++out.count;
    }
    if (code == last) break;
    ++code;
    st.advance();
  }
}

template <class I>
MaxReport max_by_scan(int k, const std::vector<I>& scaled, const Int& denom,
                      int threads) {
  const Int total = sample_count(k);
  int t = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (t > 64) t = 64;
  if (total < 4096) t = 1;

  std::vector<RangeResult<I>> parts(t);
  const Int chunk = (total + t - 1) / t;
  std::vector<std::thread> workers;
  for (int i = 0; i < t; ++i) {
    const Int first = Int(1) + chunk * i;
    if (first > total) break;
    Int last = first + chunk - 1;
    if (last > total) last = total;
    workers.emplace_back([k, &scaled, first, last, &parts, i] {
      scan_range(k, scaled, first, last, parts[i]);
    });
  }
  for (auto& w : workers) w.join();

  RangeResult<I> merged;
  for (auto& part : parts) {
    if (!part.any) continue;
    if (!merged.any || merged.best < part.best) {
      merged.any = part.any;
      merged.best = part.best;
      merged.achievers = std::move(part.achievers);
      merged.count = part.count;
    } else if (part.best == merged.best) {
      for (auto& [key, types] : part.achievers)
        merged.achievers[key].insert(types.begin(), types.end());
      merged.count += part.count;
    }
  }

  MaxReport rep;
  rep.value = Rational(to_int(merged.best), denom);
  for (const auto& [key, types] : merged.achievers)
    rep.achievers.push_back(
        AchieverClass{key, {types.begin(), types.end()}});
  rep.max_count = merged.count;
  return rep;
}

}  // namespace

MaxReport g_max_exhaustive(const CoefficientTuple& c, int threads) {
  const int k = c.k;
  if (k < 1) throw std::invalid_argument("g_max_exhaustive requires k >= 1");
  if (k > max_enumeration_k())
    throw EnumerationTooLarge(
        "exhaustive evaluation for k=" + std::to_string(k) +
        " exceeds the cap k<=" + std::to_string(max_enumeration_k()) +
        " (set MULTIFLOW_MAX_K to raise it)");

  Int denom(1);
  for (const Rational& e : c.entries) denom = lcm(denom, e.den());
  std::vector<Int> scaled;
  scaled.reserve(c.entries.size());
  Int max_abs(0);
  for (const Rational& e : c.entries) {
    Int v = e.num() * (denom / e.den());
    if (abs(v) > max_abs) max_abs = abs(v);
    scaled.push_back(std::move(v));
  }

  const Int bound = max_abs * k * k;
  if (bound < (Int(1) << 62)) {
    std::vector<std::int64_t> fast;
    fast.reserve(scaled.size());
    for (const Int& v : scaled) fast.push_back(v.get_si());
    return max_by_scan<std::int64_t>(k, fast, denom, threads);
  }
  return max_by_scan<Int>(k, scaled, denom, threads);
}

MaxReport g_max_fixed(const FixedPointParams& p) {
  if (!p.satisfies_invariants())
    throw std::invalid_argument("fixed-point parameters violate constraints");
  std::map<Rational, std::map<ClassKey, std::set<TypeDescriptor>>> table;
  enumerate_profiles(p.k, [&](const Profile& pr) {
    const Rational v = g_fixed(p, pr);
    const SampleStats st = pr.to_stats();
    table[v][class_key(st)].insert(pr.type());
  });

  MaxReport rep;
  for (auto it = table.rbegin(); it != table.rend(); ++it) {
    ValueEntry entry;
    entry.value = it->first;
    for (const auto& [key, types] : it->second)
      entry.classes.push_back(
          AchieverClass{key, {types.begin(), types.end()}});
    rep.values.push_back(std::move(entry));
  }
  rep.value = rep.values.front().value;
  rep.achievers = rep.values.front().classes;
  return rep;
}

}  // namespace multiflow
