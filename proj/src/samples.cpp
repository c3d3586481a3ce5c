#include "multiflow/samples.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace multiflow {

int max_enumeration_k() {
  static const int cap = [] {
    if (const char* env = std::getenv("MULTIFLOW_MAX_K")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    return 7;
  }();
  return cap;
}

bool Sample::is_valid() const {
  if (k < 1 || elements.empty()) return false;
  int prev_col = -1;
  for (const auto& [r, c] : elements) {
    if (r < 0 || r >= k || c < 0 || c >= k) return false;
    if (c <= prev_col) return false;
    prev_col = c;
  }
  return true;
}

Sample Sample::parse(int k, const std::string& text) {
  Sample s;
  s.k = k;
  std::size_t pos = 0;
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("invalid sample literal \"" + text + "\": " +
                                why);
  };
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    const std::size_t comma = text.find(',', pos);
    const std::size_t close = text.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos ||
        comma > close)
      fail("expected \"(row,col)\"");
    int r = 0, c = 0;
    try {
      r = std::stoi(text.substr(pos + 1, comma - pos - 1));
      c = std::stoi(text.substr(comma + 1, close - comma - 1));
    } catch (const std::exception&) {
      fail("non-integer coordinate");
    }
    if (r < 1 || r > k || c < 1 || c > k) fail("coordinate out of range");
    s.elements.emplace_back(r - 1, c - 1);
    pos = close + 1;
    if (pos < text.size()) {
      if (text[pos] != ';') fail("expected ';' between elements");
      ++pos;
    }
  }
  std::sort(s.elements.begin(), s.elements.end(),
            [](const auto& u, const auto& v) { return u.second < v.second; });
  for (std::size_t t = 1; t < s.elements.size(); ++t)
    if (s.elements[t].second == s.elements[t - 1].second)
      fail("duplicate column");
  if (!s.is_valid()) fail("empty or malformed");
  return s;
}

std::string Sample::str() const {
  std::ostringstream out;
  for (std::size_t t = 0; t < elements.size(); ++t) {
    if (t) out << ';';
    out << '(' << elements[t].first + 1 << ',' << elements[t].second + 1
        << ')';
  }
  return out.str();
}

SampleStats stats(const Sample& s) {
  SampleStats st;
  st.k = s.k;
  st.mult.assign(s.k, 0);
  for (const auto& [r, c] : s.elements) {
    ++st.alpha;
    if (r == c) ++st.gamma;
    ++st.mult[r];
    ++st.mult[c];
  }
  for (int m : st.mult) {
    if (m > 0) ++st.beta;
    if (m == 1) ++st.delta;
  }
  return st;
}

std::string TypeDescriptor::str() const {
  std::ostringstream out;
  out << "T{";
  bool first = true;
  for (const auto& [d, m] : pairs) {
    if (d == 0 && m == 0) continue;  // untouched indices are implied
    if (!first) out << ',';
    first = false;
    out << '[' << d << ',' << m << ']';
  }
  out << '}';
  return out.str();
}

TypeDescriptor type_of(const Sample& s) {
  std::vector<int> diag(s.k, 0), ndiag(s.k, 0);
  for (const auto& [r, c] : s.elements) {
    if (r == c) {
      diag[r] += 2;
    } else {
      ++ndiag[r];
      ++ndiag[c];
    }
  }
  TypeDescriptor t;
  t.pairs.reserve(s.k);
  for (int v = 0; v < s.k; ++v) t.pairs.emplace_back(diag[v], ndiag[v]);
  std::sort(t.pairs.begin(), t.pairs.end(), std::greater<>());
  return t;
}

Sample apply_permutation(const Permutation& sigma, const Sample& s) {
  if (sigma.k != s.k) throw DimensionMismatch("permutation size != sample size");
  Sample out;
  out.k = s.k;
  out.elements.reserve(s.elements.size());
  for (const auto& [r, c] : s.elements)
    out.elements.emplace_back(sigma.image[r], sigma.image[c]);
  std::sort(out.elements.begin(), out.elements.end(),
            [](const auto& u, const auto& v) { return u.second < v.second; });
  return out;
}

Int sample_count(int k) {
  Int total = 1;
  for (int j = 0; j < k; ++j) total *= (k + 1);
  return total - 1;
}

void enumerate_samples(int k,
                       const std::function<void(const Sample&)>& visit) {
  if (k < 1)
    throw std::invalid_argument("enumerate_samples requires k >= 1");
  if (k > max_enumeration_k())
    throw EnumerationTooLarge(
        "sample enumeration for k=" + std::to_string(k) +
        " exceeds the cap k<=" + std::to_string(max_enumeration_k()) +
        " (set MULTIFLOW_MAX_K to raise it)");
  // Odometer over columns: digit 0 = column absent, digit r = element (r, j).
  std::vector<int> digit(k, 0);
  Sample s;
  s.k = k;
  while (true) {
    int j = k - 1;
    while (j >= 0 && digit[j] == k) digit[j--] = 0;
    if (j < 0) return;
    ++digit[j];
    s.elements.clear();
    for (int col = 0; col < k; ++col)
      if (digit[col]) s.elements.emplace_back(digit[col] - 1, col);
    visit(s);
  }
}

SampleStats Profile::to_stats() const {
  SampleStats st;
  st.k = k;
  st.alpha = gamma + n;
  st.gamma = gamma;
  st.mult.reserve(k);
  for (const auto& [cat, count] : cats) {
    const int m = 2 * cat.is_diag + cat.is_col + cat.row_count;
    for (int t = 0; t < count; ++t) st.mult.push_back(m);
    if (m > 0) st.beta += count;
    if (m == 1) st.delta += count;
  }
  std::sort(st.mult.begin(), st.mult.end(), std::greater<>());
  return st;
}

TypeDescriptor Profile::type() const {
  TypeDescriptor t;
  t.pairs.reserve(k);
  for (const auto& [cat, count] : cats)
    for (int i = 0; i < count; ++i)
      t.pairs.emplace_back(2 * cat.is_diag, cat.is_col + cat.row_count);
  std::sort(t.pairs.begin(), t.pairs.end(), std::greater<>());
  return t;
}

std::string Profile::str() const {
  std::ostringstream out;
  out << "P{";
  bool first = true;
  for (const auto& [cat, count] : cats) {
    if (!first) out << ',';
    first = false;
    out << count << "x(" << cat.is_diag << ',' << cat.is_col << ','
        << cat.row_count << ')';
  }
  out << '}';
  return out.str();
}

Profile profile_of(const Sample& s) {
  std::vector<IndexCategory> idx(s.k);
  Profile p;
  p.k = s.k;
  for (const auto& [r, c] : s.elements) {
    if (r == c) {
      idx[r].is_diag = 1;
      ++p.gamma;
    } else {
      idx[c].is_col = 1;
      ++idx[r].row_count;
      ++p.n;
    }
  }
  std::map<IndexCategory, int> counts;
  for (const auto& cat : idx) ++counts[cat];
  p.cats.assign(counts.begin(), counts.end());
  return p;
}

namespace {

// Partitions of `total` into at most `max_parts` parts, each <= max_part,
// as descending vectors (padded with zero implicitly by the caller).
void bounded_partitions(int total, int max_parts, int max_part,
                        std::vector<int>& current,
                        const std::function<void(const std::vector<int>&)>& f) {
  if (total == 0) {
    f(current);
    return;
  }
  if (max_parts == 0) return;
  const int hi = std::min(total, max_part);
  const int lo = (total + max_parts - 1) / max_parts;  // smallest feasible head
  for (int head = hi; head >= std::max(1, lo); --head) {
    current.push_back(head);
    bounded_partitions(total - head, max_parts - 1, head, current, f);
    current.pop_back();
  }
}

void emit_profile(int k, int gamma, int n, const std::vector<int>& diag_rc,
                  const std::vector<int>& col_rc,
                  const std::vector<int>& other_rc,
                  const std::function<void(const Profile&)>& visit) {
  Profile p;
  p.k = k;
  p.gamma = gamma;
  p.n = n;
  std::map<IndexCategory, int> counts;
  const auto add = [&](int is_diag, int is_col, const std::vector<int>& parts,
                       int group_size) {
    for (int rc : parts) ++counts[IndexCategory{is_diag, is_col, rc}];
    const int zeros = group_size - static_cast<int>(parts.size());
    if (zeros > 0) counts[IndexCategory{is_diag, is_col, 0}] += zeros;
  };
  add(1, 0, diag_rc, gamma);
  add(0, 1, col_rc, n);
  add(0, 0, other_rc, k - gamma - n);
  p.cats.assign(counts.begin(), counts.end());
  visit(p);
}

}  // namespace

void enumerate_profiles(int k,
                        const std::function<void(const Profile&)>& visit) {
  if (k < 1)
    throw std::invalid_argument("enumerate_profiles requires k >= 1");
  if (k > 12)
    throw EnumerationTooLarge("profile enumeration capped at k<=12, got k=" +
                              std::to_string(k));
  // gamma diagonal elements and n non-diagonal elements occupy gamma + n
  // distinct columns; row counts distribute the n rows over index groups:
  // diagonal indices, column indices (row forbidden on own column), others.
  for (int gamma = 0; gamma <= k; ++gamma) {
    for (int n = 0; n + gamma <= k; ++n) {
      if (gamma + n == 0) continue;
      std::vector<int> scratch_a, scratch_b, scratch_c;
      for (int ta = 0; ta <= n; ++ta) {
        for (int tb = 0; ta + tb <= n; ++tb) {
          const int tc = n - ta - tb;
          bounded_partitions(ta, gamma, n, scratch_a, [&](const auto& da) {
            bounded_partitions(
                tb, n, n == 0 ? 0 : n - 1, scratch_b, [&](const auto& db) {
                  bounded_partitions(
                      tc, k - gamma - n, n, scratch_c, [&](const auto& dc) {
                        emit_profile(k, gamma, n, da, db, dc, visit);
                      });
                });
          });
        }
      }
    }
  }
}

std::vector<Profile> all_profiles(int k) {
  std::vector<Profile> out;
  enumerate_profiles(k, [&](const Profile& p) { out.push_back(p); });
  return out;
}

Rational discriminant(const SampleStats& st, const FixedDirection& d) {
  return d.abar + Rational(st.gamma) * d.ybar +
         Rational(st.alpha - st.gamma - 1) * d.bbar;
}

PerturbationClass classify(const SampleStats& st, const FixedDirection& d,
                           int k) {
  if (st.alpha == k && st.beta == k && st.delta != 0 &&
      discriminant(st, d).sign() < 0)
    return PerturbationClass::II;
  return PerturbationClass::I;
}

std::string class_label(int k, int alpha, int beta) {
  return "S_" + std::to_string(k) + "(" + std::to_string(alpha) + "," +
         std::to_string(beta) + ")";
}

std::string class_label(int k, int alpha, int beta, int gamma) {
  return "S_" + std::to_string(k) + "(" + std::to_string(alpha) + "," +
         std::to_string(beta) + "," + std::to_string(gamma) + ")";
}

std::string class_label(int k, int alpha, int beta, int gamma, int delta) {
  return "S_" + std::to_string(k) + "(" + std::to_string(alpha) + "," +
         std::to_string(beta) + "," + std::to_string(gamma) + "," +
         std::to_string(delta) + ")";
}

}  // namespace multiflow
