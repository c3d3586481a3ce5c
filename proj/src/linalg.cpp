#include "multiflow/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace multiflow {

void RationalMatrix::append_row(const std::vector<Rational>& row) {
  if (cols == 0 && rows == 0) cols = row.size();
  if (row.size() != cols)
    throw DimensionMismatch("appended row length " +
                            std::to_string(row.size()) + " != column count " +
                            std::to_string(cols));
  entries.insert(entries.end(), row.begin(), row.end());
  ++rows;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

std::vector<Rational> multiply(const RationalMatrix& m,
                               const std::vector<Rational>& v) {
  if (v.size() != m.cols)
    throw DimensionMismatch("matrix-vector size mismatch");
  std::vector<Rational> out(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    Rational acc;
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (!m.at(r, c).is_zero() && !v[c].is_zero()) acc += m.at(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

std::vector<std::size_t> reduce_to_rref(RationalMatrix& m) {
  std::vector<std::size_t> pivot_cols;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols && pivot_row < m.rows; ++col) {
    std::size_t sel = pivot_row;
    while (sel < m.rows && m.at(sel, col).is_zero()) ++sel;
    if (sel == m.rows) continue;
    if (sel != pivot_row)
      for (std::size_t c = 0; c < m.cols; ++c)
        std::swap(m.at(sel, c), m.at(pivot_row, c));
    const Rational inv = m.at(pivot_row, col).reciprocal();
    for (std::size_t c = col; c < m.cols; ++c) m.at(pivot_row, c) *= inv;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == pivot_row || m.at(r, col).is_zero()) continue;
      const Rational factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols; ++c)
        m.at(r, c) -= factor * m.at(pivot_row, c);
    }
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  return pivot_cols;
}

std::size_t rank(RationalMatrix m) { return reduce_to_rref(m).size(); }

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
  RationalMatrix r = m;
  const std::vector<std::size_t> pivot_cols = reduce_to_rref(r);
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(m.cols);
    v[free_col] = Rational(1);
    for (std::size_t p = 0; p < pivot_cols.size(); ++p)
      v[pivot_cols[p]] = -r.at(p, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_row_space(const std::vector<Rational>& functional,
                  const RationalMatrix& constraints) {
  if (functional.size() != constraints.cols)
    throw DimensionMismatch("functional length " +
                            std::to_string(functional.size()) +
                            " != constraint column count " +
                            std::to_string(constraints.cols));
  RationalMatrix r = constraints;
  const std::vector<std::size_t> pivot_cols = reduce_to_rref(r);
  std::vector<Rational> residual = functional;
  for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
    const Rational factor = residual[pivot_cols[p]];
    if (factor.is_zero()) continue;
    for (std::size_t c = 0; c < r.cols; ++c)
      residual[c] -= factor * r.at(p, c);
  }
  return std::all_of(residual.begin(), residual.end(),
                     [](const Rational& x) { return x.is_zero(); });
}

namespace {

// An inequality row augmented with the provenance needed for reports: which
// original rows it combines.
struct TrackedRow {
  LinearInequality ineq;
  std::set<std::size_t> sources;  // 1-based original row indices
};

std::string render_ineq(const LinearInequality& q,
                        const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < q.coef.size(); ++i) {
    if (q.coef[i].is_zero()) continue;
    const Rational c = q.coef[i];
    if (first) {
      if (c == Rational(-1))
        os << "-";
      else if (c != Rational(1))
        os << c.str() << "*";
    } else {
      os << (c.sign() > 0 ? " + " : " - ");
      const Rational a = c.abs();
      if (a != Rational(1)) os << a.str() << "*";
    }
    os << names[i];
    first = false;
  }
  if (first) os << "0";
  if (!q.constant.is_zero())
    os << (q.constant.sign() > 0 ? " + " : " - ") << q.constant.abs().str();
  os << (q.strict ? " > 0" : " >= 0");
  return os.str();
}

std::string render_sources(const std::set<std::size_t>& sources) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (std::size_t s : sources) {
    if (!first) os << ",";
    os << s;
    first = false;
  }
  os << "}";
  return os.str();
}

// Picks an exact rational inside the interval defined by the tightest lower
// and upper bounds (open sides when strict). Assumes the interval is
// nonempty.
Rational pick_inside(const std::optional<Rational>& lo, bool lo_strict,
                     const std::optional<Rational>& hi, bool hi_strict) {
  if (!lo && !hi) return Rational(0);
  if (lo && !hi) return lo_strict ? *lo + Rational(1) : *lo;
  if (!lo && hi) return hi_strict ? *hi - Rational(1) : *hi;
  if (*lo == *hi) return *lo;  // only possible when both sides are closed
  const bool lo_ok = !lo_strict, hi_ok = !hi_strict;
  if (lo_ok) return *lo;
  if (hi_ok) return *hi;
  return (*lo + *hi) / Rational(2);
}

}  // namespace

FourierMotzkinResult fourier_motzkin(
    const std::vector<LinearInequality>& system, std::size_t num_vars) {
  for (const LinearInequality& q : system)
    if (q.coef.size() != num_vars)
      throw DimensionMismatch("inequality arity != num_vars");

  std::vector<std::string> names(num_vars);
  for (std::size_t v = 0; v < num_vars; ++v)
    names[v] = "v" + std::to_string(v + 1);

  FourierMotzkinResult result;
  std::vector<TrackedRow> rows;
  rows.reserve(system.size());
  for (std::size_t i = 0; i < system.size(); ++i)
    rows.push_back(TrackedRow{system[i], {i + 1}});

  // levels[d] holds the system over the first d variables.
  std::vector<std::vector<TrackedRow>> levels(num_vars + 1);
  levels[num_vars] = std::move(rows);

  for (std::size_t var = num_vars; var-- > 0;) {
    std::vector<TrackedRow> next;
    const std::vector<TrackedRow>& cur = levels[var + 1];
    for (const TrackedRow& row : cur)
      if (row.ineq.coef[var].is_zero()) {
        TrackedRow kept = row;
        kept.ineq.coef.resize(var);
        next.push_back(std::move(kept));
      }
    for (const TrackedRow& pos : cur) {
      if (pos.ineq.coef[var].sign() <= 0) continue;
      for (const TrackedRow& neg : cur) {
        if (neg.ineq.coef[var].sign() >= 0) continue;
        // (-neg_coef) * pos + pos_coef * neg has a zero coefficient on var
        // and both multipliers positive, so the combination is implied.
        const Rational mp = -neg.ineq.coef[var];
        const Rational mn = pos.ineq.coef[var];
        TrackedRow comb;
        comb.ineq.coef.resize(var);
        for (std::size_t c = 0; c < var; ++c)
          comb.ineq.coef[c] = mp * pos.ineq.coef[c] + mn * neg.ineq.coef[c];
        comb.ineq.constant = mp * pos.ineq.constant + mn * neg.ineq.constant;
        comb.ineq.strict = pos.ineq.strict || neg.ineq.strict;
        comb.sources = pos.sources;
        comb.sources.insert(neg.sources.begin(), neg.sources.end());
        std::ostringstream os;
        os << "eliminate " << names[var] << ": rows "
           << render_sources(pos.sources) << " x " << mp.str() << " + rows "
           << render_sources(neg.sources) << " x " << mn.str() << "  =>  "
           << render_ineq(comb.ineq, names);
        result.transcript.push_back(os.str());
        next.push_back(std::move(comb));
      }
    }
    levels[var] = std::move(next);
  }

  // Variable-free level: every row is a plain constant claim.
  for (const TrackedRow& row : levels[0]) {
    const int s = row.ineq.constant.sign();
    const bool holds = row.ineq.strict ? (s > 0) : (s >= 0);
    if (!holds) {
      result.feasible = false;
      result.contradiction_rows.assign(row.sources.begin(), row.sources.end());
      result.transcript.push_back(
          "contradiction: rows " + render_sources(row.sources) +
          " combine to the false claim " + render_ineq(row.ineq, names));
      return result;
    }
  }

  // Feasible: rebuild a witness by choosing each variable inside its bounds.
  result.feasible = true;
  result.witness.assign(num_vars, Rational(0));
  for (std::size_t var = 0; var < num_vars; ++var) {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const TrackedRow& row : levels[var + 1]) {
      const Rational& c = row.ineq.coef[var];
      if (c.is_zero()) continue;
      Rational rest = row.ineq.constant;
      for (std::size_t j = 0; j < var; ++j)
        rest += row.ineq.coef[j] * result.witness[j];
      const Rational bound = -rest / c;
      if (c.sign() > 0) {  // var >(=) bound
        if (!lo || bound > *lo || (bound == *lo && row.ineq.strict)) {
          lo = bound;
          lo_strict = row.ineq.strict;
        }
      } else {  // var <(=) bound
        if (!hi || bound < *hi || (bound == *hi && row.ineq.strict)) {
          hi = bound;
          hi_strict = row.ineq.strict;
        }
      }
    }
    result.witness[var] = pick_inside(lo, lo_strict, hi, hi_strict);
  }
  result.transcript.push_back("feasible");
  return result;
}

std::optional<std::vector<Rational>> positive_combination(
    const std::vector<std::array<Rational, 2>>& vs) {
  const std::size_t m = vs.size();
  if (m < 2 || m > 4)
    throw std::invalid_argument("positive_combination takes 2 to 4 vectors");

  // Unknowns w_2..w_m; solve sum_{i>=2} w_i vs[i] = -vs[0] exactly, then look
  // for a strictly positive point of the solution set.
  const std::size_t n = m - 1;
  RationalMatrix aug(2, n + 1);
  for (std::size_t coord = 0; coord < 2; ++coord) {
    for (std::size_t i = 0; i < n; ++i) aug.at(coord, i) = vs[i + 1][coord];
    aug.at(coord, n) = -vs[0][coord];
  }
  RationalMatrix r = aug;
  const std::vector<std::size_t> pivots = reduce_to_rref(r);
  for (std::size_t p = 0; p < pivots.size(); ++p)
    if (pivots[p] == n) return std::nullopt;  // inconsistent system

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  // Particular solution (free vars = 0) and null-space basis.
  std::vector<Rational> particular(n);
  for (std::size_t p = 0; p < pivots.size(); ++p)
    particular[pivots[p]] = r.at(p, n);
  std::vector<std::vector<Rational>> null_dirs;
  for (std::size_t f : free_cols) {
    std::vector<Rational> dir(n);
    dir[f] = Rational(1);
    for (std::size_t p = 0; p < pivots.size(); ++p)
      dir[pivots[p]] = -r.at(p, f);
    null_dirs.push_back(std::move(dir));
  }

  std::vector<Rational> solution(n);
  if (null_dirs.empty()) {
    solution = particular;
    for (const Rational& w : solution)
      if (w.sign() <= 0) return std::nullopt;
  } else {
    // Positivity of each w_i is a strict inequality in the free parameters.
    std::vector<LinearInequality> positivity(n);
    for (std::size_t i = 0; i < n; ++i) {
      positivity[i].coef.resize(null_dirs.size());
      for (std::size_t t = 0; t < null_dirs.size(); ++t)
        positivity[i].coef[t] = null_dirs[t][i];
      positivity[i].constant = particular[i];
      positivity[i].strict = true;
    }
    const FourierMotzkinResult fm =
        fourier_motzkin(positivity, null_dirs.size());
    if (!fm.feasible) return std::nullopt;
    solution = particular;
    for (std::size_t t = 0; t < null_dirs.size(); ++t)
      for (std::size_t i = 0; i < n; ++i)
        solution[i] += fm.witness[t] * null_dirs[t][i];
  }

  // Normalize so the first weight is 1.
  std::vector<Rational> weights;
  weights.reserve(m);
  weights.push_back(Rational(1));
  weights.insert(weights.end(), solution.begin(), solution.end());
  return weights;
}

}  // namespace multiflow
