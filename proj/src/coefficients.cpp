#include "multiflow/coefficients.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace multiflow {

Permutation Permutation::identity(int k) {
  Permutation p;
  p.k = k;
  p.image.resize(k);
  std::iota(p.image.begin(), p.image.end(), 0);
  return p;
}

Permutation Permutation::transposition(int k, int i, int j) {
  Permutation p = identity(k);
  std::swap(p.image[i], p.image[j]);
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.k = k;
  p.image.resize(k);
  for (int i = 0; i < k; ++i) p.image[image[i]] = i;
  return p;
}

bool Permutation::is_valid() const {
  if (static_cast<int>(image.size()) != k) return false;
  std::vector<bool> seen(k, false);
  for (int v : image) {
    if (v < 0 || v >= k || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool FixedPointParams::satisfies_invariants() const {
  if (k < 1) return false;
  if (k == 1) return x == Rational(1);
  if (x + Rational(k - 1) * a != Rational(1)) return false;
  if (k == 2 && !b.is_zero()) return false;
  return y + a + Rational(k - 2) * b == Rational(0);
}

FixedDirection FixedDirection::from_ab(int k, const Rational& abar,
                                       const Rational& bbar) {
  FixedDirection d;
  d.k = k;
  // Entry categories that do not exist at small k carry a zero parameter.
  d.abar = k >= 2 ? abar : Rational(0);
  d.bbar = k >= 3 ? bbar : Rational(0);
  d.xbar = -Rational(k - 1) * d.abar;
  d.ybar = -d.abar - Rational(k - 2) * d.bbar;
  return d;
}

bool FixedDirection::satisfies_invariants() const {
  if (k < 1) return false;
  if (k == 1) return xbar.is_zero();
  if (!(xbar + Rational(k - 1) * abar).is_zero()) return false;
  if (k == 2 && !bbar.is_zero()) return false;
  return (ybar + abar + Rational(k - 2) * bbar).is_zero();
}

FixedDirection FixedDirection::scaled(const Rational& factor) const {
  FixedDirection d = *this;
  d.xbar *= factor;
  d.ybar *= factor;
  d.abar *= factor;
  d.bbar *= factor;
  return d;
}

bool validate_membership(const CoefficientTuple& c) {
  const int k = c.k;
  for (int l = 0; l < k; ++l) {
    Rational total;
    for (int i = 0; i < k; ++i) {
      Rational row_sum;
      for (int j = 0; j < k; ++j) row_sum += c.at(l, i, j);
      total += row_sum;
      if (i != l && !row_sum.is_zero()) return false;
    }
    for (int j = 0; j < k; ++j) {
      if (j == l) continue;
      Rational col_sum;
      for (int i = 0; i < k; ++i) col_sum += c.at(l, i, j);
      if (!col_sum.is_zero()) return false;
    }
    if (total != Rational(1)) return false;
  }
  return true;
}

bool validate_direction(const GeneralDirection& d) {
  const int k = d.k;
  for (int l = 0; l < k; ++l) {
    for (int i = 0; i < k; ++i) {
      Rational row_sum;
      for (int j = 0; j < k; ++j) row_sum += d.at(l, i, j);
      if (!row_sum.is_zero()) return false;
    }
    for (int j = 0; j < k; ++j) {
      Rational col_sum;
      for (int i = 0; i < k; ++i) col_sum += d.at(l, i, j);
      if (!col_sum.is_zero()) return false;
    }
  }
  return true;
}

namespace {

// Shared placement pattern of fixed points and fixed directions.
template <typename Out, typename V>
Out expand_pattern(int k, const V& x, const V& y, const V& a, const V& b) {
  Out out(k);
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const bool il = (i == l), jl = (j == l);
        if (i == j)
          out.at(l, i, j) = il ? x : y;
        else if (il != jl)
          out.at(l, i, j) = a;
        else
          out.at(l, i, j) = b;
      }
  return out;
}

}  // namespace

CoefficientTuple expand(const FixedPointParams& p) {
  if (!p.satisfies_invariants())
    throw std::invalid_argument("fixed-point parameters violate constraints");
  return expand_pattern<CoefficientTuple>(p.k, p.x, p.y, p.a, p.b);
}

GeneralDirection expand_direction(const FixedDirection& d) {
  if (!d.satisfies_invariants())
    throw std::invalid_argument("fixed-direction parameters violate constraints");
  return expand_pattern<GeneralDirection>(d.k, d.xbar, d.ybar, d.abar, d.bbar);
}

CoefficientTuple apply_permutation(const Permutation& sigma,
                                   const CoefficientTuple& c) {
  if (sigma.k != c.k) throw DimensionMismatch("permutation size != tuple size");
  if (!sigma.is_valid()) throw std::invalid_argument("not a permutation");
  const Permutation inv = sigma.inverse();
  CoefficientTuple out(c.k);
  for (int l = 0; l < c.k; ++l)
    for (int i = 0; i < c.k; ++i)
      for (int j = 0; j < c.k; ++j)
        out.at(l, i, j) = c.at(inv.image[l], inv.image[i], inv.image[j]);
  return out;
}

bool is_fixed_point(const CoefficientTuple& c) {
  for (int i = 0; i + 1 < c.k; ++i) {
    const Permutation t = Permutation::transposition(c.k, i, i + 1);
    if (!(apply_permutation(t, c) == c)) return false;
  }
  return true;
}

FixedPointParams symmetrize(const CoefficientTuple& c) {
  if (!validate_membership(c))
    throw std::invalid_argument("symmetrize requires a member of the solution space");
  const int k = c.k;
  Rational sx, sy, sa, sb;
  long nx = 0, ny = 0, na = 0, nb = 0;
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const bool il = (i == l), jl = (j == l);
        if (i == j && il) {
          sx += c.at(l, i, j);
          ++nx;
        } else if (i == j) {
          sy += c.at(l, i, j);
          ++ny;
        } else if (il != jl) {
          sa += c.at(l, i, j);
          ++na;
        } else {
          sb += c.at(l, i, j);
          ++nb;
        }
      }
  FixedPointParams p;
  p.k = k;
  p.x = sx / Rational(nx);
  p.y = ny ? sy / Rational(ny) : Rational(0);
  p.a = na ? sa / Rational(na) : Rational(0);
  p.b = nb ? sb / Rational(nb) : Rational(0);
  if (!p.satisfies_invariants())
    throw std::logic_error("orbit averages violate fixed-point constraints");
  return p;
}

CoefficientTuple scale(const CoefficientTuple& c, const Rational& lambda) {
  CoefficientTuple out = c;
  for (Rational& e : out.entries) e *= lambda;
  return out;
}

CoefficientTuple add_scaled(const CoefficientTuple& c, const Rational& epsilon,
                            const GeneralDirection& delta) {
  if (c.k != delta.k) throw DimensionMismatch("tuple size != direction size");
  CoefficientTuple out = c;
  for (std::size_t idx = 0; idx < out.entries.size(); ++idx)
    out.entries[idx] += epsilon * delta.entries[idx];
  return out;
}

RationalMatrix membership_constraint_matrix(int k) {
  const std::size_t n = static_cast<std::size_t>(k) * k * k;
  RationalMatrix m(static_cast<std::size_t>(k) * (2 * k - 1), n);
  std::size_t row = 0;
  for (int l = 0; l < k; ++l) {
    for (int i = 0; i < k; ++i) {
      if (i == l) continue;
      for (int j = 0; j < k; ++j)
        m.at(row, entry_index(k, l, i, j)) = Rational(1);
      ++row;
    }
    for (int j = 0; j < k; ++j) {
      if (j == l) continue;
      for (int i = 0; i < k; ++i)
        m.at(row, entry_index(k, l, i, j)) = Rational(1);
      ++row;
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        m.at(row, entry_index(k, l, i, j)) = Rational(1);
    ++row;
  }
  return m;
}

RationalMatrix direction_constraint_matrix(int k) {
  const std::size_t n = static_cast<std::size_t>(k) * k * k;
  RationalMatrix m(static_cast<std::size_t>(k) * 2 * k, n);
  std::size_t row = 0;
  for (int l = 0; l < k; ++l) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j)
        m.at(row, entry_index(k, l, i, j)) = Rational(1);
      ++row;
    }
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i)
        m.at(row, entry_index(k, l, i, j)) = Rational(1);
      ++row;
    }
  }
  return m;
}

}  // namespace multiflow
