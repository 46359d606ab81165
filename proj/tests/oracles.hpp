#pragma once

// Brute-force reference computations used only by the tests. They share no
// code with the library beyond the plain FinAbGroup container, and work on
// explicit element enumerations.

#include "peirce/exact_linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using peirce::Coeff;
using peirce::Element;
using peirce::FinAbGroup;

inline std::vector<Coeff> prime_factors(Coeff n) {
  std::vector<Coeff> out;
  for (Coeff p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// Isomorphism type of a finite abelian group as a sorted list of prime powers.
inline std::vector<Coeff> elementary_divisors(const std::vector<Coeff>& orders) {
  std::vector<Coeff> out;
  for (Coeff d : orders) {
    for (Coeff p : prime_factors(d)) {
      Coeff q = 1;
      while (d % p == 0) {
        d /= p;
        q *= p;
      }
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Coeff> elementary_divisors(const FinAbGroup& g) {
  return elementary_divisors(g.orders());
}

// A relation is a sparse integer row over `ncols` free generators.
using Relation = std::vector<std::pair<std::size_t, Coeff>>;

// Z^ncols / (relations), assuming `exponent` kills the quotient. Works one
// prime at a time over Z/p^k with minimal-valuation pivoting on a dense
// matrix, returning the elementary divisors.
inline std::vector<Coeff> quotient_divisors(std::size_t ncols, const std::vector<Relation>& rels,
                                            Coeff exponent) {
  std::vector<Coeff> out;
  for (Coeff p : prime_factors(exponent)) {
    int k = 0;
    Coeff q = 1;
    for (Coeff e = exponent; e % p == 0; e /= p) {
      ++k;
      q *= p;
    }
    auto val = [&](Coeff x) {
      int v = 0;
      while (v < k && x % p == 0) {
        x /= p;
        ++v;
      }
      return v;
    };
    auto inv_unit = [&](Coeff u) {
      // u is a unit mod q; brute-force search is fine at oracle sizes.
      for (Coeff t = 1; t < q; ++t)
        if ((u * t) % q == 1) return t;
      return Coeff{0};
    };

    std::vector<std::vector<Coeff>> m;
    m.reserve(rels.size());
    for (const auto& r : rels) {
      std::vector<Coeff> row(ncols, 0);
      bool any = false;
      for (auto [c, v] : r) {
        row[c] = ((row[c] + v) % q + q) % q;
      }
      for (Coeff x : row) any = any || x != 0;
      if (any) m.push_back(std::move(row));
    }

    std::vector<bool> col_done(ncols, false);
    std::size_t done_cols = 0;
    std::vector<int> pivots;
    while (!m.empty()) {
      // minimal valuation entry
      int best = k;
      std::size_t br = 0, bc = 0;
      for (std::size_t r = 0; r < m.size() && best > 0; ++r)
        for (std::size_t c = 0; c < ncols; ++c) {
          if (col_done[c] || m[r][c] == 0) continue;
          int v = val(m[r][c]);
          if (v < best) {
            best = v;
            br = r;
            bc = c;
            if (v == 0) break;
          }
        }
      if (best == k) break;
      std::swap(m[br], m.back());
      std::vector<Coeff> prow = std::move(m.back());
      m.pop_back();
      Coeff pv = prow[bc];
      Coeff pp = 1;
      for (int i = 0; i < best; ++i) pp *= p;
      Coeff unit_inv = inv_unit(pv / pp);
      // normalise pivot to p^best
      for (auto& x : prow) x = (x * unit_inv) % q;
      // eliminate the pivot column from the remaining rows
      for (auto& row : m) {
        if (row[bc] == 0) continue;
        Coeff f = row[bc] / pp;  // valuation of row[bc] >= best
        for (std::size_t c = 0; c < ncols; ++c)
          if (prow[c] != 0) row[c] = ((row[c] - f * prow[c]) % q + q) % q;
      }
      // column operations clear the rest of the pivot row without touching
      // the other rows' invariants; we only need the pivot valuation.
      col_done[bc] = true;
      ++done_cols;
      pivots.push_back(best);
      m.erase(std::remove_if(m.begin(), m.end(),
                             [&](const std::vector<Coeff>& row) {
                               return std::all_of(row.begin(), row.end(),
                                                  [](Coeff x) { return x == 0; });
                             }),
              m.end());
    }
    for (int v : pivots)
      if (v > 0) {
        Coeff pp = 1;
        for (int i = 0; i < v; ++i) pp *= p;
        out.push_back(pp);
      }
    for (std::size_t c = ncols - done_cols; c > 0; --c) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t index_of(const FinAbGroup& g, const Element& x) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < g.ngens(); ++i) idx = idx * static_cast<std::size_t>(g.order(i)) + static_cast<std::size_t>(x[i]);
  return idx;
}

// A (x)_Z B as the free abelian group on all element pairs modulo
// biadditivity in each slot.
inline std::vector<Coeff> tensor_divisors(const FinAbGroup& a, const FinAbGroup& b) {
  const auto ea = a.elements();
  const auto eb = b.elements();
  const std::size_t nb = eb.size();
  auto col = [&](const Element& x, const Element& y) { return index_of(a, x) * nb + index_of(b, y); };
  std::vector<Relation> rels;
  for (const auto& x : ea)
    for (const auto& y : eb) {
      for (std::size_t g = 0; g < a.ngens(); ++g) {
        Element xg = a.add(x, a.generator(g));
        rels.push_back({{col(xg, y), 1}, {col(x, y), -1}, {col(a.generator(g), y), -1}});
      }
      for (std::size_t g = 0; g < b.ngens(); ++g) {
        Element yg = b.add(y, b.generator(g));
        rels.push_back({{col(x, yg), 1}, {col(x, y), -1}, {col(x, b.generator(g)), -1}});
      }
    }
  // pairs with a zero slot are zero
  for (const auto& y : eb) rels.push_back({{col(a.zero(), y), 1}});
  for (const auto& x : ea) rels.push_back({{col(x, b.zero()), 1}});
  Coeff e = std::lcm(std::max<Coeff>(a.exponent(), 1), std::max<Coeff>(b.exponent(), 1));
  return quotient_divisors(ea.size() * nb, rels, e);
}

// M (x)_S N by brute force: pairs of elements modulo biadditivity and
// (m s, n) - (m, s n) for every element pair and every generator s of S.
inline std::vector<Coeff> balanced_tensor_divisors(const peirce::BilinearMap& right_action,
                                                   const peirce::BilinearMap& left_action) {
  const FinAbGroup& a = right_action.left();
  const FinAbGroup& s = right_action.right();
  const FinAbGroup& b = left_action.right();
  const auto ea = a.elements();
  const auto eb = b.elements();
  const std::size_t nb = eb.size();
  auto col = [&](const Element& x, const Element& y) { return index_of(a, x) * nb + index_of(b, y); };
  std::vector<Relation> rels;
  for (const auto& x : ea)
    for (const auto& y : eb) {
      for (std::size_t g = 0; g < a.ngens(); ++g)
        rels.push_back({{col(a.add(x, a.generator(g)), y), 1}, {col(x, y), -1}, {col(a.generator(g), y), -1}});
      for (std::size_t g = 0; g < b.ngens(); ++g)
        rels.push_back({{col(x, b.add(y, b.generator(g))), 1}, {col(x, y), -1}, {col(x, b.generator(g)), -1}});
      for (std::size_t g = 0; g < s.ngens(); ++g) {
        const Element xs = right_action.apply(x, s.generator(g));
        const Element sy = left_action.apply(s.generator(g), y);
        if (col(xs, y) != col(x, sy)) rels.push_back({{col(xs, y), 1}, {col(x, sy), -1}});
      }
    }
  for (const auto& y : eb) rels.push_back({{col(a.zero(), y), 1}});
  for (const auto& x : ea) rels.push_back({{col(x, b.zero()), 1}});
  Coeff e = std::lcm(std::max<Coeff>(a.exponent(), 1), std::max<Coeff>(b.exponent(), 1));
  return quotient_divisors(ea.size() * nb, rels, e);
}

// Quasi-inverse by trying every element: y with xy + x + y = yx + x + y = 0.
template <class Mul>
std::optional<Element> brute_quasi_inverse(const FinAbGroup& g, Mul mul, const Element& x) {
  std::optional<Element> found;
  g.for_each_element([&](const Element& y) {
    if (found) return;
    Element l = g.add(g.add(mul(x, y), x), y);
    Element r = g.add(g.add(mul(y, x), x), y);
    if (g.is_zero(l) && g.is_zero(r)) found = y;
  });
  return found;
}

// Set of elements generated by `gens` inside g, by closure under addition.
inline std::vector<Element> span_by_enumeration(const FinAbGroup& g, const std::vector<Element>& gens) {
  std::vector<Element> seen{g.zero()};
  std::map<Element, bool> have{{g.zero(), true}};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (const auto& h : gens) {
      Element s = g.add(seen[i], g.reduce(h));
      if (have.emplace(s, true).second) seen.push_back(s);
    }
  }
  std::sort(seen.begin(), seen.end());
  return seen;
}

// Random group with cyclic factors drawn from `orders`.
inline FinAbGroup random_group(std::mt19937_64& rng, std::size_t max_gens,
                               const std::vector<Coeff>& orders, std::size_t max_size) {
  for (;;) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_gens)(rng);
    std::vector<Coeff> ds;
    std::size_t size = 1;
    for (std::size_t i = 0; i < n; ++i) {
      Coeff d = orders[std::uniform_int_distribution<std::size_t>(0, orders.size() - 1)(rng)];
      ds.push_back(d);
      size *= static_cast<std::size_t>(d);
    }
    if (size <= max_size) return FinAbGroup(ds);
  }
}

inline Element random_element(std::mt19937_64& rng, const FinAbGroup& g) {
  Element x = g.zero();
  for (std::size_t i = 0; i < g.ngens(); ++i)
    x[i] = std::uniform_int_distribution<Coeff>(0, g.order(i) - 1)(rng);
  return x;
}

}  // namespace oracle
