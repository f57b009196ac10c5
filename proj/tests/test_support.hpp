#ifndef TORIC_SYMMETRY_TEST_SUPPORT_HPP
#define TORIC_SYMMETRY_TEST_SUPPORT_HPP

// Independent reference computations for the tests. Nothing here calls the
// library's elimination, marginalization or group code; models and tables
// are read through plain coordinate tuples.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <toric_symmetry/toric_symmetry.hpp>

namespace oracle {

using toric::BigInt;
using toric::Rational;
using Coords = std::vector<int>;
using QMatrix = std::vector<std::vector<Rational>>;

/// Every cell as a 1-based coordinate tuple, last factor varying fastest.
inline std::vector<Coords> cells(std::vector<int> const &levels)
{
  std::vector<Coords> out;
  Coords c(levels.size(), 1);
  while (true) {
    out.push_back(c);
    int j = static_cast<int>(levels.size()) - 1;
    while (j >= 0 && c[j] == levels[j]) {
      c[j] = 1;
      --j;
    }
    if (j < 0)
      break;
    ++c[j];
  }
  return out;
}

/// Coordinates restricted to a 0-based factor list.
inline Coords restrict(Coords const &c, std::vector<int> const &factors)
{
  Coords out;
  for (int j : factors)
    out.push_back(c[j]);
  return out;
}

/// Rank over Q by textbook Gaussian elimination on rationals.
inline std::size_t rank(QMatrix rows)
{
  std::size_t r = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0)
      ++piv;
    if (piv == rows.size())
      continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0)
        continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k)
        rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

/// Solves the square system M y = b (M invertible) over Q.
inline std::vector<Rational> solve(QMatrix m, std::vector<Rational> b)
{
  std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (m[piv][c] == 0)
      ++piv;
    std::swap(m[c], m[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0)
        continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k)
        m[i][k] -= f * m[c][k];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    b[i] /= m[i][i];
  return b;
}

/// Configuration matrix straight from the definition: one row per
/// (facet, marginal tuple), tuples in lexicographic order.
inline QMatrix configuration(std::vector<int> const &levels,
                             std::vector<std::vector<int>> const &facets)
{
  auto all = cells(levels);
  QMatrix rows;
  for (auto const &d : facets) {
    std::vector<int> dl;
    for (int j : d)
      dl.push_back(levels[j]);
    for (auto const &mc : cells(dl)) {
      std::vector<Rational> row;
      for (auto const &c : all)
        row.emplace_back(restrict(c, d) == mc ? 1 : 0);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Basis of N_E: tensor products of the contrasts e_1 - e_l (l >= 2) over
/// factors in E, constant over the other factors.
inline QMatrix incremental_basis(std::vector<int> const &levels,
                                 std::vector<int> const &e)
{
  auto all = cells(levels);
  std::vector<int> el;
  for (int j : e)
    el.push_back(levels[j] - 1);
  QMatrix out;
  for (auto const &choice : cells(el)) {
    // choice[t] in 1..I_j-1 selects contrast e_1 - e_{choice+1}
    std::vector<Rational> v;
    for (auto const &c : all) {
      Rational val = 1;
      for (std::size_t t = 0; t < e.size(); ++t) {
        int i = c[e[t]];
        if (i == 1)
          continue;
        if (i == choice[t] + 1)
          val *= -1;
        else
          val = 0;
      }
      v.push_back(val);
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Orthogonal projection of x onto span(rows) via the normal equations.
inline std::vector<Rational> project(QMatrix const &basis,
                                     std::vector<Rational> const &x)
{
  std::size_t n = basis.size();
  if (n == 0)
    return std::vector<Rational>(x.size(), Rational(0));
  auto dot = [](std::vector<Rational> const &a, std::vector<Rational> const &b) {
    Rational s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      s += a[k] * b[k];
    return s;
  };
  QMatrix gram(n, std::vector<Rational>(n));
  std::vector<Rational> rhs(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      gram[a][b] = dot(basis[a], basis[b]);
    rhs[a] = dot(basis[a], x);
  }
  auto coef = solve(gram, rhs);
  std::vector<Rational> out(x.size(), Rational(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t k = 0; k < x.size(); ++k)
      out[k] += coef[a] * basis[a][k];
  return out;
}

/// D-marginal by grouping cells on their D-coordinates.
inline std::map<Coords, Rational> marginal(std::vector<int> const &levels,
                                           std::vector<Rational> const &x,
                                           std::vector<int> const &d)
{
  std::map<Coords, Rational> out;
  auto all = cells(levels);
  for (std::size_t k = 0; k < all.size(); ++k)
    out[restrict(all[k], d)] += x[k];
  return out;
}

/// Whether g maps r(A) onto itself: rank of [A; A g^{-1}] equals rank A.
/// Uses the row-space side of G_ker = G_r.
inline bool stabilizes_row_space(QMatrix const &a,
                                 std::vector<std::uint32_t> const &g)
{
  QMatrix stacked = a;
  for (auto const &row : a) {
    std::vector<Rational> moved(row.size());
    for (std::size_t k = 0; k < row.size(); ++k)
      moved[g[k]] = row[k];
    stacked.push_back(std::move(moved));
  }
  return rank(stacked) == rank(a);
}

/// Every element of W, by taking all choices of a component permutation
/// per (class, ancestor cell). Only for tiny groups.
inline std::vector<toric::WreathElement>
enumerate_group(toric::WreathGroup const &group)
{
  auto perms_of = [](std::size_t n) {
    std::vector<toric::LevelPermutation> out;
    std::vector<std::uint32_t> image(n);
    std::iota(image.begin(), image.end(), 0u);
    do
      out.emplace_back(image);
    while (std::next_permutation(image.begin(), image.end()));
    return out;
  };
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<std::vector<toric::LevelPermutation>> choices;
  auto const &comps = group.components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t a = 0; a < comps[c].ancestor_cells; ++a) {
      slots.emplace_back(c, a);
      choices.push_back(perms_of(comps[c].size));
    }
  }
  std::vector<toric::WreathElement> out;
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    auto w = group.identity();
    for (std::size_t s = 0; s < slots.size(); ++s)
      w.components[slots[s].first][slots[s].second] = choices[s][pick[s]];
    out.push_back(std::move(w));
    std::size_t s = 0;
    while (s < slots.size() && ++pick[s] == choices[s].size())
      pick[s++] = 0;
    if (s == slots.size())
      break;
  }
  return out;
}

/// Closure of a generating set under composition (BFS).
inline std::set<std::vector<std::uint32_t>>
closure(std::vector<toric::CellPermutation> const &gens, std::size_t p)
{
  std::vector<std::uint32_t> id(p);
  std::iota(id.begin(), id.end(), 0u);
  std::set<std::vector<std::uint32_t>> seen{id};
  std::vector<std::vector<std::uint32_t>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint32_t>> next;
    for (auto const &h : frontier) {
      for (auto const &g : gens) {
        std::vector<std::uint32_t> gh(p);
        for (std::size_t k = 0; k < p; ++k)
          gh[k] = g[h[k]];
        if (seen.insert(gh).second)
          next.push_back(std::move(gh));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

} // namespace oracle

namespace fixture {

using toric::FactorSet;
using toric::Rational;
using toric::HierarchicalModel;

/// Model from 1-based facet lists.
inline HierarchicalModel make(std::vector<int> levels,
                              std::vector<std::vector<int>> facets,
                              std::string name = {})
{
  std::vector<FactorSet> fs;
  for (auto const &f : facets) {
    FactorSet s;
    for (int j : f)
      s.insert(j - 1);
    fs.push_back(s);
  }
  return HierarchicalModel(toric::LevelSpec{std::move(levels)}, std::move(fs),
                           std::move(name));
}

inline FactorSet set(std::initializer_list<int> one_based)
{
  FactorSet s;
  for (int j : one_based)
    s.insert(j - 1);
  return s;
}

inline std::vector<int> zero_based(FactorSet s) { return s.members(); }

inline std::vector<std::vector<int>> facet_lists(HierarchicalModel const &m)
{
  std::vector<std::vector<int>> out;
  for (auto d : m.facets())
    out.push_back(d.members());
  return out;
}

/// Illustrative four-factor chain, levels (3,4,5,6).
inline HierarchicalModel chain4() { return make({3, 4, 5, 6}, {{1, 2}, {2, 3}, {3, 4}}, "chain4"); }

/// The example shapes, with mixed small levels.
inline std::vector<HierarchicalModel> example_models()
{
  return {
      make({2, 3, 2}, {{1}, {2}, {3}}, "independence"),
      make({2, 2, 3}, {{1}, {2, 3}}, "pseudofactor"),
      make({2, 3, 2}, {{1, 2}, {2, 3}}, "path"),
      make({2, 3, 2}, {{1}, {2}}, "uncovered"),
      make({2, 2, 3}, {{1, 2}, {2, 3}, {3, 1}}, "cycle"),
      make({2, 2, 2, 2, 2}, {{1, 3}, {2, 4}, {3, 4, 5}}, "markov"),
      make({2, 2, 2, 2, 2, 2}, {{1, 4, 5}, {2, 5, 6}, {3, 4, 6}}, "three_facets"),
  };
}

/// A random valid model with p <= max_p.
inline HierarchicalModel random_model(std::mt19937_64 &rng, int max_m,
                                      std::size_t max_p, int max_level = 4)
{
  while (true) {
    int m = std::uniform_int_distribution<int>(1, max_m)(rng);
    std::vector<int> levels(m);
    std::size_t p = 1;
    for (int &l : levels) {
      l = std::uniform_int_distribution<int>(2, max_level)(rng);
      p *= l;
    }
    if (p > max_p)
      continue;
    int k = std::uniform_int_distribution<int>(1, m + 1)(rng);
    std::vector<std::uint64_t> raw;
    for (int t = 0; t < k; ++t) {
      std::uint64_t bits =
          std::uniform_int_distribution<std::uint64_t>(1, (1ull << m) - 1)(rng);
      raw.push_back(bits);
    }
    std::vector<FactorSet> facets;
    for (auto b : raw) {
      auto s = FactorSet::from_bits(b);
      bool dominated = false;
      for (auto o : raw) {
        auto t = FactorSet::from_bits(o);
        if (s.proper_subset_of(t))
          dominated = true;
      }
      if (!dominated &&
          std::find(facets.begin(), facets.end(), s) == facets.end())
        facets.push_back(s);
    }
    return HierarchicalModel(toric::LevelSpec{levels}, facets);
  }
}

inline std::vector<Rational> random_rationals(std::mt19937_64 &rng,
                                              std::size_t n)
{
  std::vector<Rational> out;
  for (std::size_t k = 0; k < n; ++k) {
    long long num = std::uniform_int_distribution<long long>(-20, 20)(rng);
    long long den = std::uniform_int_distribution<long long>(1, 6)(rng);
    out.emplace_back(num, den);
  }
  return out;
}

inline toric::CellTable random_table(std::mt19937_64 &rng,
                                     toric::CellSpace const &space)
{
  return toric::CellTable(space, random_rationals(rng, space.p()));
}

} // namespace fixture

#endif
