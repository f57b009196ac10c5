#ifndef TORIC_SYMMETRY_GENERIC_HPP
#define TORIC_SYMMETRY_GENERIC_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "exactla.hpp"
#include "model.hpp"

namespace toric {

/// Y_l = (2b + j)^(l-1), l = 1..n: the map (c_l) -> sum c_l Y_l is
/// injective on {-b..b}^n by uniqueness of base-(2b+j) digits.
struct PerturbationSeq
{
  std::uint64_t n = 0;
  std::uint64_t b = 0;
  std::uint64_t j = 0;
  std::vector<BigInt> values;
};

inline PerturbationSeq perturbation_sequence(std::uint64_t n, std::uint64_t b,
                                             std::uint64_t j)
{
  if (n < 1 || b < 1)
    throw std::invalid_argument("perturbation sequence needs n, b >= 1");
  if (j < 1 || j > n)
    throw std::invalid_argument("sequence selector j must lie in 1..n");
  PerturbationSeq out{n, b, j, {}};
  out.values.reserve(n);
  BigInt base = BigInt(2) * b + j;
  BigInt power = 1;
  for (std::uint64_t l = 0; l < n; ++l) {
    out.values.push_back(power);
    power *= base;
  }
  return out;
}

inline constexpr std::uint64_t max_injectivity_cases = 1000000;

/// Enumerates every coefficient vector in {-b..b}^n and checks that the
/// sums against `seq` are pairwise distinct.
inline bool injectivity_exhaustive(std::vector<BigInt> const &seq,
                                   std::uint64_t b)
{
  std::size_t n = seq.size();
  std::uint64_t radix = 2 * b + 1;
  std::uint64_t cases = 1;
  for (std::size_t l = 0; l < n; ++l) {
    if (cases > max_injectivity_cases / radix)
      throw std::invalid_argument("(2b+1)^n exceeds the enumeration limit");
    cases *= radix;
  }

  std::vector<BigInt> sums;
  sums.reserve(cases);
  std::vector<std::int64_t> c(n, -static_cast<std::int64_t>(b));
  for (std::uint64_t t = 0; t < cases; ++t) {
    BigInt s = 0;
    for (std::size_t l = 0; l < n; ++l) {
      if (c[l] != 0)
        s += seq[l] * c[l];
    }
    sums.push_back(std::move(s));
    for (std::size_t l = 0; l < n; ++l) {
      if (++c[l] <= static_cast<std::int64_t>(b))
        break;
      c[l] = -static_cast<std::int64_t>(b);
    }
  }
  std::sort(sums.begin(), sums.end());
  return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

inline bool injectivity_exhaustive(std::uint64_t n, std::uint64_t b,
                                   std::uint64_t j)
{
  return injectivity_exhaustive(perturbation_sequence(n, b, j).values, b);
}

/// x(i) = sum_k theta_{D_k}(i_{D_k}), where the theta are consecutive
/// slices of a perturbation sequence with n = nu and b = p.
struct GenericTable
{
  std::vector<MarginalTable> thetas;
  CellTable table;
};

/// Slices Y^(j) (n = nu, b = p) into theta_{D_1}, ..., theta_{D_K} in facet
/// order, mixed-radix order within each facet.
inline GenericTable generic_element(HierarchicalModel const &model,
                                    std::uint64_t j = 1)
{
  auto seq = perturbation_sequence(model.nu(), model.p(), j);
  GenericTable out;
  out.table = CellTable::zeros(model.space());
  std::size_t offset = 0;
  for (FactorSet d : model.facets()) {
    std::size_t size = model.size_of(d);
    MarginalTable theta{d, {}};
    theta.values.reserve(size);
    for (std::size_t t = 0; t < size; ++t)
      theta.values.emplace_back(seq.values[offset + t]);
    offset += size;
    out.table += lift(model.space(), theta);
    out.thetas.push_back(std::move(theta));
  }
  return out;
}

/// I_j > 2 for all but at most one factor.
inline bool level_condition(LevelSpec const &levels)
{
  return std::count(levels.levels.begin(), levels.levels.end(), 2) <= 1;
}

/// |I_{D^C}| (-1)^{|D \ eq|} prod_{j in eq} (I_j - 1) with
/// eq = {j in D : i_j = j_j}. Marginal cells are given by index in I_D.
inline BigInt distinctness_coefficient(HierarchicalModel const &model,
                                       FactorSet d, std::size_t i_d,
                                       std::size_t j_d)
{
  auto a = index_marginal_cell(model, d, i_d);
  auto b = index_marginal_cell(model, d, j_d);
  auto members = d.members();
  BigInt out = model.size_of(model.all_factors() - d);
  std::size_t unequal = 0;
  for (std::size_t t = 0; t < members.size(); ++t) {
    if (a.coordinates[t] == b.coordinates[t])
      out *= model.levels(members[t]) - 1;
    else
      ++unequal;
  }
  return unequal % 2 == 1 ? BigInt(-out) : out;
}

namespace detail {

inline void require_distinct(std::vector<Rational> values, char const *what)
{
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw std::logic_error(std::string(what) + ": values are not distinct");
}

} // namespace detail

/// phi_D = pi_{N_D}(theta_D) for the generic theta_D slice of facet D, as a
/// function on I_D. Its values are pairwise distinct under the level
/// condition. The projection is computed twice: by the alternating marginal
/// formula and as |I|^{-1} sum_{j_D} C(i_D, j_D) theta_D(j_D); a
/// disagreement or a repeated value throws std::logic_error.
inline MarginalTable distinct_projection(HierarchicalModel const &model,
                                         FactorSet d, std::uint64_t j = 1)
{
  if (!level_condition(model.level_spec()))
    throw std::invalid_argument(
        "more than one factor has exactly two levels");
  auto const &facets = model.facets();
  auto pos = std::find(facets.begin(), facets.end(), d);
  if (pos == facets.end())
    throw std::invalid_argument(d.str() + " is not a facet");

  auto generic = generic_element(model, j);
  auto const &theta = generic.thetas[static_cast<std::size_t>(pos - facets.begin())];
  MarginalTable phi =
      as_marginal(project_increment(lift(model.space(), theta), d), d);

  Rational p(static_cast<long long>(model.p()));
  std::size_t size = model.size_of(d);
  for (std::size_t a = 0; a < size; ++a) {
    Rational sum = 0;
    for (std::size_t b = 0; b < size; ++b)
      sum += Rational(distinctness_coefficient(model, d, a, b)) *
             theta.values[b];
    if (sum != p * phi.values[a])
      throw std::logic_error("projection formulas disagree");
  }
  detail::require_distinct(phi.values, "distinct_projection");
  return phi;
}

/// A table in N_[m] with pairwise-distinct entries: the projection onto
/// N_[m] of the generic element of the saturated model on the same levels.
/// Only the identity permutation fixes it.
inline CellTable faithful_witness(LevelSpec const &levels, std::uint64_t j = 1)
{
  if (!level_condition(levels))
    throw std::invalid_argument(
        "more than one factor has exactly two levels");
  auto saturated = saturated_model(levels);
  auto generic = generic_element(saturated, j);
  CellTable phi = project_increment(generic.table, saturated.all_factors());
  detail::require_distinct(phi.values(), "faithful_witness");
  return phi;
}

inline CellTable faithful_witness(HierarchicalModel const &model,
                                  std::uint64_t j = 1)
{
  return faithful_witness(model.level_spec(), j);
}

} // namespace toric

#endif
