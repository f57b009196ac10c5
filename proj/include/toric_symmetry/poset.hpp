#ifndef TORIC_SYMMETRY_POSET_HPP
#define TORIC_SYMMETRY_POSET_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "factor_set.hpp"
#include "model.hpp"

namespace toric {

/// A set of facets, as a bitmask over facet positions in the model.
using FacetMask = std::uint64_t;

/// fst(i): the facets containing factor i.
struct FacetStar
{
  int factor = 0;
  FacetMask star = 0;
};

inline FacetStar facet_star(HierarchicalModel const &model, int factor)
{
  FacetStar out{factor, 0};
  auto const &facets = model.facets();
  for (std::size_t k = 0; k < facets.size(); ++k) {
    if (facets[k].contains(factor))
      out.star |= FacetMask{1} << k;
  }
  return out;
}

/// A class of factors that share the same facet star.
struct Pseudofactor
{
  FactorSet members;
  FacetMask star = 0;
};

/// The pseudofactor poset: classes ordered by inclusion of their facet
/// stars, with ancestor sets A(rho) and V(rho) = rho ∪ A(rho).
///
/// Classes are stored in order of their smallest member.
class PseudofactorPoset
{
public:
  explicit PseudofactorPoset(HierarchicalModel const &model)
    : m_(model.m()), facets_(model.facets())
  {
    std::map<FacetMask, FactorSet> by_star;
    for (int i = 0; i < model.m(); ++i)
      by_star[facet_star(model, i).star].insert(i);
    for (auto const &[star, members] : by_star)
      classes_.push_back({members, star});
    std::sort(classes_.begin(), classes_.end(),
              [](Pseudofactor const &a, Pseudofactor const &b) {
                return a.members.front() < b.members.front();
              });

    std::size_t n = classes_.size();
    ancestors_.assign(n, FactorSet{});
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (less(a, b))
          ancestors_[a] = ancestors_[a] | classes_[b].members;
      }
    }
  }

  int m() const { return m_; }
  std::size_t size() const { return classes_.size(); }
  std::vector<Pseudofactor> const &classes() const { return classes_; }
  Pseudofactor const &operator[](std::size_t c) const { return classes_[c]; }
  std::vector<FactorSet> const &facets() const { return facets_; }

  /// rho_a <= rho_b: star(a) ⊆ star(b).
  bool less_equal(std::size_t a, std::size_t b) const
  {
    return (classes_[a].star & ~classes_[b].star) == 0;
  }

  bool less(std::size_t a, std::size_t b) const
  {
    return a != b && less_equal(a, b);
  }

  /// A(rho): union of the classes strictly above rho.
  FactorSet ancestors(std::size_t c) const { return ancestors_[c]; }

  /// V(rho) = union of the classes at or above rho.
  FactorSet v_set(std::size_t c) const
  {
    return ancestors_[c] | classes_[c].members;
  }

  /// Index of the class containing 0-based factor j.
  std::size_t class_of(int j) const
  {
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (classes_[c].members.contains(j))
        return c;
    }
    throw std::out_of_range("factor not in any class");
  }

  /// Index of the class with exactly these members.
  std::size_t find(FactorSet members) const
  {
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (classes_[c].members == members)
        return c;
    }
    throw std::out_of_range(members.str() + " is not a pseudofactor");
  }

  /// Cover relations (lower, upper) of the Hasse diagram, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> hasse() const
  {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t n = classes_.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!less(a, b))
          continue;
        bool cover = true;
        for (std::size_t c = 0; c < n && cover; ++c) {
          if (less(a, c) && less(c, b))
            cover = false;
        }
        if (cover)
          out.push_back({a, b});
      }
    }
    return out;
  }

  /// No two distinct classes are comparable.
  bool trivial_order() const
  {
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (!ancestors_[c].empty())
        return false;
    }
    return true;
  }

  /// The intersection of the facets in star(rho); [m] for an empty star.
  FactorSet star_intersection(std::size_t c) const
  {
    FactorSet out = FactorSet::all(m_);
    for (std::size_t k = 0; k < facets_.size(); ++k) {
      if ((classes_[c].star >> k) & 1u)
        out = out & facets_[k];
    }
    return out;
  }

private:
  int m_;
  std::vector<FactorSet> facets_;
  std::vector<Pseudofactor> classes_;
  std::vector<FactorSet> ancestors_;
};

inline PseudofactorPoset pseudofactor_poset(HierarchicalModel const &model)
{
  return PseudofactorPoset(model);
}

inline FactorSet v_set(PseudofactorPoset const &poset, std::size_t c)
{
  return poset.v_set(c);
}

/// A linear extension of the poset: lower classes first. Classes are
/// layered by the length of the longest chain below them; ties within a
/// layer go to the smaller smallest member.
inline std::vector<std::size_t> topological_order(PseudofactorPoset const &poset)
{
  std::size_t n = poset.size();
  std::vector<std::size_t> height(n, 0);
  // Star inclusion is transitive, so iterating to a fixed point terminates
  // within n rounds.
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (poset.less(b, a) && height[a] < height[b] + 1) {
          height[a] = height[b] + 1;
          changed = true;
        }
      }
    }
    if (!changed)
      break;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t c = 0; c < n; ++c)
    order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (height[a] != height[b])
      return height[a] < height[b];
    return poset[a].members.front() < poset[b].members.front();
  });
  return order;
}

/// All intersections of sets of facets, with [m] for the empty family.
struct IntersectionPoset
{
  int m = 0;
  std::vector<FactorSet> elements;

  bool contains(FactorSet s) const
  {
    return std::find(elements.begin(), elements.end(), s) != elements.end();
  }

  /// Order of Q: reverse inclusion.
  static bool less_equal(FactorSet a, FactorSet b) { return b.subset_of(a); }
};

inline constexpr std::size_t max_intersection_facets = 20;

inline IntersectionPoset intersection_poset(HierarchicalModel const &model)
{
  auto const &facets = model.facets();
  std::size_t k = facets.size();
  if (k > max_intersection_facets)
    throw std::invalid_argument("too many facets to enumerate intersections");
  std::set<std::uint64_t> seen;
  IntersectionPoset out;
  out.m = model.m();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
    FactorSet x = model.all_factors();
    for (std::size_t t = 0; t < k; ++t) {
      if ((s >> t) & 1u)
        x = x & facets[t];
    }
    if (seen.insert(x.bits()).second)
      out.elements.push_back(x);
  }
  std::sort(out.elements.begin(), out.elements.end(),
            [](FactorSet a, FactorSet b) {
              if (a.size() != b.size())
                return a.size() < b.size();
              return lex_less(a, b);
            });
  return out;
}

/// Facts about V: P -> Q.
struct VHomomorphismReport
{
  bool injective = true;
  bool order_preserving = true;
  bool matches_star_intersection = true;
  bool into_q = true;
  std::size_t image_size = 0;
  /// |Q \ {[m]}|.
  std::size_t q_size_without_top = 0;
  /// Every element of Q other than [m] is some V(rho).
  bool surjective = false;

  bool ok() const
  {
    return injective && order_preserving && matches_star_intersection &&
           into_q;
  }
};

inline VHomomorphismReport v_homomorphism_report(HierarchicalModel const &model)
{
  PseudofactorPoset poset(model);
  IntersectionPoset q = intersection_poset(model);
  VHomomorphismReport out;
  std::size_t n = poset.size();

  std::set<std::uint64_t> image;
  for (std::size_t a = 0; a < n; ++a) {
    FactorSet va = poset.v_set(a);
    image.insert(va.bits());
    if (va != poset.star_intersection(a))
      out.matches_star_intersection = false;
    if (!q.contains(va))
      out.into_q = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (poset.less_equal(a, b) &&
          !IntersectionPoset::less_equal(va, poset.v_set(b)))
        out.order_preserving = false;
    }
  }
  out.injective = image.size() == n;
  out.image_size = image.size();
  out.q_size_without_top = q.elements.size() - 1;
  out.surjective = std::all_of(
      q.elements.begin(), q.elements.end(), [&](FactorSet s) {
        return s == model.all_factors() || image.count(s.bits()) > 0;
      });
  return out;
}

/// True iff V is injective, order-preserving into Q, and
/// V(rho) = ∩_{D ∈ star(rho)} D for every class.
inline bool check_v_homomorphism(HierarchicalModel const &model)
{
  return v_homomorphism_report(model).ok();
}

} // namespace toric

#endif
