#ifndef TORIC_SYMMETRY_WREATH_HPP
#define TORIC_SYMMETRY_WREATH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "model.hpp"
#include "permutation.hpp"
#include "poset.hpp"
#include "random.hpp"

namespace toric {

/// An element w = (w_rho) of the wreath product: for each pseudofactor (in
/// poset class order) one permutation of I_rho per ancestor marginal cell
/// in I_{A(rho)}. When A(rho) is empty there is exactly one.
struct WreathElement
{
  std::vector<std::vector<LevelPermutation>> components;
  friend bool operator==(WreathElement const &, WreathElement const &) = default;
};

namespace detail {

/// True iff (g i)_D is a function of i_D, given the D-marginal index of
/// every cell.
inline bool image_depends_only_on(CellPermutation const &g,
                                  std::vector<std::size_t> const &idx,
                                  std::size_t marginal_size)
{
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> image(marginal_size, unset);
  for (std::size_t k = 0; k < g.size(); ++k) {
    std::size_t to = idx[g[k]];
    std::size_t &slot = image[idx[k]];
    if (slot == unset)
      slot = to;
    else if (slot != to)
      return false;
  }
  return true;
}

} // namespace detail

/// The wreath product W = prod_rho (S_{I_rho})^{I_{A(rho)}} indexed by the
/// pseudofactor poset of a model, acting on the cells by
/// (w i)_rho = w_rho(i_{A(rho)}) i_rho.
class WreathGroup
{
public:
  struct Component
  {
    FactorSet members;
    FactorSet ancestors;
    FactorSet v;
    /// |I_rho|
    std::size_t size = 0;
    /// |I_{A(rho)}|, 1 when A(rho) is empty.
    std::size_t ancestor_cells = 0;
    /// Per cell index: its rho-, A(rho)- and V(rho)-marginal indices.
    std::vector<std::size_t> class_index;
    std::vector<std::size_t> ancestor_index;
    std::vector<std::size_t> v_index;
    /// Per rho-marginal index r: the contribution of those coordinates to
    /// the global cell index.
    std::vector<std::size_t> offset;
  };

  explicit WreathGroup(HierarchicalModel model)
    : model_(std::move(model)), poset_(model_)
  {
    order_ = topological_order(poset_);
    for (std::size_t c = 0; c < poset_.size(); ++c) {
      Component comp;
      comp.members = poset_[c].members;
      comp.ancestors = poset_.ancestors(c);
      comp.v = poset_.v_set(c);
      comp.size = model_.size_of(comp.members);
      comp.ancestor_cells = model_.size_of(comp.ancestors);
      comp.class_index = marginal_indices(model_, comp.members);
      comp.ancestor_index = marginal_indices(model_, comp.ancestors);
      comp.v_index = marginal_indices(model_, comp.v);
      comp.offset.resize(comp.size);
      for (std::size_t r = 0; r < comp.size; ++r) {
        auto mc = index_marginal_cell(model_, comp.members, r);
        auto members = comp.members.members();
        std::size_t off = 0;
        for (std::size_t t = 0; t < members.size(); ++t)
          off += static_cast<std::size_t>(mc.coordinates[t] - 1) *
                 model_.stride(members[t]);
        comp.offset[r] = off;
      }
      components_.push_back(std::move(comp));
    }
  }

  HierarchicalModel const &model() const { return model_; }
  PseudofactorPoset const &poset() const { return poset_; }
  std::vector<Component> const &components() const { return components_; }
  /// Class indices in topological order (lower classes first).
  std::vector<std::size_t> const &topological() const { return order_; }
  std::size_t p() const { return model_.p(); }

  WreathElement identity() const
  {
    WreathElement w;
    for (auto const &comp : components_)
      w.components.emplace_back(comp.ancestor_cells,
                                LevelPermutation::identity(comp.size));
    return w;
  }

  /// Throws unless w has the shape of an element of this group.
  void check(WreathElement const &w) const
  {
    if (w.components.size() != components_.size())
      throw std::invalid_argument("wreath element belongs to another group");
    for (std::size_t c = 0; c < components_.size(); ++c) {
      if (w.components[c].size() != components_[c].ancestor_cells)
        throw std::invalid_argument("wreath element belongs to another group");
      for (auto const &perm : w.components[c]) {
        if (perm.size() != components_[c].size)
          throw std::invalid_argument(
              "wreath element belongs to another group");
      }
    }
  }

  /// "S*_{5|3,4}", or "S*_{3}" for a class with no ancestors.
  std::string component_label(std::size_t c) const
  {
    auto const &comp = components_[c];
    auto bare = [](FactorSet s) {
      auto t = s.str();
      return t.substr(1, t.size() - 2);
    };
    if (comp.ancestors.empty())
      return "S*_{" + bare(comp.members) + "}";
    return "S*_{" + bare(comp.members) + "|" + bare(comp.ancestors) + "}";
  }

private:
  HierarchicalModel model_;
  PseudofactorPoset poset_;
  std::vector<std::size_t> order_;
  std::vector<Component> components_;
};

/// Image of cell index k under w.
inline std::size_t act_index(WreathGroup const &group, WreathElement const &w,
                             std::size_t k)
{
  std::size_t out = 0;
  auto const &comps = group.components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto const &comp = comps[c];
    auto const &perm = w.components[c][comp.ancestor_index[k]];
    out += comp.offset[perm[comp.class_index[k]]];
  }
  return out;
}

/// (w i)_rho = w_rho(i_{A(rho)}) i_rho; ancestor coordinates are read from
/// the input cell.
inline Cell act(WreathGroup const &group, WreathElement const &w,
                Cell const &cell)
{
  group.check(w);
  return index_cell(group.model(),
                    act_index(group, w, cell_index(group.model(), cell)));
}

inline CellPermutation to_cell_permutation(WreathGroup const &group,
                                           WreathElement const &w)
{
  group.check(w);
  std::vector<std::uint32_t> image(group.p());
  for (std::size_t k = 0; k < group.p(); ++k)
    image[k] = static_cast<std::uint32_t>(act_index(group, w, k));
  return CellPermutation(std::move(image));
}

/// Membership by the characterization: g is in W iff for every class rho,
/// (g i)_{V(rho)} depends only on i_{V(rho)}.
inline bool contains(WreathGroup const &group, CellPermutation const &g)
{
  if (g.size() != group.p())
    throw std::invalid_argument("permutation size does not match group");
  for (auto const &comp : group.components()) {
    if (!detail::image_depends_only_on(g, comp.v_index,
                                       group.model().size_of(comp.v)))
      return false;
  }
  return true;
}

/// Reads off w with w_rho(j) = (i_rho -> (g i)_rho) over cells with
/// i_{A(rho)} = j. Empty when g is not in W.
inline std::optional<WreathElement> factorize(WreathGroup const &group,
                                              CellPermutation const &g)
{
  if (!contains(group, g))
    return std::nullopt;
  WreathElement w;
  for (auto const &comp : group.components()) {
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::vector<std::uint32_t>> images(
        comp.ancestor_cells, std::vector<std::uint32_t>(comp.size, unset));
    for (std::size_t k = 0; k < g.size(); ++k) {
      images[comp.ancestor_index[k]][comp.class_index[k]] =
          static_cast<std::uint32_t>(comp.class_index[g[k]]);
    }
    std::vector<LevelPermutation> perms;
    perms.reserve(images.size());
    for (auto &img : images)
      perms.emplace_back(std::move(img));
    w.components.push_back(std::move(perms));
  }
  return w;
}

/// w1 ∘ w2, acting as w1 after w2.
inline WreathElement compose(WreathGroup const &group, WreathElement const &w1,
                             WreathElement const &w2)
{
  auto g = to_cell_permutation(group, w1) * to_cell_permutation(group, w2);
  auto w = factorize(group, g);
  if (!w)
    throw std::logic_error("product of wreath elements left the group");
  return *w;
}

inline WreathElement inverse(WreathGroup const &group, WreathElement const &w)
{
  auto inv = factorize(group, to_cell_permutation(group, w).inverse());
  if (!inv)
    throw std::logic_error("inverse of a wreath element left the group");
  return *inv;
}

/// |W| = prod_rho (|I_rho|!)^{|I_{A(rho)}|}.
inline BigInt group_order(WreathGroup const &group)
{
  BigInt out = 1;
  for (auto const &comp : group.components())
    out *= pow(factorial(static_cast<unsigned>(comp.size)),
               static_cast<unsigned>(comp.ancestor_cells));
  return out;
}

/// prod_rho |I_rho|!, the order of the direct product of the S_{I_rho}.
inline BigInt direct_product_order(WreathGroup const &group)
{
  BigInt out = 1;
  for (auto const &comp : group.components())
    out *= factorial(static_cast<unsigned>(comp.size));
  return out;
}

/// Uniform sample from W. Classes are visited from the top of the
/// topological order down; each (rho, ancestor cell) pair draws an
/// independent uniform permutation by Fisher-Yates from its own child
/// stream of `seed`. Child streams are numbered consecutively over the
/// pairs, classes in topological order and ancestor cells in mixed-radix
/// order within a class.
inline WreathElement sample_uniform(WreathGroup const &group,
                                    std::uint64_t seed)
{
  auto const &comps = group.components();
  auto const &order = group.topological();
  std::vector<std::uint64_t> first_stream(comps.size());
  std::uint64_t next = 0;
  for (std::size_t c : order) {
    first_stream[c] = next;
    next += comps[c].ancestor_cells;
  }

  WreathElement w;
  w.components.resize(comps.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::size_t c = *it;
    auto const &comp = comps[c];
    auto &slot = w.components[c];
    slot.reserve(comp.ancestor_cells);
    for (std::size_t a = 0; a < comp.ancestor_cells; ++a) {
      Rng rng(child_seed(seed, first_stream[c] + a));
      std::vector<std::uint32_t> image(comp.size);
      for (std::size_t r = 0; r < comp.size; ++r)
        image[r] = static_cast<std::uint32_t>(r);
      rng.shuffle(image);
      slot.emplace_back(std::move(image));
    }
  }
  return w;
}

/// Seed of the k-th sample in a seeded batch.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t k)
{
  return child_seed(seed ^ 0xa0761d6478bd642fULL, k);
}

inline std::vector<WreathElement> sample_many(WreathGroup const &group,
                                              std::size_t n,
                                              std::uint64_t seed)
{
  std::vector<WreathElement> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(sample_uniform(group, sample_seed(seed, k)));
  return out;
}

/// For each class rho and each ancestor marginal cell j, the adjacent
/// transpositions (r, r+1) of I_rho applied only at j.
inline std::vector<CellPermutation> generators(WreathGroup const &group)
{
  std::vector<CellPermutation> out;
  auto const &comps = group.components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto const &comp = comps[c];
    for (std::size_t a = 0; a < comp.ancestor_cells; ++a) {
      for (std::size_t r = 0; r + 1 < comp.size; ++r) {
        WreathElement w = group.identity();
        w.components[c][a] = LevelPermutation::transposition(comp.size, r, r + 1);
        out.push_back(to_cell_permutation(group, w));
      }
    }
  }
  return out;
}

/// True iff for every facet D, (g i)_D depends only on i_D; that is, g lies
/// in the intersection of the wreath products S_{I_{D^C}} wr S_{I_D}.
inline bool facet_criterion_member(HierarchicalModel const &model,
                                   CellPermutation const &g)
{
  if (g.size() != model.p())
    throw std::invalid_argument("permutation size does not match model");
  for (FactorSet d : model.facets()) {
    if (!detail::image_depends_only_on(g, marginal_indices(model, d),
                                       model.size_of(d)))
      return false;
  }
  return true;
}

} // namespace toric

#endif
