#ifndef TORIC_SYMMETRY_MODEL_HPP
#define TORIC_SYMMETRY_MODEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "factor_set.hpp"

namespace toric {

/// Raised for malformed or invalid model specifications.
class ModelError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Upper bound on the number of cells; tables are stored densely.
inline constexpr std::size_t max_cells = std::size_t{1} << 32;

/// Level counts I_1..I_m.
struct LevelSpec
{
  std::vector<int> levels;

  int m() const { return static_cast<int>(levels.size()); }

  void validate() const
  {
    if (levels.empty())
      throw ModelError("a model needs at least one factor");
    if (levels.size() > FactorSet::max_factors)
      throw ModelError("too many factors");
    for (std::size_t j = 0; j < levels.size(); ++j) {
      if (levels[j] < 2)
        throw ModelError("factor " + std::to_string(j + 1) +
                         " has fewer than 2 levels");
    }
  }

  friend bool operator==(LevelSpec const &, LevelSpec const &) = default;
};

/// The cell set I = I_1 x ... x I_m with its mixed-radix indexing
/// (factor m varies fastest).
class CellSpace
{
public:
  CellSpace() = default;

  explicit CellSpace(LevelSpec levels) : levels_(std::move(levels))
  {
    levels_.validate();
    int m = levels_.m();
    strides_.assign(m, 1);
    std::size_t p = 1;
    for (int j = m - 1; j >= 0; --j) {
      strides_[j] = p;
      if (p > max_cells / static_cast<std::size_t>(levels_.levels[j]))
        throw ModelError("table too large");
      p *= static_cast<std::size_t>(levels_.levels[j]);
    }
    p_ = p;
  }

  LevelSpec const &level_spec() const { return levels_; }
  std::vector<int> const &levels() const { return levels_.levels; }
  int levels(int j) const { return levels_.levels[j]; }
  int m() const { return levels_.m(); }
  std::size_t p() const { return p_; }
  FactorSet all_factors() const { return FactorSet::all(m()); }

  /// |I_D|; 1 for the empty set.
  std::size_t size_of(FactorSet d) const
  {
    std::size_t out = 1;
    for (int j : d.members())
      out *= static_cast<std::size_t>(levels_.levels[j]);
    return out;
  }

  std::size_t stride(int j) const { return strides_[j]; }

  /// 0-based level of factor j in cell index k.
  int digit(std::size_t k, int j) const
  {
    return static_cast<int>((k / strides_[j]) %
                            static_cast<std::size_t>(levels_.levels[j]));
  }

  friend bool operator==(CellSpace const &a, CellSpace const &b)
  {
    return a.levels_ == b.levels_;
  }

private:
  LevelSpec levels_;
  std::vector<std::size_t> strides_;
  std::size_t p_ = 0;
};

/// A cell i = (i_1, ..., i_m) with 1-based level values.
struct Cell
{
  std::vector<int> coordinates;
  friend bool operator==(Cell const &, Cell const &) = default;
};

/// A marginal cell i_D: the coordinates of a cell restricted to the factors
/// in `support`, in ascending factor order.
struct MarginalCell
{
  FactorSet support;
  std::vector<int> coordinates;
  friend bool operator==(MarginalCell const &, MarginalCell const &) = default;
};

/// A hierarchical log-linear model: levels plus the facets (maximal
/// simplices) of a simplicial complex over the factors. Immutable.
///
/// Facets keep the order they were given in; that order fixes the row
/// blocks of the configuration matrix and the slicing of generic elements.
/// Equality ignores facet order.
class HierarchicalModel
{
public:
  HierarchicalModel(LevelSpec levels, std::vector<FactorSet> facets,
                    std::string name = {})
    : space_(std::move(levels)), facets_(std::move(facets)),
      name_(std::move(name))
  {
    int m = space_.m();
    if (facets_.empty())
      throw ModelError("a model needs at least one facet");
    if (facets_.size() > FactorSet::max_factors)
      throw ModelError("too many facets");

    for (std::size_t k = 0; k < facets_.size(); ++k) {
      FactorSet d = facets_[k];
      if (d.empty())
        throw ModelError("empty facet");
      if (!d.subset_of(FactorSet::all(m)))
        throw ModelError("facet " + d.str() + " names a factor beyond m=" +
                         std::to_string(m));
      for (std::size_t l = 0; l < k; ++l) {
        if (facets_[l] == d)
          throw ModelError("duplicate facet " + d.str());
        if (facets_[l].subset_of(d) || d.subset_of(facets_[l])) {
          throw ModelError("facets are not an antichain: " +
                           facets_[l].str() + " and " + d.str());
        }
      }
    }

    for (FactorSet d : facets_)
      nu_ += space_.size_of(d);
  }

  CellSpace const &space() const { return space_; }
  LevelSpec const &level_spec() const { return space_.level_spec(); }
  std::vector<int> const &levels() const { return space_.levels(); }
  int levels(int j) const { return space_.levels(j); }
  int m() const { return space_.m(); }
  std::vector<FactorSet> const &facets() const { return facets_; }
  std::string const &name() const { return name_; }

  /// Number of cells |I|.
  std::size_t p() const { return space_.p(); }
  /// Number of rows of the configuration matrix.
  std::size_t nu() const { return nu_; }
  FactorSet all_factors() const { return space_.all_factors(); }
  std::size_t size_of(FactorSet d) const { return space_.size_of(d); }
  std::size_t stride(int j) const { return space_.stride(j); }
  int digit(std::size_t k, int j) const { return space_.digit(k, j); }

  operator CellSpace const &() const { return space_; }

  friend bool operator==(HierarchicalModel const &a,
                         HierarchicalModel const &b)
  {
    if (!(a.space_ == b.space_) || a.name_ != b.name_ ||
        a.facets_.size() != b.facets_.size())
      return false;
    auto key = [](std::vector<FactorSet> f) {
      std::vector<std::uint64_t> bits;
      for (FactorSet d : f)
        bits.push_back(d.bits());
      std::sort(bits.begin(), bits.end());
      return bits;
    };
    return key(a.facets_) == key(b.facets_);
  }

private:
  CellSpace space_;
  std::vector<FactorSet> facets_;
  std::string name_;
  std::size_t nu_ = 0;
};

/// Mixed-radix index of a cell: sum_j (i_j - 1) * prod_{l>j} I_l.
inline std::size_t cell_index(CellSpace const &model, Cell const &cell)
{
  if (static_cast<int>(cell.coordinates.size()) != model.m())
    throw std::out_of_range("cell has wrong number of coordinates");
  std::size_t k = 0;
  for (int j = 0; j < model.m(); ++j) {
    int i = cell.coordinates[j];
    if (i < 1 || i > model.levels(j))
      throw std::out_of_range("cell coordinate out of range");
    k += static_cast<std::size_t>(i - 1) * model.stride(j);
  }
  return k;
}

inline Cell index_cell(CellSpace const &model, std::size_t k)
{
  if (k >= model.p())
    throw std::out_of_range("cell index out of range");
  Cell cell;
  cell.coordinates.resize(model.m());
  for (int j = 0; j < model.m(); ++j)
    cell.coordinates[j] = model.digit(k, j) + 1;
  return cell;
}

inline MarginalCell project_cell(Cell const &cell, FactorSet d)
{
  MarginalCell out{d, {}};
  for (int j : d.members())
    out.coordinates.push_back(cell.coordinates.at(j));
  return out;
}

/// Mixed-radix index of a marginal cell within I_D (last factor fastest).
inline std::size_t marginal_cell_index(CellSpace const &model,
                                       MarginalCell const &cell)
{
  auto members = cell.support.members();
  if (members.size() != cell.coordinates.size())
    throw std::out_of_range("marginal cell has wrong number of coordinates");
  std::size_t k = 0;
  for (std::size_t t = 0; t < members.size(); ++t) {
    int i = cell.coordinates[t];
    if (i < 1 || i > model.levels(members[t]))
      throw std::out_of_range("marginal cell coordinate out of range");
    k = k * static_cast<std::size_t>(model.levels(members[t])) +
        static_cast<std::size_t>(i - 1);
  }
  return k;
}

inline MarginalCell index_marginal_cell(CellSpace const &model,
                                        FactorSet d, std::size_t k)
{
  auto members = d.members();
  MarginalCell out{d, std::vector<int>(members.size())};
  for (std::size_t t = members.size(); t-- > 0;) {
    auto radix = static_cast<std::size_t>(model.levels(members[t]));
    out.coordinates[t] = static_cast<int>(k % radix) + 1;
    k /= radix;
  }
  if (k != 0)
    throw std::out_of_range("marginal cell index out of range");
  return out;
}

/// For every cell index k, the index of its D-marginal cell in I_D.
inline std::vector<std::size_t> marginal_indices(CellSpace const &model,
                                                 FactorSet d)
{
  auto members = d.members();
  std::vector<std::size_t> out(model.p(), 0);
  for (std::size_t k = 0; k < model.p(); ++k) {
    std::size_t idx = 0;
    for (int j : members)
      idx = idx * static_cast<std::size_t>(model.levels(j)) +
            static_cast<std::size_t>(model.digit(k, j));
    out[k] = idx;
  }
  return out;
}

/// The complex as a set: every subset of some facet, including the empty
/// set. Sorted by size, then lexicographically.
inline std::vector<FactorSet> all_simplices(HierarchicalModel const &model)
{
  std::set<std::uint64_t> seen;
  std::vector<FactorSet> out;
  for (FactorSet d : model.facets()) {
    for (FactorSet e : d.subsets()) {
      if (seen.insert(e.bits()).second)
        out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end(), [](FactorSet a, FactorSet b) {
    if (a.size() != b.size())
      return a.size() < b.size();
    return lex_less(a, b);
  });
  return out;
}

inline bool is_simplex(HierarchicalModel const &model, FactorSet e)
{
  return std::any_of(model.facets().begin(), model.facets().end(),
                     [e](FactorSet d) { return e.subset_of(d); });
}

/// The model with facet D removed.
inline HierarchicalModel delete_facet(HierarchicalModel const &model,
                                      FactorSet d)
{
  auto const &facets = model.facets();
  auto it = std::find(facets.begin(), facets.end(), d);
  if (it == facets.end())
    throw ModelError(d.str() + " is not a facet");
  if (facets.size() == 1)
    throw ModelError("cannot delete the only facet");
  std::vector<FactorSet> rest;
  for (FactorSet f : facets) {
    if (f != d)
      rest.push_back(f);
  }
  return HierarchicalModel(model.level_spec(), std::move(rest), model.name());
}

/// The saturated model with the single facet [m].
inline HierarchicalModel saturated_model(LevelSpec const &levels)
{
  return HierarchicalModel(levels, {FactorSet::all(levels.m())});
}

/// Parses a model file:
///   {"levels": [I_1, ...], "facets": [[1-based factors], ...], "name": "..."}
/// Members of a facet are sorted and deduplicated.
inline HierarchicalModel parse_model(nlohmann::json const &doc)
{
  if (!doc.is_object())
    throw ModelError("model file must be a JSON object");
  if (!doc.contains("levels") || !doc.at("levels").is_array())
    throw ModelError("model file needs a \"levels\" array");
  if (!doc.contains("facets") || !doc.at("facets").is_array())
    throw ModelError("model file needs a \"facets\" array");

  LevelSpec levels;
  for (auto const &v : doc.at("levels")) {
    if (!v.is_number_integer())
      throw ModelError("levels must be integers");
    auto value = v.get<std::int64_t>();
    if (value < 2)
      throw ModelError("every factor needs at least 2 levels");
    if (value > std::numeric_limits<int>::max())
      throw ModelError("level count too large");
    levels.levels.push_back(static_cast<int>(value));
  }
  levels.validate();

  std::vector<FactorSet> facets;
  for (auto const &f : doc.at("facets")) {
    if (!f.is_array())
      throw ModelError("each facet must be an array of factor indices");
    FactorSet d;
    for (auto const &v : f) {
      if (!v.is_number_integer())
        throw ModelError("factor indices must be integers");
      auto j = v.get<std::int64_t>();
      if (j < 1 || j > levels.m())
        throw ModelError("factor index " + std::to_string(j) +
                         " out of range 1.." + std::to_string(levels.m()));
      d.insert(static_cast<int>(j - 1));
    }
    facets.push_back(d);
  }

  std::string name;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string())
      throw ModelError("\"name\" must be a string");
    name = doc.at("name").get<std::string>();
  }
  return HierarchicalModel(std::move(levels), std::move(facets),
                           std::move(name));
}

inline HierarchicalModel parse_model(std::string const &text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const &e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
  return parse_model(doc);
}

inline HierarchicalModel parse_model(char const *text)
{
  return parse_model(std::string(text));
}

/// Canonical form: facets sorted lexicographically, members ascending.
inline nlohmann::json serialize_model(HierarchicalModel const &model)
{
  auto facets = model.facets();
  std::sort(facets.begin(), facets.end(), lex_less);
  nlohmann::json doc;
  if (!model.name().empty())
    doc["name"] = model.name();
  doc["levels"] = model.levels();
  doc["facets"] = nlohmann::json::array();
  for (FactorSet d : facets) {
    nlohmann::json f = nlohmann::json::array();
    for (int j : d.members())
      f.push_back(j + 1);
    doc["facets"].push_back(f);
  }
  return doc;
}

} // namespace toric

#endif
