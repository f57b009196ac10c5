#ifndef TORIC_SYMMETRY_IO_HPP
#define TORIC_SYMMETRY_IO_HPP

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bigint.hpp"
#include "exactla.hpp"
#include "model.hpp"
#include "permutation.hpp"
#include "poset.hpp"
#include "wreath.hpp"

namespace toric {

/// Raised for malformed table, permutation and element files.
class FormatError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

inline std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline nlohmann::json parse_json(std::string const &text)
{
  try {
    return nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const &e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

inline HierarchicalModel load_model(std::string const &path)
{
  return parse_model(read_file(path));
}

namespace detail {

inline std::vector<int> one_based(FactorSet s)
{
  auto members = s.members();
  for (int &j : members)
    ++j;
  return members;
}

inline nlohmann::json facet_list(std::vector<FactorSet> const &facets,
                                 FacetMask mask)
{
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t k = 0; k < facets.size(); ++k) {
    if ((mask >> k) & 1u)
      out.push_back(one_based(facets[k]));
  }
  return out;
}

} // namespace detail

/// A value as a JSON integer when it fits in int64 (unless `as_strings`),
/// otherwise as a decimal string "n" or "p/q".
inline nlohmann::json rational_to_json(Rational const &q, bool as_strings = false)
{
  if (!as_strings && is_integer(q)) {
    BigInt n = numerator(q);
    if (n >= std::numeric_limits<std::int64_t>::min() &&
        n <= std::numeric_limits<std::int64_t>::max())
      return static_cast<std::int64_t>(n);
  }
  return to_string(q);
}

inline Rational rational_from_json(nlohmann::json const &v)
{
  if (v.is_number_integer())
    return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (std::invalid_argument const &e) {
      throw FormatError(e.what());
    }
  }
  throw FormatError("table values must be integers or \"p/q\" strings");
}

/// Table file: {"model": name, "values": [...]} in cell_index order.
inline nlohmann::json table_to_json(CellTable const &x,
                                    std::string const &model_name = {},
                                    bool as_strings = false)
{
  nlohmann::json doc;
  if (!model_name.empty())
    doc["model"] = model_name;
  doc["values"] = nlohmann::json::array();
  for (auto const &v : x.values())
    doc["values"].push_back(rational_to_json(v, as_strings));
  return doc;
}

inline CellTable table_from_json(nlohmann::json const &doc,
                                 CellSpace const &space)
{
  if (!doc.is_object() || !doc.contains("values") ||
      !doc.at("values").is_array())
    throw FormatError("table file needs a \"values\" array");
  auto const &values = doc.at("values");
  if (values.size() != space.p())
    throw FormatError("table has " + std::to_string(values.size()) +
                      " values, model has " + std::to_string(space.p()) +
                      " cells");
  std::vector<Rational> out;
  out.reserve(values.size());
  for (auto const &v : values)
    out.push_back(rational_from_json(v));
  return CellTable(space, std::move(out));
}

inline nlohmann::json marginal_to_json(MarginalTable const &t)
{
  nlohmann::json doc;
  doc["support"] = detail::one_based(t.support);
  doc["values"] = nlohmann::json::array();
  for (auto const &v : t.values)
    doc["values"].push_back(rational_to_json(v));
  return doc;
}

/// Permutation file: {"p": n, "image": [...]}, 0-based cell indices.
inline nlohmann::json permutation_to_json(CellPermutation const &g)
{
  return {{"p", g.size()}, {"image", g.image()}};
}

inline CellPermutation permutation_from_json(nlohmann::json const &doc)
{
  if (!doc.is_object() || !doc.contains("p") || !doc.contains("image") ||
      !doc.at("image").is_array())
    throw FormatError("permutation file needs \"p\" and \"image\"");
  auto p = doc.at("p").get<std::int64_t>();
  auto const &image = doc.at("image");
  if (p < 0 || static_cast<std::size_t>(p) != image.size())
    throw FormatError("permutation image length does not match \"p\"");
  std::vector<std::uint32_t> out;
  out.reserve(image.size());
  for (auto const &v : image) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
        v.get<std::int64_t>() >= p)
      throw FormatError("permutation image entries must lie in [0, p)");
    out.push_back(static_cast<std::uint32_t>(v.get<std::int64_t>()));
  }
  try {
    return CellPermutation(std::move(out));
  } catch (std::invalid_argument const &e) {
    throw FormatError(e.what());
  }
}

/// Wreath element file: one entry per class with its 1-based members and
/// ancestors, and per ancestor marginal cell (1-based levels) the one-line
/// image of the 0-based mixed-radix indices of I_rho.
inline nlohmann::json wreath_element_to_json(WreathGroup const &group,
                                             WreathElement const &w)
{
  group.check(w);
  nlohmann::json doc;
  doc["classes"] = nlohmann::json::array();
  auto const &comps = group.components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto const &comp = comps[c];
    nlohmann::json cls;
    cls["members"] = detail::one_based(comp.members);
    cls["ancestors"] = detail::one_based(comp.ancestors);
    cls["components"] = nlohmann::json::array();
    for (std::size_t a = 0; a < comp.ancestor_cells; ++a) {
      auto cell = index_marginal_cell(group.model(), comp.ancestors, a);
      cls["components"].push_back({{"ancestor_cell", cell.coordinates},
                                   {"perm", w.components[c][a].image()}});
    }
    doc["classes"].push_back(std::move(cls));
  }
  return doc;
}

inline WreathElement wreath_element_from_json(WreathGroup const &group,
                                              nlohmann::json const &doc)
{
  if (!doc.is_object() || !doc.contains("classes") ||
      !doc.at("classes").is_array())
    throw FormatError("wreath element file needs a \"classes\" array");
  auto const &comps = group.components();
  auto const &classes = doc.at("classes");
  if (classes.size() != comps.size())
    throw FormatError("wreath element has the wrong number of classes");

  WreathElement w = group.identity();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto const &cls = classes[c];
    auto const &comp = comps[c];
    if (cls.at("members").get<std::vector<int>>() !=
        detail::one_based(comp.members))
      throw FormatError("wreath element classes do not match the model");
    auto const &parts = cls.at("components");
    if (parts.size() != comp.ancestor_cells)
      throw FormatError("wrong number of ancestor cells for class " +
                        comp.members.str());
    for (auto const &part : parts) {
      MarginalCell cell{comp.ancestors,
                        part.at("ancestor_cell").get<std::vector<int>>()};
      std::size_t a = marginal_cell_index(group.model(), cell);
      auto image = part.at("perm").get<std::vector<std::uint32_t>>();
      if (image.size() != comp.size)
        throw FormatError("component permutation has the wrong size");
      try {
        w.components[c][a] = LevelPermutation(std::move(image));
      } catch (std::invalid_argument const &e) {
        throw FormatError(e.what());
      }
    }
  }
  return w;
}

/// Matrix export: {"rows": r, "cols": c, "entries": [...]} row-major.
inline nlohmann::json matrix_to_json(IntMatrix const &a)
{
  nlohmann::json doc{{"rows", a.rows()}, {"cols", a.cols()}};
  doc["entries"] = nlohmann::json::array();
  for (auto const &v : a.entries())
    doc["entries"].push_back(rational_to_json(Rational(v)));
  return doc;
}

/// Poset report: classes with members, star facets, A(rho), V(rho); Hasse
/// cover relations; trivial-order flag.
inline nlohmann::json poset_to_json(PseudofactorPoset const &poset)
{
  nlohmann::json doc;
  doc["classes"] = nlohmann::json::array();
  for (std::size_t c = 0; c < poset.size(); ++c) {
    doc["classes"].push_back(
        {{"members", detail::one_based(poset[c].members)},
         {"star", detail::facet_list(poset.facets(), poset[c].star)},
         {"ancestors", detail::one_based(poset.ancestors(c))},
         {"v", detail::one_based(poset.v_set(c))}});
  }
  doc["hasse"] = nlohmann::json::array();
  for (auto [lo, hi] : poset.hasse())
    doc["hasse"].push_back({{"lower", detail::one_based(poset[lo].members)},
                            {"upper", detail::one_based(poset[hi].members)}});
  doc["trivial_order"] = poset.trivial_order();
  return doc;
}

} // namespace toric

#endif
