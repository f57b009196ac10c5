#ifndef TORIC_SYMMETRY_ANALYSIS_HPP
#define TORIC_SYMMETRY_ANALYSIS_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bigint.hpp"
#include "exactla.hpp"
#include "io.hpp"
#include "model.hpp"
#include "poset.hpp"
#include "verify.hpp"
#include "wreath.hpp"

namespace toric {

/// sum over simplices E of prod_{j in E} (I_j - 1): the dimension of r(A)
/// as a sum of incremental subspaces.
inline std::size_t row_space_dimension_formula(HierarchicalModel const &model)
{
  std::size_t out = 0;
  for (FactorSet e : all_simplices(model)) {
    std::size_t term = 1;
    for (int j : e.members())
      term *= static_cast<std::size_t>(model.levels(j) - 1);
    out += term;
  }
  return out;
}

/// Everything `analyze` reports about a model.
struct ModelAnalysis
{
  HierarchicalModel model;
  PseudofactorPoset poset;
  std::vector<std::string> hasse;
  std::vector<std::string> components;
  BigInt group_order;
  std::size_t rank = 0;
  std::size_t rank_formula = 0;
  std::size_t kernel_dim = 0;
  TheoremConditionReport conditions;
  bool direct_product = false;
  VHomomorphismReport v_report;
  bool v_report_available = false;

  ModelAnalysis(HierarchicalModel m, PseudofactorPoset q)
      : model(std::move(m)), poset(std::move(q))
  {
  }

  nlohmann::json to_json() const
  {
    nlohmann::json doc;
    doc["model"] = serialize_model(model);
    doc["p"] = model.p();
    doc["nu"] = model.nu();
    doc["poset"] = poset_to_json(poset);
    doc["hasse_relations"] = hasse;
    doc["wreath_components"] = components;
    doc["group_order"] = group_order.str();
    doc["rank"] = rank;
    doc["rank_formula"] = rank_formula;
    doc["dim_row_space"] = rank;
    doc["dim_kernel"] = kernel_dim;
    doc["theorem_conditions"] = conditions.to_json();
    doc["direct_product"] = direct_product;
    if (v_report_available) {
      doc["v_map"] = {{"injective", v_report.injective},
                      {"order_preserving", v_report.order_preserving},
                      {"equals_star_intersection",
                       v_report.matches_star_intersection},
                      {"image_size", v_report.image_size},
                      {"q_size_without_top", v_report.q_size_without_top},
                      {"surjective", v_report.surjective}};
    }
    return doc;
  }

  std::string to_text() const
  {
    std::string out;
    auto line = [&](std::string const &s) { out += s + "\n"; };
    if (!model.name().empty())
      line("model: " + model.name());
    std::string lv;
    for (int l : model.levels())
      lv += (lv.empty() ? "" : ",") + std::to_string(l);
    line("levels: (" + lv + ")");
    std::string fs;
    for (FactorSet d : model.facets())
      fs += (fs.empty() ? "" : ",") + d.str();
    line("facets: {" + fs + "}");
    line("cells p = " + std::to_string(model.p()) +
         ", nu = " + std::to_string(model.nu()));
    line("pseudofactors:");
    for (std::size_t c = 0; c < poset.size(); ++c) {
      std::string star;
      for (std::size_t k = 0; k < model.facets().size(); ++k) {
        if ((poset[c].star >> k) & 1u)
          star += (star.empty() ? "" : ",") + model.facets()[k].str();
      }
      line("  " + poset[c].members.str() + "  star {" + star + "}  A = " +
           poset.ancestors(c).str() + "  V = " + poset.v_set(c).str());
    }
    std::string rel;
    for (auto const &h : hasse)
      rel += (rel.empty() ? "" : ", ") + h;
    line("hasse relations: " + (rel.empty() ? std::string("none") : rel));
    std::string comp;
    for (auto const &c : components)
      comp += (comp.empty() ? "" : " x ") + c;
    line("wreath product: W = " + comp);
    line("group order |W| = " + group_order.str());
    line("dim r(A) = " + std::to_string(rank) + " (formula " +
         std::to_string(rank_formula) + ")");
    line("dim ker A = " + std::to_string(kernel_dim));
    std::string sizes;
    for (auto s : conditions.facet_sizes)
      sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
    line("facet sizes |I_D|: " + sizes + (conditions.distinct_sizes ? " (distinct)" : " (not distinct)"));
    line("two-level factors: " + std::to_string(conditions.two_level_factors));
    line(std::string("level conditions: ") +
         (conditions.conditions_met ? "met" : "not met"));
    line(std::string("direct product: ") + (direct_product ? "yes" : "no"));
    if (v_report_available) {
      line(std::string("V map: ") +
           (v_report.injective ? "injective" : "NOT injective") + ", " +
           (v_report.order_preserving ? "order-preserving" : "NOT order-preserving") +
           ", " + (v_report.surjective ? "surjective" : "not surjective") +
           " (image " + std::to_string(v_report.image_size) + " of " +
           std::to_string(v_report.q_size_without_top) + ")");
    }
    return out;
  }
};

inline ModelAnalysis analyze_model(HierarchicalModel const &model)
{
  WreathGroup group(model);
  ModelAnalysis out{model, group.poset()};
  out.group_order = group_order(group);
  for (auto [lo, hi] : out.poset.hasse())
    out.hasse.push_back(out.poset[lo].members.str() + "<" +
                        out.poset[hi].members.str());
  for (std::size_t c = 0; c < out.poset.size(); ++c)
    out.components.push_back(group.component_label(c));
  out.rank = rank(configuration_matrix(model));
  out.rank_formula = row_space_dimension_formula(model);
  out.kernel_dim = model.p() - out.rank;
  out.conditions = theorem_conditions(model);
  out.direct_product = corollary_direct_product(model);
  if (model.facets().size() <= max_intersection_facets) {
    out.v_report = v_homomorphism_report(model);
    out.v_report_available = true;
  }
  return out;
}

} // namespace toric

#endif
