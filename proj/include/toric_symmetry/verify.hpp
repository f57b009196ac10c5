#ifndef TORIC_SYMMETRY_VERIFY_HPP
#define TORIC_SYMMETRY_VERIFY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bigint.hpp"
#include "exactla.hpp"
#include "generic.hpp"
#include "model.hpp"
#include "permutation.hpp"
#include "poset.hpp"
#include "random.hpp"
#include "wreath.hpp"

namespace toric {

/// One named check inside a suite.
struct Assertion
{
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Outcome of a verification suite. `skipped` suites did not run because
/// their precondition fails; they count as neither pass nor fail.
struct SuiteReport
{
  std::string suite;
  bool passed = true;
  bool skipped = false;
  std::string skip_reason;
  std::vector<Assertion> assertions;
  nlohmann::json sizes = nlohmann::json::object();
  std::optional<CellPermutation> counterexample;

  void check(std::string name, bool ok, std::string detail = {})
  {
    assertions.push_back({std::move(name), ok, std::move(detail)});
    passed = passed && ok;
  }

  nlohmann::json to_json() const
  {
    nlohmann::json doc;
    doc["suite"] = suite;
    doc["passed"] = passed;
    doc["skipped"] = skipped;
    if (skipped)
      doc["skip_reason"] = skip_reason;
    doc["sizes"] = sizes;
    doc["assertions"] = nlohmann::json::array();
    for (auto const &a : assertions)
      doc["assertions"].push_back(
          {{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
    if (counterexample)
      doc["counterexample"] = counterexample->image();
    return doc;
  }

  std::string to_text() const
  {
    std::string out = suite + ": ";
    if (skipped)
      return out + "SKIPPED (" + skip_reason + ")\n";
    out += passed ? "PASS\n" : "FAIL\n";
    for (auto const &a : assertions) {
      out += std::string("  ") + (a.passed ? "PASS " : "FAIL ") + a.name;
      if (!a.detail.empty())
        out += ": " + a.detail;
      out += "\n";
    }
    return out;
  }
};

/// The hypotheses on the levels under which the group of invariance is
/// exactly the wreath product: distinct facet sizes |I_D| and at most one
/// two-level factor.
struct TheoremConditionReport
{
  std::vector<std::size_t> facet_sizes;
  bool distinct_sizes = false;
  std::size_t two_level_factors = 0;
  bool conditions_met = false;

  nlohmann::json to_json() const
  {
    return {{"facet_sizes", facet_sizes},
            {"distinct_sizes", distinct_sizes},
            {"two_level_factors", two_level_factors},
            {"conditions_met", conditions_met}};
  }
};

inline TheoremConditionReport theorem_conditions(HierarchicalModel const &model)
{
  TheoremConditionReport out;
  for (FactorSet d : model.facets())
    out.facet_sizes.push_back(model.size_of(d));
  auto sorted = out.facet_sizes;
  std::sort(sorted.begin(), sorted.end());
  out.distinct_sizes =
      std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  out.two_level_factors = static_cast<std::size_t>(
      std::count(model.levels().begin(), model.levels().end(), 2));
  out.conditions_met = out.distinct_sizes && out.two_level_factors <= 1;
  return out;
}

/// A uniformly random permutation of [0, n).
inline CellPermutation random_permutation(std::size_t n, Rng &rng)
{
  std::vector<std::uint32_t> image(n);
  std::iota(image.begin(), image.end(), 0u);
  rng.shuffle(image);
  return CellPermutation(std::move(image));
}

/// Every sampled wreath element must stabilize ker A.
inline SuiteReport check_member_invariance(HierarchicalModel const &model,
                                           std::size_t trials,
                                           std::uint64_t seed)
{
  if (trials < 1)
    throw std::invalid_argument("trials must be at least 1");
  SuiteReport report;
  report.suite = "member_invariance";
  WreathGroup group(model);
  auto a = configuration_matrix(model);
  KernelStabilizerCheck stabilizes(a, kernel_basis(a));

  std::size_t ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto g = to_cell_permutation(group, sample_uniform(group, sample_seed(seed, t)));
    if (!stabilizes(g)) {
      report.counterexample = g;
      break;
    }
    ++ok;
  }
  report.sizes["trials"] = trials;
  report.sizes["stabilizing"] = ok;
  report.check("sampled members stabilize ker A", ok == trials,
               std::to_string(ok) + "/" + std::to_string(trials));
  return report;
}

/// Random non-members of W must all fail to stabilize ker A. Skipped when
/// the level conditions fail, since the stabilizer may then exceed W.
inline SuiteReport check_nonmember_rejection(HierarchicalModel const &model,
                                             std::size_t trials,
                                             std::uint64_t seed)
{
  if (trials < 1)
    throw std::invalid_argument("trials must be at least 1");
  SuiteReport report;
  report.suite = "nonmember_rejection";
  auto cond = theorem_conditions(model);
  if (!cond.conditions_met) {
    report.skipped = true;
    report.skip_reason = "level conditions not met";
    return report;
  }

  WreathGroup group(model);
  auto a = configuration_matrix(model);
  KernelStabilizerCheck stabilizes(a, kernel_basis(a));
  Rng rng(child_seed(seed, 0x6e6f6e6d656d62ULL));

  std::size_t members = 0, rejected = 0, tested = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto g = random_permutation(model.p(), rng);
    if (contains(group, g)) {
      ++members;
      continue;
    }
    ++tested;
    if (stabilizes(g)) {
      report.counterexample = g;
      break;
    }
    ++rejected;
  }
  report.sizes["trials"] = trials;
  report.sizes["members_discarded"] = members;
  report.sizes["nonmembers_tested"] = tested;
  report.sizes["rejected"] = rejected;
  report.check("non-members fail to stabilize ker A", rejected == tested,
               std::to_string(rejected) + "/" + std::to_string(tested));
  return report;
}

/// contains(W, g) against the facet-wise criterion, on `trials` random
/// permutations plus every permutation when p <= exhaustive_cap.
inline SuiteReport check_facet_criterion_equivalence(HierarchicalModel const &model,
                                              std::size_t trials,
                                              std::uint64_t seed,
                                              std::size_t exhaustive_cap = 8)
{
  SuiteReport report;
  report.suite = "wreath_equals_facet_intersection";
  WreathGroup group(model);
  Rng rng(child_seed(seed, 0x746865326571ULL));

  std::size_t disagreements = 0, examined = 0, members = 0;
  auto probe = [&](CellPermutation const &g) {
    bool in_w = contains(group, g);
    bool in_facets = facet_criterion_member(model, g);
    ++examined;
    if (in_w)
      ++members;
    if (in_w != in_facets) {
      if (!report.counterexample)
        report.counterexample = g;
      ++disagreements;
    }
  };

  for (std::size_t t = 0; t < trials; ++t)
    probe(random_permutation(model.p(), rng));
  // Random permutations are almost never members; sampled members exercise
  // the other side of the equivalence.
  for (std::size_t t = 0; t < trials; ++t)
    probe(to_cell_permutation(group, sample_uniform(group, sample_seed(seed, t))));

  bool exhaustive = model.p() <= exhaustive_cap;
  std::size_t exhaustive_members = 0;
  if (exhaustive) {
    std::vector<std::uint32_t> image(model.p());
    std::iota(image.begin(), image.end(), 0u);
    do {
      CellPermutation g(image);
      if (contains(group, g))
        ++exhaustive_members;
      probe(g);
    } while (std::next_permutation(image.begin(), image.end()));
  }

  report.sizes["examined"] = examined;
  report.sizes["members"] = members;
  report.sizes["disagreements"] = disagreements;
  report.sizes["exhaustive"] = exhaustive;
  report.check("contains(W, g) == facet criterion", disagreements == 0,
               std::to_string(examined) + " permutations, " +
                   std::to_string(disagreements) + " disagreements");
  if (exhaustive) {
    auto order = group_order(group);
    report.sizes["exhaustive_members"] = exhaustive_members;
    report.check("exhaustive member count equals |W|",
                 BigInt(exhaustive_members) == order,
                 std::to_string(exhaustive_members) + " vs " + order.str());
  }
  return report;
}

/// Result of enumerating every permutation of the cells.
struct StabilizerReport
{
  std::size_t p = 0;
  std::uint64_t examined = 0;
  std::uint64_t stabilizer_size = 0;
  BigInt wreath_order;
  /// Permutations in W, counted during enumeration.
  std::uint64_t wreath_members = 0;
  /// Members of W that do not stabilize ker A; nonzero is a defect.
  std::uint64_t inclusion_violations = 0;
  bool equal = false;
  /// Lexicographically smallest permutation in the stabilizer but not in W.
  std::optional<CellPermutation> witness;
  std::string warning;

  bool divisibility_holds() const
  {
    return wreath_order != 0 && BigInt(stabilizer_size) % wreath_order == 0;
  }

  std::string summary() const
  {
    std::string s = "stabilizer " + std::to_string(stabilizer_size);
    if (equal)
      return s + " = wreath " + wreath_order.str() + ": EQUAL";
    return s + (BigInt(stabilizer_size) > wreath_order ? " > " : " != ") +
           "wreath " + wreath_order.str() + ": STRICT";
  }

  nlohmann::json to_json() const
  {
    nlohmann::json doc{{"suite", "brute_force_stabilizer"},
                       {"p", p},
                       {"examined", examined},
                       {"stabilizer_size", stabilizer_size},
                       {"wreath_order", wreath_order.str()},
                       {"wreath_members", wreath_members},
                       {"inclusion_violations", inclusion_violations},
                       {"equal", equal},
                       {"divisibility", divisibility_holds()},
                       {"passed", inclusion_violations == 0 &&
                                      divisibility_holds()}};
    if (witness)
      doc["witness"] = witness->image();
    if (!warning.empty())
      doc["warning"] = warning;
    return doc;
  }
};

inline constexpr std::size_t default_brute_force_cells = 8;

/// Enumerates all p! permutations, testing each for stabilizing ker A and
/// for membership in W. Work is split by the image of cell 0 across
/// `threads` workers; results are merged in lexicographic order, so the
/// report does not depend on the thread count.
inline StabilizerReport brute_force_stabilizer(
    HierarchicalModel const &model,
    std::size_t max_cells = default_brute_force_cells, unsigned threads = 1)
{
  std::size_t p = model.p();
  if (p > max_cells)
    throw std::invalid_argument("p = " + std::to_string(p) +
                                " exceeds the brute-force limit of " +
                                std::to_string(max_cells) + " cells");

  WreathGroup group(model);
  auto a = configuration_matrix(model);
  KernelStabilizerCheck stabilizes(a, kernel_basis(a));

  struct Chunk
  {
    std::uint64_t examined = 0, stabilizer = 0, members = 0, violations = 0;
    std::optional<CellPermutation> witness;
  };
  std::vector<Chunk> chunks(p);

  auto run_chunk = [&](std::size_t first) {
    Chunk &out = chunks[first];
    std::vector<std::uint32_t> rest;
    for (std::size_t k = 0; k < p; ++k) {
      if (k != first)
        rest.push_back(static_cast<std::uint32_t>(k));
    }
    std::vector<std::uint32_t> image(p);
    image[0] = static_cast<std::uint32_t>(first);
    do {
      std::copy(rest.begin(), rest.end(), image.begin() + 1);
      CellPermutation g(image);
      bool stab = stabilizes(g);
      bool in_w = contains(group, g);
      ++out.examined;
      out.stabilizer += stab;
      out.members += in_w;
      if (in_w && !stab)
        ++out.violations;
      if (stab && !in_w && !out.witness)
        out.witness = g;
    } while (std::next_permutation(rest.begin(), rest.end()));
  };

  unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(p)));
  if (workers == 1) {
    for (std::size_t f = 0; f < p; ++f)
      run_chunk(f);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t f = w; f < p; f += workers)
          run_chunk(f);
      });
    }
    for (auto &t : pool)
      t.join();
  }

  StabilizerReport report;
  report.p = p;
  report.wreath_order = group_order(group);
  for (auto &c : chunks) {
    report.examined += c.examined;
    report.stabilizer_size += c.stabilizer;
    report.wreath_members += c.members;
    report.inclusion_violations += c.violations;
    if (!report.witness && c.witness)
      report.witness = c.witness;
  }
  report.equal = !report.witness && report.inclusion_violations == 0;
  if (p >= 9)
    report.warning = "enumerating " + factorial(static_cast<unsigned>(p)).str() +
                     " permutations";
  return report;
}

/// Whether the pseudofactor order is trivial. Throws std::logic_error if
/// that disagrees with |W| = prod_rho |I_rho|!.
inline bool corollary_direct_product(HierarchicalModel const &model)
{
  WreathGroup group(model);
  bool trivial = group.poset().trivial_order();
  bool product = group_order(group) == direct_product_order(group);
  if (trivial != product)
    throw std::logic_error("direct-product criterion inconsistent with |W|");
  return trivial;
}

namespace fixtures {

/// Levels (2,2,2,2,2), facets {{1,3},{2,4},{3,4,5}}.
inline HierarchicalModel markov_model()
{
  return HierarchicalModel(
      LevelSpec{{2, 2, 2, 2, 2}},
      {FactorSet::of({0, 2}), FactorSet::of({1, 3}), FactorSet::of({2, 3, 4})},
      "markov");
}

/// A degree-2 move (c1)(c2) - (c3)(c4) given by 1-based cells.
inline CellTable move(HierarchicalModel const &model,
                      std::vector<std::vector<int>> const &plus,
                      std::vector<std::vector<int>> const &minus)
{
  CellTable t = CellTable::zeros(model.space());
  for (auto const &c : plus)
    t[cell_index(model, Cell{c})] += 1;
  for (auto const &c : minus)
    t[cell_index(model, Cell{c})] -= 1;
  return t;
}

/// M1 = (11111)(12211) - (12111)(11211)
inline CellTable markov_m1(HierarchicalModel const &model)
{
  return move(model, {{1, 1, 1, 1, 1}, {1, 2, 2, 1, 1}},
              {{1, 2, 1, 1, 1}, {1, 1, 2, 1, 1}});
}

/// M2 = (11112)(12211) - (12112)(11211)
inline CellTable markov_m2(HierarchicalModel const &model)
{
  return move(model, {{1, 1, 1, 1, 2}, {1, 2, 2, 1, 1}},
              {{1, 2, 1, 1, 2}, {1, 1, 2, 1, 1}});
}

/// Swaps the level of factor 5 when factor 3 is at level 1.
inline WreathElement markov_swap(WreathGroup const &group)
{
  WreathElement w = group.identity();
  std::size_t c = group.poset().find(FactorSet::of({4}));
  auto const &comp = group.components()[c];
  if (comp.ancestors != FactorSet::of({2, 3}))
    throw std::logic_error("unexpected ancestors for factor 5");
  for (std::size_t a = 0; a < comp.ancestor_cells; ++a) {
    auto cell = index_marginal_cell(group.model(), comp.ancestors, a);
    if (cell.coordinates[0] == 1)
      w.components[c][a] = LevelPermutation::transposition(2, 0, 1);
  }
  return w;
}

/// Levels (3,3,3,3,9), facets {{1,2,5},{3,4,5},{1,3,5},{1,2,3,4}}:
/// band, row-in-band, stack, column-in-stack, number.
inline HierarchicalModel sudoku_model()
{
  return HierarchicalModel(LevelSpec{{3, 3, 3, 3, 9}},
                           {FactorSet::of({0, 1, 4}), FactorSet::of({2, 3, 4}),
                            FactorSet::of({0, 2, 4}),
                            FactorSet::of({0, 1, 2, 3})},
                           "sudoku");
}

/// f(i,j,k,l,c) = (k,l,i,j,c): transposes the grid.
inline CellPermutation sudoku_transpose(HierarchicalModel const &model)
{
  std::vector<std::uint32_t> image(model.p());
  for (std::size_t k = 0; k < model.p(); ++k) {
    auto c = index_cell(model, k).coordinates;
    Cell to{{c[2], c[3], c[0], c[1], c[4]}};
    image[k] = static_cast<std::uint32_t>(cell_index(model, to));
  }
  return CellPermutation(std::move(image));
}

} // namespace fixtures

/// Two indispensable moves that the wreath product relates but the direct
/// product of level permutations cannot.
inline SuiteReport markov_fixture()
{
  SuiteReport report;
  report.suite = "markov_fixture";
  auto model = fixtures::markov_model();
  auto a = configuration_matrix(model);
  auto m1 = fixtures::markov_m1(model);
  auto m2 = fixtures::markov_m2(model);

  auto is_zero = [](std::vector<BigInt> const &v) {
    return std::all_of(v.begin(), v.end(), [](BigInt const &x) { return x == 0; });
  };
  auto as_ints = [](CellTable const &t) {
    return detail::clear_denominators(t.values());
  };
  report.check("A*M1 = 0 and A*M2 = 0",
               is_zero(a.multiply(as_ints(m1))) && is_zero(a.multiply(as_ints(m2))));

  WreathGroup group(model);
  auto w = to_cell_permutation(group, fixtures::markov_swap(group));
  bool maps = apply_permutation(w, m1) == m2;
  report.check("conditional factor-5 swap maps M1 to M2",
               maps && contains(group, w), "w in W: " + std::string(contains(group, w) ? "yes" : "no"));

  // Direct product S_2^5: flip any subset of the factors.
  std::size_t mappers = 0, examined = 0;
  for (std::uint32_t flips = 0; flips < (1u << model.m()); ++flips) {
    std::vector<std::uint32_t> image(model.p());
    for (std::size_t k = 0; k < model.p(); ++k) {
      auto c = index_cell(model, k).coordinates;
      for (int j = 0; j < model.m(); ++j) {
        if ((flips >> j) & 1u)
          c[j] = 3 - c[j];
      }
      image[k] = static_cast<std::uint32_t>(cell_index(model, Cell{c}));
    }
    ++examined;
    if (apply_permutation(CellPermutation(image), m1) == m2)
      ++mappers;
  }
  report.sizes["direct_product_examined"] = examined;
  report.check("no direct-product element maps M1 to M2", mappers == 0,
               std::to_string(examined) + " elements examined, " +
                   std::to_string(mappers) + " mappers");
  return report;
}

/// The grid transpose stabilizes the sudoku kernel but lies outside W.
inline SuiteReport sudoku_fixture()
{
  SuiteReport report;
  report.suite = "sudoku_fixture";
  auto model = fixtures::sudoku_model();
  auto a = configuration_matrix(model);
  auto kb = kernel_basis(a);
  auto f = fixtures::sudoku_transpose(model);
  report.sizes["p"] = model.p();
  report.sizes["nu"] = model.nu();
  report.sizes["kernel_dim"] = kb.dim();

  report.check("f stabilizes ker A", stabilizes_kernel(a, kb, f));

  WreathGroup group(model);
  report.check("f is not in W", !contains(group, f));

  auto order = group_order(group);
  report.check("|W| = 609499054080", order == BigInt("609499054080"),
               order.str());

  auto cond = theorem_conditions(model);
  bool all_81 = std::all_of(cond.facet_sizes.begin(), cond.facet_sizes.end(),
                            [](std::size_t s) { return s == 81; });
  report.check("level conditions not met, all facet sizes 81",
               !cond.conditions_met && all_81 && cond.facet_sizes.size() == 4);
  return report;
}

} // namespace toric

#endif
