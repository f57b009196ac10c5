#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace toric;
using fixture::make;
using fixture::set;

namespace {

std::vector<HierarchicalModel> small_models()
{
  return {
      make({2, 3}, {{1}, {2}}),
      make({2, 2, 2}, {{1, 2}, {2, 3}}),
      make({3, 2}, {{1}}),
      make({2, 2, 2}, {{1}, {2, 3}}),
      make({2, 3, 2}, {{1}, {2}}),
      make({2, 2, 2}, {{1, 2}, {2, 3}, {1, 3}}),
  };
}

std::set<std::vector<std::uint32_t>> images(WreathGroup const &group)
{
  std::set<std::vector<std::uint32_t>> out;
  for (auto const &w : oracle::enumerate_group(group))
    out.insert(to_cell_permutation(group, w).image());
  return out;
}

} // namespace

TEST(Act, Identity)
{
  WreathGroup g(fixture::chain4());
  for (std::size_t k = 0; k < g.p(); k += 7) {
    auto c = index_cell(g.model(), k);
    EXPECT_EQ(act(g, g.identity(), c), c);
  }
}

TEST(Act, ConditionalSwapOnChain)
{
  WreathGroup g(fixture::chain4());
  auto w = g.identity();
  auto c1 = g.poset().find(set({1}));
  ASSERT_EQ(g.components()[c1].ancestors, set({2}));
  w.components[c1][0] = LevelPermutation::transposition(3, 0, 1); // i_2 = 1
  EXPECT_EQ(act(g, w, Cell{{1, 1, 1, 1}}), (Cell{{2, 1, 1, 1}}));
  EXPECT_EQ(act(g, w, Cell{{1, 2, 1, 1}}), (Cell{{1, 2, 1, 1}}));
}

TEST(Act, MarkovSwap)
{
  WreathGroup g(fixtures::markov_model());
  auto w = fixtures::markov_swap(g);
  EXPECT_EQ(act(g, w, Cell{{1, 1, 1, 1, 1}}), (Cell{{1, 1, 1, 1, 2}}));
  EXPECT_EQ(act(g, w, Cell{{1, 2, 2, 1, 1}}), (Cell{{1, 2, 2, 1, 1}}));
}

TEST(ToCellPermutation, Examples)
{
  WreathGroup g(make({2, 2}, {{1}, {2}}));
  EXPECT_TRUE(to_cell_permutation(g, g.identity()).is_identity());
  auto w = g.identity();
  w.components[g.poset().find(set({1}))][0] = LevelPermutation::transposition(2, 0, 1);
  EXPECT_EQ(to_cell_permutation(g, w).image(), (std::vector<std::uint32_t>{2, 3, 0, 1}));
}

TEST(ToCellPermutation, MatchesDefinitionCellwise)
{
  // (w i)_rho = w_rho(i_{A(rho)}) i_rho, evaluated on coordinates.
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    auto m = fixture::random_model(rng, 4, 200);
    WreathGroup g(m);
    auto w = sample_uniform(g, rng());
    auto perm = to_cell_permutation(g, w);
    for (std::size_t k = 0; k < m.p(); ++k) {
      auto cell = index_cell(m, k);
      Cell out = cell;
      for (std::size_t c = 0; c < g.components().size(); ++c) {
        auto const &comp = g.components()[c];
        auto a = marginal_cell_index(m, project_cell(cell, comp.ancestors));
        auto r = marginal_cell_index(m, project_cell(cell, comp.members));
        auto moved = index_marginal_cell(m, comp.members, w.components[c][a][r]);
        auto members = comp.members.members();
        for (std::size_t s = 0; s < members.size(); ++s)
          out.coordinates[members[s]] = moved.coordinates[s];
      }
      ASSERT_EQ(index_cell(m, perm[k]), out);
    }
  }
}

TEST(Compose, Homomorphism)
{
  std::mt19937_64 rng(32);
  for (int t = 0; t < 5; ++t) {
    auto m = fixture::random_model(rng, 4, 100);
    WreathGroup g(m);
    for (int s = 0; s < 100; ++s) {
      auto w1 = sample_uniform(g, rng());
      auto w2 = sample_uniform(g, rng());
      auto w3 = sample_uniform(g, rng());
      EXPECT_EQ(to_cell_permutation(g, compose(g, w1, w2)),
                to_cell_permutation(g, w1) * to_cell_permutation(g, w2));
      EXPECT_EQ(compose(g, w1, g.identity()), w1);
      EXPECT_EQ(compose(g, g.identity(), w1), w1);
      EXPECT_EQ(compose(g, w1, inverse(g, w1)), g.identity());
      EXPECT_EQ(compose(g, compose(g, w1, w2), w3), compose(g, w1, compose(g, w2, w3)));
    }
  }
}

TEST(Compose, GroupMismatch)
{
  WreathGroup a(make({2, 3}, {{1}, {2}}));
  WreathGroup b(make({2, 2, 2}, {{1, 2}, {2, 3}}));
  EXPECT_THROW(compose(a, a.identity(), b.identity()), std::invalid_argument);
  EXPECT_THROW(inverse(a, b.identity()), std::invalid_argument);
}

TEST(GroupOrder, Examples)
{
  WreathGroup g23(make({2, 3}, {{1}, {2}}));
  EXPECT_EQ(group_order(g23), 12);
  EXPECT_EQ(images(g23).size(), 12u);

  WreathGroup g222(make({2, 2, 2}, {{1, 2}, {2, 3}}));
  EXPECT_EQ(group_order(g222), 32);
  EXPECT_EQ(oracle::enumerate_group(g222).size(), 32u);
  EXPECT_EQ(images(g222).size(), 32u);

  WreathGroup gs(fixtures::sudoku_model());
  EXPECT_EQ(group_order(gs), BigInt("609499054080"));
  BigInt f3 = 6;
  EXPECT_EQ(group_order(gs), f3 * f3 * f3 * f3 * f3 * f3 * f3 * f3 * factorial(9));
}

TEST(GroupOrder, FaithfulEnumeration)
{
  std::mt19937_64 rng(33);
  int checked = 0;
  while (checked < 25) {
    auto m = fixture::random_model(rng, 4, 12, 3);
    WreathGroup g(m);
    if (group_order(g) > 10000)
      continue;
    auto all = oracle::enumerate_group(g);
    EXPECT_EQ(BigInt(all.size()), group_order(g));
    EXPECT_EQ(BigInt(images(g).size()), group_order(g));
    ++checked;
  }
}

TEST(GroupOrder, DirectProductIffTrivialOrder)
{
  std::mt19937_64 rng(34);
  for (int t = 0; t < 200; ++t) {
    WreathGroup g(fixture::random_model(rng, 6, 5000, 4));
    EXPECT_EQ(g.poset().trivial_order(), group_order(g) == direct_product_order(g));
  }
}

TEST(Sample, TrivialGroupHitsBoth)
{
  WreathGroup g(make({2}, {{1}}));
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint64_t s = 0; s < 64; ++s)
    seen.insert(to_cell_permutation(g, sample_uniform(g, s)).image());
  EXPECT_EQ(seen.size(), 2u);
}

TEST(Sample, CoversGroupAndIsDeterministic)
{
  WreathGroup g(make({2, 3}, {{1}, {2}}));
  auto all = images(g);
  std::map<std::vector<std::uint32_t>, int> counts;
  for (auto const &w : sample_many(g, 12000, 0))
    ++counts[to_cell_permutation(g, w).image()];
  EXPECT_EQ(counts.size(), 12u);
  for (auto const &[img, n] : counts) {
    EXPECT_TRUE(all.count(img));
    EXPECT_GE(n, 850);
    EXPECT_LE(n, 1150);
  }
  EXPECT_EQ(sample_uniform(g, 42), sample_uniform(g, 42));
  EXPECT_EQ(sample_many(g, 10, 7), sample_many(g, 10, 7));
}

TEST(Sample, DistinctElementsGiveDistinctPermutations)
{
  WreathGroup g(fixture::chain4());
  std::map<std::vector<std::uint32_t>, WreathElement> seen;
  for (auto const &w : sample_many(g, 200, 3)) {
    auto img = to_cell_permutation(g, w).image();
    auto [it, fresh] = seen.emplace(img, w);
    if (!fresh) {
      EXPECT_EQ(it->second, w);
    }
  }
}

TEST(Contains, Examples)
{
  auto sudoku = fixtures::sudoku_model();
  WreathGroup gs(sudoku);
  EXPECT_TRUE(contains(gs, CellPermutation::identity(gs.p())));
  EXPECT_FALSE(contains(gs, fixtures::sudoku_transpose(sudoku)));

  auto m = make({2, 2}, {{1}, {2}});
  WreathGroup g(m);
  auto t = CellPermutation::transposition(4, cell_index(m, Cell{{1, 1}}),
                                          cell_index(m, Cell{{2, 2}}));
  EXPECT_FALSE(contains(g, t));
  EXPECT_THROW(contains(g, CellPermutation::identity(5)), std::invalid_argument);
}

TEST(Contains, MatchesEnumeratedGroup)
{
  for (auto const &m : small_models()) {
    if (m.p() > 7)
      continue;
    WreathGroup g(m);
    auto members = images(g);
    std::vector<std::uint32_t> image(m.p());
    std::iota(image.begin(), image.end(), 0u);
    do {
      CellPermutation perm(image);
      EXPECT_EQ(contains(g, perm), members.count(image) == 1);
    } while (std::next_permutation(image.begin(), image.end()));
  }
}

TEST(Factorize, Examples)
{
  WreathGroup g(fixture::chain4());
  auto id = factorize(g, CellPermutation::identity(g.p()));
  ASSERT_TRUE(id);
  EXPECT_EQ(*id, g.identity());

  auto sudoku = fixtures::sudoku_model();
  WreathGroup gs(sudoku);
  EXPECT_FALSE(factorize(gs, fixtures::sudoku_transpose(sudoku)));
}

TEST(Factorize, RoundTrip)
{
  std::mt19937_64 rng(35);
  for (int t = 0; t < 5; ++t) {
    WreathGroup g(fixture::random_model(rng, 5, 300));
    for (int s = 0; s < 100; ++s) {
      auto w = sample_uniform(g, rng());
      auto perm = to_cell_permutation(g, w);
      auto back = factorize(g, perm);
      ASSERT_TRUE(back);
      EXPECT_EQ(*back, w);
      EXPECT_EQ(to_cell_permutation(g, *back), perm);
    }
  }
}

TEST(Generators, Examples)
{
  WreathGroup s2(make({2}, {{1}}));
  auto g1 = generators(s2);
  ASSERT_EQ(g1.size(), 1u);
  EXPECT_EQ(g1[0].image(), (std::vector<std::uint32_t>{1, 0}));

  WreathGroup g23(make({2, 3}, {{1}, {2}}));
  auto gens = generators(g23);
  EXPECT_EQ(gens.size(), 3u);
  EXPECT_EQ(oracle::closure(gens, 6), images(g23));

  // chain: i_1 swaps conditioned on each of the four i_2 values
  auto chain = fixture::chain4();
  WreathGroup gc(chain);
  auto gc_gens = generators(gc);
  for (int i2 = 1; i2 <= 4; ++i2) {
    bool found = false;
    for (auto const &perm : gc_gens) {
      bool ok = true;
      for (std::size_t k = 0; k < chain.p() && ok; ++k) {
        auto c = index_cell(chain, k);
        auto d = c;
        if (c.coordinates[1] == i2 && c.coordinates[0] <= 2)
          d.coordinates[0] = 3 - c.coordinates[0];
        ok = index_cell(chain, perm[k]) == d;
      }
      found = found || ok;
    }
    EXPECT_TRUE(found) << "i_2 = " << i2;
  }
}

TEST(Generators, GenerateWholeGroup)
{
  for (auto const &m : small_models()) {
    WreathGroup g(m);
    if (group_order(g) > 5000)
      continue;
    EXPECT_EQ(oracle::closure(generators(g), m.p()), images(g));
  }
}

TEST(FacetCriterion, Examples)
{
  auto sudoku = fixtures::sudoku_model();
  WreathGroup gs(sudoku);
  EXPECT_TRUE(facet_criterion_member(sudoku, CellPermutation::identity(729)));
  EXPECT_FALSE(facet_criterion_member(sudoku, fixtures::sudoku_transpose(sudoku)));
  for (auto const &w : sample_many(gs, 5, 1))
    EXPECT_TRUE(facet_criterion_member(sudoku, to_cell_permutation(gs, w)));
}

TEST(FacetCriterion, EquivalentToWreathMembership)
{
  for (auto const &m : small_models()) {
    auto r = check_facet_criterion_equivalence(m, 300, 5);
    EXPECT_TRUE(r.passed) << m.name() << r.to_text();
  }
  std::mt19937_64 rng(36);
  for (int t = 0; t < 20; ++t) {
    auto r = check_facet_criterion_equivalence(fixture::random_model(rng, 5, 400), 200, t);
    EXPECT_TRUE(r.passed) << r.to_text();
  }
}

TEST(WreathGroup, ComponentLabels)
{
  WreathGroup g(fixtures::sudoku_model());
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < g.components().size(); ++c)
    labels.push_back(g.component_label(c));
  EXPECT_EQ(labels, (std::vector<std::string>{"S*_{1}", "S*_{2|1}", "S*_{3}", "S*_{4|3}",
                                              "S*_{5}"}));
}
