#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "helpers.hpp"
#include "treemult/canonical.hpp"
#include "treemult/enumerate.hpp"
#include "treemult/error.hpp"
#include "treemult/families.hpp"
#include "treemult/spectrum.hpp"

using testing_support::random_tree;
using treemult::Classifier;
using treemult::Disposition;
using treemult::Family;
using treemult::FamilyTag;
using treemult::Gamma2Mode;
using treemult::LambdaSpec;
using treemult::Tree;
using treemult::Vertex;

namespace {

std::set<std::string> codes(const std::vector<Tree>& trees) {
  std::set<std::string> out;
  for (const auto& t : trees) out.insert(treemult::canonical_code(t));
  return out;
}

// Components of the subgraph induced by keep minus w, as sorted vertex lists.
std::vector<std::vector<Vertex>> split(const Tree& t, const std::set<Vertex>& keep, Vertex w) {
  std::vector<std::vector<Vertex>> out;
  std::set<Vertex> seen{w};
  for (Vertex start : t.neighbors(w)) {
    if (!keep.count(start) || seen.count(start)) continue;
    std::vector<Vertex> comp;
    std::queue<Vertex> todo;
    todo.push(start);
    seen.insert(start);
    while (!todo.empty()) {
      Vertex v = todo.front();
      todo.pop();
      comp.push_back(v);
      for (Vertex u : t.neighbors(v)) {
        if (keep.count(u) && !seen.count(u)) {
          seen.insert(u);
          todo.push(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t induced_degree(const Tree& t, const std::set<Vertex>& keep, Vertex v) {
  std::size_t d = 0;
  for (Vertex u : t.neighbors(v)) d += keep.count(u);
  return d;
}

bool induced_path(const Tree& t, const std::vector<Vertex>& comp) {
  const std::set<Vertex> keep(comp.begin(), comp.end());
  return std::all_of(comp.begin(), comp.end(), [&](Vertex v) { return induced_degree(t, keep, v) <= 2; });
}

std::size_t induced_majors(const Tree& t, const std::vector<Vertex>& comp) {
  const std::set<Vertex> keep(comp.begin(), comp.end());
  return std::count_if(comp.begin(), comp.end(), [&](Vertex v) { return induced_degree(t, keep, v) >= 3; });
}

// Re-checks a witness chain against the family definitions using only
// vertex sets of the original tree.
void replay(const Tree& t, const treemult::FamilyResult& result, const LambdaSpec& lambda, Gamma2Mode mode) {
  std::vector<Vertex> all(t.size());
  std::iota(all.begin(), all.end(), 0);
  std::set<Vertex> current(all.begin(), all.end());
  ASSERT_EQ(result.witness.size(), result.tag.k);
  for (std::size_t s = 0; s < result.witness.size(); ++s) {
    const auto& step = result.witness[s];
    const std::vector<Vertex> cur_list(current.begin(), current.end());
    EXPECT_EQ(step.family.k, induced_majors(t, cur_list));
    EXPECT_GE(induced_degree(t, current, step.major_vertex), 3u);
    auto expected = split(t, current, step.major_vertex);
    std::vector<std::vector<Vertex>> got;
    for (const auto& c : step.components) got.push_back(c.vertices);
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, expected);

    std::size_t distinguished = 0;
    std::size_t gamma2_zero = 0;
    const std::vector<Vertex>* next = nullptr;
    for (const auto& c : step.components) {
      EXPECT_TRUE(t.adjacent(step.major_vertex, c.attach));
      const std::set<Vertex> comp_set(c.vertices.begin(), c.vertices.end());
      EXPECT_EQ(c.attach_pendant, c.vertices.size() == 1 || induced_degree(t, comp_set, c.attach) == 1);
      switch (c.disposition) {
        case Disposition::Gamma0:
          EXPECT_TRUE(induced_path(t, c.vertices));
          EXPECT_EQ((c.vertices.size() + 1) % lambda.denominator(), 0u);
          EXPECT_TRUE(c.attach_pendant);
          break;
        case Disposition::Gamma2Zero:
          ++gamma2_zero;
          EXPECT_TRUE(induced_path(t, c.vertices));
          EXPECT_TRUE(treemult::is_gamma2_0(Tree::path(c.vertices.size()), lambda, mode));
          EXPECT_TRUE(c.attach_pendant);
          break;
        case Disposition::Gamma:
        case Disposition::Gamma2:
          ++distinguished;
          next = &c.vertices;
          EXPECT_EQ(induced_majors(t, c.vertices), step.family.k - 1);
          if (!(step.family.family == Family::Gamma2 && step.clause == 2)) EXPECT_TRUE(c.attach_pendant);
          if (step.family.family == Family::Gamma2 && step.clause == 2) EXPECT_FALSE(c.attach_pendant);
          break;
      }
    }
    if (step.family.k == 1) {
      EXPECT_EQ(distinguished, 0u);
      if (step.family.family == Family::Gamma2 && step.clause == 1) {
        EXPECT_EQ(gamma2_zero, 3u);
        EXPECT_EQ(step.components.size(), 3u);
      }
      if (step.family.family == Family::Gamma2 && step.clause == 2) EXPECT_EQ(gamma2_zero, 1u);
      if (step.family.family == Family::Gamma) EXPECT_EQ(gamma2_zero, 0u);
    } else {
      EXPECT_EQ(distinguished, 1u);
      EXPECT_EQ(gamma2_zero, step.family.family == Family::Gamma2 && step.clause == 3 ? 1u : 0u);
    }
    if (next == nullptr) break;
    current = std::set<Vertex>(next->begin(), next->end());
  }
}

}  // namespace

TEST(Families, TagTextRoundTrip) {
  for (const FamilyTag tag : {FamilyTag{}, FamilyTag{Family::Gamma, 0}, FamilyTag{Family::Gamma2, 12}}) {
    EXPECT_EQ(FamilyTag::parse(tag.to_string()), tag);
  }
  EXPECT_EQ((FamilyTag{Family::Gamma2, 1}).to_string(), "GAMMA2(1)");
  EXPECT_THROW(FamilyTag::parse("GAMMA(x)"), std::invalid_argument);
  EXPECT_EQ(treemult::parse_gamma2_mode("strict"), Gamma2Mode::Strict);
  EXPECT_THROW(treemult::parse_gamma2_mode("loose"), std::invalid_argument);
}

TEST(Families, Gamma0Examples) {
  EXPECT_TRUE(treemult::is_gamma0(Tree::path(5), LambdaSpec(1, 2)));
  EXPECT_FALSE(treemult::is_gamma0(Tree::path(4), LambdaSpec(1, 2)));
  for (unsigned m = 2; m <= 7; ++m) EXPECT_FALSE(treemult::is_gamma0(Tree::star(3), LambdaSpec(1, m)));
}

TEST(Families, Gamma2ZeroExamples) {
  EXPECT_TRUE(treemult::is_gamma2_0(Tree::path(2), LambdaSpec(1, 2), Gamma2Mode::Strict));
  EXPECT_FALSE(treemult::is_gamma2_0(Tree::path(3), LambdaSpec(1, 3), Gamma2Mode::Strict));
  EXPECT_TRUE(treemult::is_gamma2_0(Tree::path(3), LambdaSpec(1, 3), Gamma2Mode::Broad));
  EXPECT_FALSE(treemult::is_gamma2_0(Tree::path(1), LambdaSpec(1, 2), Gamma2Mode::Strict));
  EXPECT_FALSE(treemult::is_gamma2_0(Tree::path(1), LambdaSpec(1, 2), Gamma2Mode::Broad));
}

TEST(Families, StrictIsContainedInBroadForPaths) {
  for (unsigned m = 2; m <= 12; ++m) {
    for (const LambdaSpec& l : treemult::chebyshev_lambdas(m)) {
      for (std::size_t n = 1; n <= 30; ++n) {
        if (treemult::is_gamma2_0(Tree::path(n), l, Gamma2Mode::Strict)) {
          EXPECT_TRUE(treemult::is_gamma2_0(Tree::path(n), l, Gamma2Mode::Broad));
        }
      }
    }
  }
}

TEST(Families, ClassifyExamples) {
  const Classifier c;
  const LambdaSpec zero(1, 2);
  EXPECT_EQ(c.classify_tag(Tree::path(5), zero, Gamma2Mode::Broad).to_string(), "GAMMA(0)");
  EXPECT_EQ(c.classify_tag(Tree::star(4), zero, Gamma2Mode::Broad).to_string(), "GAMMA(1)");
  for (Gamma2Mode mode : {Gamma2Mode::Strict, Gamma2Mode::Broad}) {
    EXPECT_EQ(c.classify_tag(Tree::spider({2, 2, 2}), zero, mode).to_string(), "GAMMA2(1)");
  }
  const Tree s331 = Tree::spider({3, 3, 1});
  EXPECT_EQ(c.classify_tag(s331, LambdaSpec(1, 3), Gamma2Mode::Broad).to_string(), "GAMMA2(1)");
  EXPECT_EQ(c.classify_tag(s331, LambdaSpec(1, 3), Gamma2Mode::Strict).to_string(), "NONE");
  EXPECT_EQ(c.classify_tag(Tree::star(3), LambdaSpec(1, 6), Gamma2Mode::Strict).to_string(), "NONE");
  EXPECT_EQ(c.classify_tag(Tree::star(3), LambdaSpec(1, 6), Gamma2Mode::Broad).to_string(), "GAMMA2(1)");
  EXPECT_GT(c.memo_size(), 0u);
}

TEST(Families, DoubleStarIsOutsideGamma2AtZero) {
  // Both centers have degree 3; deleting either leaves P_1, P_1 and a P_3
  // attached at its middle vertex, which has no major vertex. Yet m = p - 2.
  const Tree double_star(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}});
  const LambdaSpec zero(1, 2);
  EXPECT_EQ(treemult::multiplicity(double_star, zero), 2u);
  EXPECT_EQ(treemult::pendant_count(double_star), 4u);
  for (Gamma2Mode mode : {Gamma2Mode::Strict, Gamma2Mode::Broad}) {
    EXPECT_EQ(treemult::classify(double_star, zero, mode).tag.to_string(), "NONE");
  }
}

TEST(Families, WitnessChainsReplay) {
  const Classifier c;
  std::size_t replayed = 0;
  for (std::size_t n = 4; n <= 10; ++n) {
    for (const Tree& t : treemult::enumerate_trees(n)) {
      for (const LambdaSpec& l : treemult::chebyshev_lambdas(7)) {
        for (Gamma2Mode mode : {Gamma2Mode::Strict, Gamma2Mode::Broad}) {
          const auto result = c.classify(t, l, mode);
          if (result.tag.family == Family::None) {
            EXPECT_TRUE(result.witness.empty());
            continue;
          }
          EXPECT_EQ(result.tag.k, treemult::major_count(t));
          replay(t, result, l, mode);
          ++replayed;
        }
      }
    }
  }
  EXPECT_GT(replayed, 100u);
}

TEST(Families, ClassificationIsIsomorphismInvariant) {
  std::mt19937_64 rng(53);
  const Classifier c;
  for (int trial = 0; trial < 100; ++trial) {
    const Tree t = random_tree(4 + trial % 12, rng);
    std::vector<Vertex> order(t.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const Tree u = treemult::relabel(t, order);
    for (const LambdaSpec& l : treemult::chebyshev_lambdas(6)) {
      for (Gamma2Mode mode : {Gamma2Mode::Strict, Gamma2Mode::Broad}) {
        EXPECT_EQ(treemult::classify(t, l, mode).tag, treemult::classify(u, l, mode).tag);
        EXPECT_EQ(c.classify_tag(t, l, mode), c.classify_tag(u, l, mode));
      }
    }
  }
}

TEST(Families, GammaMembersHaveMultiplicityPMinusOne) {
  const Classifier c;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (const Tree& t : treemult::enumerate_trees(n)) {
      for (const LambdaSpec& l : treemult::chebyshev_lambdas(static_cast<unsigned>(n) + 1)) {
        const bool member = c.in_gamma(t, l);
        const bool at_bound = treemult::multiplicity(t, l) + 1 == treemult::pendant_count(t);
        EXPECT_EQ(member, at_bound) << treemult::canonical_code(t) << " " << l.to_string();
      }
    }
  }
}

TEST(Generate, Examples) {
  const LambdaSpec zero(1, 2);
  const auto gamma0 = treemult::generate(Family::Gamma, 0, zero, 6);
  EXPECT_EQ(codes(gamma0), codes({Tree::path(1), Tree::path(3), Tree::path(5)}));

  const auto gamma1 = codes(treemult::generate(Family::Gamma, 1, zero, 7));
  const std::vector<Tree> expected{Tree::star(3),           Tree::star(4),           Tree::star(5),
                                   Tree::star(6),           Tree::spider({3, 1, 1}), Tree::spider({3, 1, 1, 1})};
  EXPECT_EQ(gamma1, codes(expected));

  const auto gamma2 = codes(treemult::generate(Family::Gamma2, 1, zero, 7, Gamma2Mode::Broad));
  EXPECT_TRUE(gamma2.count(treemult::canonical_code(Tree::spider({2, 2, 2}))));
}

TEST(Generate, OutputIsCanonicalAndOrdered) {
  const auto members = treemult::generate(Family::Gamma2, 2, LambdaSpec(1, 3), 12);
  ASSERT_FALSE(members.empty());
  for (std::size_t k = 0; k < members.size(); ++k) {
    EXPECT_EQ(members[k], treemult::canonical_tree(members[k]));
    if (k > 0) {
      const auto& a = members[k - 1];
      const auto& b = members[k];
      EXPECT_TRUE(a.size() < b.size() ||
                  (a.size() == b.size() && treemult::canonical_code(a) < treemult::canonical_code(b)));
    }
  }
}

TEST(Generate, ClosureAgainstClassifierOnSmallRange) {
  const Classifier c;
  for (unsigned m = 2; m <= 5; ++m) {
    for (const LambdaSpec& l : treemult::chebyshev_lambdas(m)) {
      if (l.denominator() != m) continue;
      for (Gamma2Mode mode : {Gamma2Mode::Strict, Gamma2Mode::Broad}) {
        for (unsigned k = 0; k <= 2; ++k) {
          for (Family family : {Family::Gamma, Family::Gamma2}) {
            std::set<std::string> expected;
            for (std::size_t n = 1; n <= 9; ++n) {
              for (const Tree& t : treemult::enumerate_trees(n)) {
                if (treemult::major_count(t) != k) continue;
                const bool in = family == Family::Gamma ? c.in_gamma(t, l) : c.in_gamma2(t, l, mode);
                if (in) expected.insert(treemult::canonical_code(t));
              }
            }
            EXPECT_EQ(codes(treemult::generate(family, k, l, 9, mode)), expected)
                << l.to_string() << " k=" << k << " family=" << static_cast<int>(family);
          }
        }
      }
    }
  }
}

TEST(Generate, RejectsOversizedRequests) {
  try {
    treemult::generate(Family::Gamma, 1, LambdaSpec(1, 2), 31);
    ADD_FAILURE() << "expected LIMIT_EXCEEDED";
  } catch (const treemult::Error& e) {
    EXPECT_EQ(e.code(), treemult::ErrorCode::LimitExceeded);
  }
  EXPECT_THROW(treemult::generate(Family::None, 1, LambdaSpec(1, 2), 5), std::invalid_argument);
}
