#include <gtest/gtest.h>

#include "bk/coalgebra.hpp"
#include "bk/completeness.hpp"
#include "bk/error.hpp"

using namespace bk;

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::uint64_t bounded_count(std::uint64_t n, std::size_t m) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < m; ++i) s += binom(n, i);
  return s;
}

std::vector<std::size_t> x_sizes(const TerminalSequence& s) {
  std::vector<std::size_t> out;
  for (const auto& st : s.stages) out.push_back(st.x.size());
  return out;
}

}  // namespace

TEST(BoundedPowerset, Examples) {
  EXPECT_EQ(bounded_powerset(1, 2), (std::vector<Term>{{}, {0}}));
  EXPECT_EQ(bounded_powerset(2, 2), (std::vector<Term>{{}, {0}, {1}}));
  for (std::size_t n : {0u, 1u, 5u}) EXPECT_EQ(bounded_powerset(n, 1), (std::vector<Term>{{}}));
  EXPECT_EQ(bounded_powerset(2, 3), (std::vector<Term>{{}, {0}, {0, 1}, {1}}));
}

TEST(BoundedPowerset, CountMatchesEnumeration) {
  for (std::size_t n = 0; n <= 8; ++n)
    for (std::size_t m = 1; m <= 5; ++m) {
      auto all = bounded_powerset(n, m);
      ASSERT_EQ(all.size(), bounded_count(n, m));
      ASSERT_EQ(bounded_powerset_count(n, m), all.size());
      ASSERT_TRUE(std::is_sorted(all.begin(), all.end()));
      for (const auto& t : all) {
        ASSERT_LT(t.size(), m);
        ASSERT_TRUE(std::is_sorted(t.begin(), t.end()));
      }
    }
  EXPECT_EQ(bounded_powerset_count(1ULL << 40, 8), UINT64_MAX);
}

TEST(TerminalSequence, UnitProfileGrowsByOne) {
  TerminalSequence s = terminal_sequence({1, 1, 2}, 4);
  EXPECT_EQ(x_sizes(s), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  for (const auto& st : s.stages) EXPECT_EQ(st.y.size(), st.x.size());
  EXPECT_FALSE(s.converged_at);
}

TEST(TerminalSequence, TwoByTwo) {
  TerminalSequence s = terminal_sequence({2, 2, 2}, 1);
  EXPECT_EQ(s.stages[1].x.size(), 3u);
  TerminalSequence t = terminal_sequence({2, 2, 3}, 2, 10000);
  EXPECT_EQ(t.stages[1].x.size(), bounded_count(2, 3));
  EXPECT_EQ(t.stages[2].x.size(), bounded_count(2 * 4, 3));
  EXPECT_EQ(t.stages[2].x.size(), 37u);
}

TEST(TerminalSequence, BoundOneConvergesAtOne) {
  TerminalSequence s = terminal_sequence({1, 1, 1}, 3);
  for (const auto& st : s.stages) {
    EXPECT_EQ(st.x.size(), 1u);
    EXPECT_EQ(st.y.size(), 1u);
  }
  EXPECT_EQ(s.converged_at, 1u);
  TerminalSequence wide = terminal_sequence({2, 3, 1}, 3);
  EXPECT_EQ(wide.converged_at, 1u);
}

TEST(TerminalSequence, CapExceeded) {
  try {
    terminal_sequence({2, 2, 3}, 4, 100);
    FAIL();
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.last_completed_level(), 2u);
    EXPECT_EQ(e.partial().stages.size(), 3u);
  }
  EXPECT_THROW(terminal_sequence({0, 1, 2}, 1), PreconditionError);
  EXPECT_THROW(terminal_sequence({1, 1, 0}, 1), PreconditionError);
}

TEST(TerminalSequence, ConnectingMapsByDirectImage) {
  TerminalSequence s = terminal_sequence({2, 1, 3}, 3);
  for (std::size_t k = 2; k < s.stages.size(); ++k) {
    const Stage& st = s.stages[k];
    const Stage& below = s.stages[k - 1];
    std::size_t ny_prev = s.stages[k - 1].y.size();
    for (std::uint32_t i = 0; i < st.x.size(); ++i) {
      Term expect;
      for (std::uint32_t code : st.x.elements[i]) {
        std::uint32_t sb = code / ny_prev, y = code % ny_prev;
        expect.push_back(sb * s.stages[k - 2].y.size() + below.y.down[y]);
      }
      std::sort(expect.begin(), expect.end());
      expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
      ASSERT_EQ(below.x.elements[st.x.down[i]], expect);
    }
  }
}

TEST(TerminalSequence, Rendering) {
  TerminalSequence s = terminal_sequence({1, 1, 2}, 2);
  EXPECT_EQ(render_x_term(s, 0, 0), "*");
  EXPECT_EQ(render_x_term(s, 1, 0), "{}");
  EXPECT_EQ(render_x_term(s, 1, 1), "{(0,*)}");
  EXPECT_EQ(render_y_term(s, 2, 2), "{(0,{(0,*)})}");
}

// Stage sizes follow the closed form, maps are surjective, and sizes strictly
// grow for m >= 2.
TEST(CoalgebraProperty, CardinalityLawAndSurjectivity) {
  for (std::size_t sa = 1; sa <= 2; ++sa)
    for (std::size_t sb = 1; sb <= 2; ++sb)
      for (std::size_t m = 1; m <= 3; ++m) {
        TerminalSequence s = terminal_sequence({sa, sb, m}, 3);
        for (std::size_t k = 1; k < s.stages.size(); ++k) {
          const Stage& prev = s.stages[k - 1];
          const Stage& st = s.stages[k];
          ASSERT_EQ(st.x.size(), bounded_count(sb * prev.y.size(), m));
          ASSERT_EQ(st.y.size(), bounded_count(sa * prev.x.size(), m));
          ASSERT_TRUE(st.x.down_surjective());
          ASSERT_TRUE(st.y.down_surjective());
          if (m >= 2) ASSERT_GT(st.x.size(), prev.x.size());
        }
        if (m >= 2) ASSERT_FALSE(s.converged_at);
        else {
          ASSERT_EQ(s.converged_at, 1u);
          // one more step keeps carriers and bijections
          Stage next = functor_apply(s.stages.back(), s.profile);
          ASSERT_EQ(next.x.size(), s.stages.back().x.size());
          ASSERT_TRUE(next.x.down_bijective() && next.y.down_bijective());
        }
      }
}

TEST(Extract, UnitProfile) {
  TerminalSequence s = terminal_sequence({1, 1, 2}, 2);
  ExtractedModel ex = extract_belief_model(s, 1);
  EXPECT_EQ(ex.model.sort_size("Ua"), 3u);
  EXPECT_EQ(ex.model.sort_size("Ub"), 3u);
  const PredicateFamily& pub = ex.model.family("PUb");
  EXPECT_EQ(pub.size(), 2u);
  EXPECT_TRUE(pub.require_nonempty());
  WitnessReport r = is_assumption_complete(ex.model.relation("Ra"), pub);
  EXPECT_TRUE(r.holds);
  // each predicate is assumed by the state carrying its base
  for (std::size_t i = 0; i < pub.size(); ++i)
    for (State w : ex.on_ub.witnesses[i]) EXPECT_EQ(image(ex.model.relation("Ra"), w).members, pub[i]);
  EXPECT_TRUE(check_retraction(s, 1).holds());
}

TEST(Extract, BoundOneIsVacuous) {
  TerminalSequence s = terminal_sequence({1, 1, 1}, 2);
  ExtractedModel ex = extract_belief_model(s, 1);
  EXPECT_TRUE(ex.model.family("PUb").empty());
  EXPECT_TRUE(ex.model.family("PUa").empty());
  EXPECT_TRUE(is_assumption_complete(ex.model.relation("Ra"), ex.model.family("PUb")).holds);
  RetractionReport ret = check_retraction(s, 1);
  EXPECT_TRUE(ret.holds());
  EXPECT_EQ(ret.a_checked + ret.b_checked, 0u);
  ClosureReport c = verify_closure(ex);
  EXPECT_TRUE(c.all_hold());
}

TEST(Extract, Preconditions) {
  TerminalSequence s = terminal_sequence({1, 1, 2}, 2);
  EXPECT_THROW(extract_belief_model(s, 0), PreconditionError);
  EXPECT_THROW(extract_belief_model(s, 2), PreconditionError);
  EXPECT_THROW(check_retraction(s, 2), PreconditionError);
}

TEST(Closure, IntersectionsWithBoundThree) {
  TerminalSequence s = terminal_sequence({1, 1, 3}, 2);
  ClosureReport c = verify_closure(extract_belief_model(s, 1));
  for (const auto& row : c.rows)
    if (row.construction == "intersection") {
      EXPECT_EQ(row.fails, 0u) << row.side;
      EXPECT_GT(row.holds, 0u) << row.side;
    }
}

TEST(Closure, UnionOfSingletonsNotMeasurableAtTwo) {
  TerminalSequence s = terminal_sequence({1, 1, 2}, 2);
  ClosureReport c = verify_closure(extract_belief_model(s, 1));
  for (const auto& row : c.rows)
    if (row.construction == "union") {
      EXPECT_EQ(row.holds, 0u);
      EXPECT_EQ(row.not_measurable, 1u);
    }
}

// Every profile with strategy sets of size <= 2, m <= 3, d = 1.
TEST(CoalgebraProperty, ExtractedModelsAreAssumptionComplete) {
  for (std::size_t sa = 1; sa <= 2; ++sa)
    for (std::size_t sb = 1; sb <= 2; ++sb)
      for (std::size_t m = 1; m <= 3; ++m) {
        TerminalSequence s = terminal_sequence({sa, sb, m}, 2);
        ExtractedModel ex = extract_belief_model(s, 1);
        const BeliefStructure& bm = ex.model;
        ASSERT_EQ(bm.sort_size("Ua"), sa * s.stages[2].x.size());
        ASSERT_EQ(bm.sort_size("Ub"), sb * s.stages[2].y.size());
        ASSERT_EQ(bm.family("PUb").size(), bounded_count(sb * s.stages[1].y.size(), m) - 1);
        ASSERT_TRUE(is_assumption_complete(bm.relation("Ra"), bm.family("PUb")).holds);
        ASSERT_TRUE(is_assumption_complete(bm.relation("Rb"), bm.family("PUa")).holds);
        ASSERT_TRUE(check_retraction(s, 1).holds());
      }
}
