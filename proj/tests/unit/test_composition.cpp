#include <gtest/gtest.h>

#include "bk/composition.hpp"
#include "bk/error.hpp"
#include "oracle.hpp"

using namespace bk;

namespace {

Relation ra() { return Relation::from_pairs("Ua", 2, "Ub", 2, {{0, 0}, {0, 1}, {1, 1}}); }
Relation rb() { return Relation::from_pairs("Ub", 2, "Ua", 2, {{0, 0}, {1, 1}}); }

PredicateFamily singletons(const std::string& sort) {
  return PredicateFamily(sort, 2, {BitSet(2, {0}), BitSet(2, {1})}, true);
}

using Pairs = std::vector<std::pair<State, State>>;

}  // namespace

TEST(CompositionLemma, AllHypothesesHold) {
  CompositionReport r =
      composition_lemma_check(Relation::identity("Ub", 2), rb(), singletons("Ub"), singletons("Ua"));
  EXPECT_TRUE(r.hypothesis_1.holds);
  EXPECT_TRUE(r.hypothesis_2.holds);
  EXPECT_TRUE(r.hypothesis_3_holds);
  EXPECT_TRUE(r.conclusion.holds);
  EXPECT_TRUE(r.consistent);
  ASSERT_EQ(r.hypothesis_3.size(), 2u);
  EXPECT_EQ(r.hypothesis_3[0].boxplus, BitSet(2, {0}));
  EXPECT_TRUE(r.hypothesis_3[0].in_family);
}

TEST(CompositionLemma, FirstHypothesisFailsOnM1) {
  CompositionReport r = composition_lemma_check(ra(), rb(), singletons("Ub"), singletons("Ua"));
  EXPECT_FALSE(r.hypothesis_1.holds);
  EXPECT_EQ(r.hypothesis_1.failing_predicate, BitSet(2, {0}));
  EXPECT_TRUE(r.consistent);
}

TEST(CompositionLemma, IdentitiesTrivially) {
  PredicateFamily f("A", 2, {BitSet(2, {0})}, true);
  CompositionReport r = composition_lemma_check(Relation::identity("A", 2), Relation::identity("A", 2), f, f);
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_TRUE(r.conclusion.holds);
}

TEST(CompositionLemma, Errors) {
  EXPECT_THROW(composition_lemma_check(ra(), ra(), singletons("Ub"), singletons("Ub")), SortError);
  PredicateFamily with_empty("Ua", 2, {BitSet(2)});
  EXPECT_THROW(composition_lemma_check(ra(), rb(), singletons("Ub"), with_empty), ValidationError);
  EXPECT_THROW(composition_lemma_check(ra(), rb(), singletons("Ua"), singletons("Ua")), SortError);
}

TEST(CharacteristicRelation, MapsIntoTwoPoints) {
  Relation s = characteristic_relation({"B", BitSet(3, {1})});
  EXPECT_EQ(s.to_sort(), "C");
  EXPECT_EQ(s.pairs(), (Pairs{{0, 0}, {1, 1}, {2, 0}}));
}

TEST(Counterexample, EscapingY) {
  Relation r = Relation::from_pairs("A", 1, "B", 2, {{0, 1}});
  Counterexample ce = belief_incompleteness_counterexample(r, {"B", BitSet(2, {0})});
  EXPECT_EQ(ce.s.pairs(), (Pairs{{0, 1}, {1, 0}}));
  EXPECT_EQ(ce.composite.pairs(), (Pairs{{0, 0}}));
  EXPECT_TRUE(ce.s_assumption_complete);
  EXPECT_FALSE(ce.composite_assumption_complete);
  EXPECT_TRUE(ce.valid());
  ASSERT_EQ(ce.evidence.size(), 1u);
  EXPECT_EQ(ce.evidence[0].kind, Evidence::Kind::EscapingY);
  EXPECT_EQ(ce.evidence[0].y, 1u);
}

TEST(Counterexample, EmptyImage) {
  Relation r("A", 1, "B", 1);
  Counterexample ce = belief_incompleteness_counterexample(r, {"B", BitSet(1, {0})});
  EXPECT_EQ(ce.s.pairs(), (Pairs{{0, 1}}));
  EXPECT_TRUE(ce.composite.empty());
  ASSERT_EQ(ce.evidence.size(), 1u);
  EXPECT_EQ(ce.evidence[0].kind, Evidence::Kind::EmptyImage);
  EXPECT_FALSE(ce.evidence[0].y);
}

TEST(Counterexample, FullRelation) {
  Relation r = Relation::full("A", 2, "B", 2);
  Counterexample ce = belief_incompleteness_counterexample(r, {"B", BitSet(2, {0})});
  ASSERT_EQ(ce.evidence.size(), 2u);
  for (State x = 0; x < 2; ++x) {
    EXPECT_EQ(ce.evidence[x].x, x);
    EXPECT_EQ(ce.evidence[x].kind, Evidence::Kind::EscapingY);
    EXPECT_EQ(ce.evidence[x].y, 1u);
  }
}

TEST(Counterexample, TargetSortAvoidsCollision) {
  Relation r = Relation::full("A", 1, "C", 2);
  Counterexample ce = belief_incompleteness_counterexample(r, {"C", BitSet(2, {0})});
  EXPECT_EQ(ce.s.to_sort(), "C'");
}

TEST(Counterexample, Preconditions) {
  EXPECT_THROW(belief_incompleteness_counterexample(ra(), {"Ub", BitSet(2, {1})}), PreconditionError);
  EXPECT_THROW(belief_incompleteness_counterexample(ra(), {"Ub", BitSet(2)}), PreconditionError);
}

TEST(Characterize, Examples) {
  Characterization ok = characterize_belief_completeness(ra(), PredicateFamily("Ub", 2, {BitSet(2, {1})}, true));
  EXPECT_TRUE(ok.complete);
  EXPECT_EQ(ok.belief.witnesses[0].second, 1u);
  EXPECT_FALSE(ok.counterexample);

  Characterization bad = characterize_belief_completeness(ra(), PredicateFamily("Ub", 2, {BitSet(2, {0})}, true));
  EXPECT_FALSE(bad.complete);
  ASSERT_TRUE(bad.counterexample);
  EXPECT_TRUE(bad.counterexample->valid());
  EXPECT_EQ(bad.counterexample->p.members, BitSet(2, {0}));

  EXPECT_TRUE(characterize_belief_completeness(Relation::identity("A", 3),
                                               PredicateFamily("A", 3, {BitSet(3, {2})}, true))
                  .complete);
}

// Every relation with |A|, |B| <= 2 in both legs of the composite, every pair
// of nonempty families of size <= 2: hypotheses imply the conclusion, and the
// report matches oracle verdicts.
TEST(CompositionProperty, GluingLemmaSmall) {
  std::size_t with_all_hypotheses = 0;
  for (std::size_t a = 1; a <= 2; ++a)
    for (std::size_t b = 1; b <= 2; ++b)
      for (std::size_t c = 1; c <= 2; ++c) {
        auto families = [](std::size_t n) {
          std::vector<std::vector<std::uint64_t>> out;
          for (std::uint64_t p = 1; p < (1ULL << n); ++p) {
            out.push_back({p});
            for (std::uint64_t q = p + 1; q < (1ULL << n); ++q) out.push_back({p, q});
          }
          return out;
        };
        auto fb = families(b), fc = families(c);
        for (std::uint64_t m1 = 0; m1 < (1ULL << (a * b)); ++m1)
          for (std::uint64_t m2 = 0; m2 < (1ULL << (b * c)); ++m2) {
            Relation r1 = Relation::from_mask("A", a, "B", b, m1);
            Relation r2 = Relation::from_mask("B", b, "C", c, m2);
            auto o1 = oracle::to_rel(r1), o2 = oracle::to_rel(r2);
            auto o12 = oracle::compose(o1, o2, c);
            for (const auto& pb : fb)
              for (const auto& pc : fc) {
                std::vector<BitSet> bb, bc;
                std::vector<oracle::Set> sb, sc;
                for (auto p : pb) bb.push_back(BitSet::from_mask(b, p)), sb.push_back(oracle::set_from_mask(b, p));
                for (auto p : pc) bc.push_back(BitSet::from_mask(c, p)), sc.push_back(oracle::set_from_mask(c, p));
                CompositionReport rep = composition_lemma_check(
                    r1, r2, PredicateFamily("B", b, bb, true), PredicateFamily("C", c, bc, true));
                ASSERT_EQ(rep.hypothesis_1.holds, oracle::belief_complete(o1, sb));
                ASSERT_EQ(rep.hypothesis_2.holds, oracle::assumption_complete(o2, sc));
                ASSERT_EQ(rep.conclusion.holds, oracle::assumption_complete(o12, sc));
                bool h3 = true;
                for (const auto& p : sc) {
                  oracle::Set bp(b);
                  for (std::size_t y = 0; y < b; ++y) bp[y] = oracle::assumes(o2, y, p);
                  bool in = false;
                  for (const auto& q : sb) in = in || q == bp;
                  h3 = h3 && in;
                }
                ASSERT_EQ(rep.hypothesis_3_holds, h3);
                ASSERT_TRUE(rep.consistent);
                if (rep.hypotheses_hold()) {
                  ++with_all_hypotheses;
                  ASSERT_TRUE(rep.conclusion.holds);
                }
              }
          }
      }
  EXPECT_GT(with_all_hypotheses, 0u);
}

// Every r : A -> B with |A|, |B| <= 3 and every nonempty p it fails to
// believe: the constructed composite verifies against the oracle.
TEST(CompositionProperty, CounterexampleValid) {
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 1; b <= 3; ++b)
      for (std::uint64_t mr = 0; mr < (1ULL << (a * b)); ++mr) {
        Relation r = Relation::from_mask("A", a, "B", b, mr);
        auto o = oracle::to_rel(r);
        for (std::uint64_t mp = 1; mp < (1ULL << b); ++mp) {
          Predicate p("B", BitSet::from_mask(b, mp));
          auto ps = oracle::set_from_mask(b, mp);
          if (oracle::belief_complete(o, {ps})) {
            ASSERT_THROW(belief_incompleteness_counterexample(r, p), PreconditionError);
            continue;
          }
          Counterexample ce = belief_incompleteness_counterexample(r, p);
          auto s = oracle::to_rel(ce.s);
          oracle::Set one{false, true};
          ASSERT_TRUE(oracle::assumption_complete(s, {one}));
          ASSERT_FALSE(oracle::assumption_complete(oracle::compose(o, s, 2), {one}));
          ASSERT_TRUE(ce.valid());
          ASSERT_EQ(ce.evidence.size(), a);
          for (const auto& e : ce.evidence) {
            if (e.kind == Evidence::Kind::EmptyImage) {
              ASSERT_FALSE(oracle::serial_at(o, e.x));
            } else {
              ASSERT_TRUE(o[e.x][*e.y]);
              ASSERT_FALSE(ps[*e.y]);
            }
          }
        }
      }
}

// characterize agrees with "for every p, the canonical composite is
// assumption-complete".
TEST(CompositionProperty, CharacterizationRoundTrip) {
  for (std::uint64_t mr = 0; mr < (1ULL << 6); ++mr) {
    Relation r = Relation::from_mask("A", 2, "B", 3, mr);
    for (std::uint64_t mp = 1; mp < 8; ++mp)
      for (std::uint64_t mq = mp; mq < 8; ++mq) {
        PredicateFamily f("B", 3, {BitSet::from_mask(3, mp), BitSet::from_mask(3, mq)}, true);
        bool all_composites = true;
        for (const auto& p : f.members()) {
          Relation s = characteristic_relation({"B", p});
          PredicateFamily one("C", 2, {BitSet(2, {1})}, true);
          all_composites = all_composites && is_assumption_complete(compose(r, s), one).holds;
        }
        ASSERT_EQ(characterize_belief_completeness(r, f).complete, all_composites);
      }
  }
}
