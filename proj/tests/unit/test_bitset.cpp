#include <gtest/gtest.h>

#include <set>

#include "bk/bitset.hpp"

using bk::BitSet;

TEST(BitSet, EmptyWidth) {
  BitSet b(0);
  EXPECT_EQ(b.count(), 0u);
  EXPECT_TRUE(b.none());
  EXPECT_TRUE(b.all());
  EXPECT_EQ(b.to_string(), "{}");
  EXPECT_EQ(b.first(), 0u);
}

TEST(BitSet, MembersAndString) {
  BitSet b(5, {0, 2, 4});
  EXPECT_EQ(b.members(), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(b.to_string(), "{0,2,4}");
  EXPECT_EQ(b.count(), 3u);
  EXPECT_EQ(b.complement(), BitSet(5, {1, 3}));
}

TEST(BitSet, FullTrimsPadding) {
  BitSet f = BitSet::full(3);
  EXPECT_EQ(f.count(), 3u);
  EXPECT_EQ(f.mask(), 0b111u);
  EXPECT_TRUE(f.complement().none());
}

TEST(BitSet, WideSetsAcrossWords) {
  BitSet b(130);
  for (std::size_t i : {0u, 63u, 64u, 127u, 129u}) b.set(i);
  EXPECT_EQ(b.count(), 5u);
  std::vector<std::size_t> seen;
  for (std::size_t i = b.first(); i < b.width(); i = b.next(i)) seen.push_back(i);
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 63, 64, 127, 129}));
  EXPECT_EQ(b.complement().count(), 125u);
  EXPECT_TRUE(BitSet::full(130).all());
}

TEST(BitSet, SubsetAndIntersectMatchSetSemantics) {
  const std::size_t n = 4;
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t c = 0; c < 16; ++c) {
      BitSet x = BitSet::from_mask(n, a), y = BitSet::from_mask(n, c);
      EXPECT_EQ(x.is_subset_of(y), (a & ~c) == 0);
      EXPECT_EQ(x.intersects(y), (a & c) != 0);
      EXPECT_EQ((x & y).mask(), a & c);
      EXPECT_EQ((x | y).mask(), a | c);
      EXPECT_EQ((x ^ y).mask(), a ^ c);
      EXPECT_EQ(x < y, a < c);
    }
}

TEST(BitSet, HashSeparatesSmallSets) {
  std::set<std::size_t> hashes;
  for (std::uint64_t a = 0; a < 64; ++a) hashes.insert(BitSet::from_mask(6, a).hash());
  EXPECT_EQ(hashes.size(), 64u);
}
