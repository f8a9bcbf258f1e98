#ifndef BK_BITSET_HPP
#define BK_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bk {

/// Fixed-width dynamic bit vector. Widths up to 64 bits live inline, which
/// covers every carrier the exhaustive checks enumerate.
class BitSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitSet() = default;
  explicit BitSet(std::size_t width);
  BitSet(std::size_t width, std::initializer_list<std::size_t> members);

  static BitSet full(std::size_t width);
  /// Low `width` bits of `mask`; width must be <= 64.
  static BitSet from_mask(std::size_t width, Word mask);
  static BitSet from_members(std::size_t width, std::span<const std::size_t> members);

  std::size_t width() const { return width_; }
  bool test(std::size_t i) const {
    return (words()[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i) { words()[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words()[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  std::size_t count() const;
  bool any() const;
  bool none() const { return !any(); }
  bool all() const { return count() == width_; }
  bool is_subset_of(const BitSet& other) const;
  bool intersects(const BitSet& other) const;

  /// Least member index, or width() if empty.
  std::size_t first() const;
  /// Next member strictly after i, or width() if none.
  std::size_t next(std::size_t i) const;
  std::vector<std::size_t> members() const;

  /// Low 64 bits; only meaningful for width <= 64.
  Word mask() const { return width_ == 0 ? 0 : words()[0]; }

  BitSet& operator&=(const BitSet& other);
  BitSet& operator|=(const BitSet& other);
  BitSet& operator^=(const BitSet& other);
  BitSet complement() const;

  friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
  friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
  friend BitSet operator^(BitSet a, const BitSet& b) { return a ^= b; }
  friend bool operator==(const BitSet& a, const BitSet& b);
  /// Numeric order, reading bit i as 2^i.
  friend bool operator<(const BitSet& a, const BitSet& b);

  /// Renders as "{0,2,3}".
  std::string to_string() const;
  std::size_t hash() const;

 private:
  std::size_t word_count() const { return (width_ + kWordBits - 1) / kWordBits; }
  std::span<Word> words() {
    return width_ <= kWordBits ? std::span<Word>(&inline_, 1) : std::span<Word>(heap_);
  }
  std::span<const Word> words() const {
    return width_ <= kWordBits ? std::span<const Word>(&inline_, 1)
                               : std::span<const Word>(heap_);
  }
  void trim();

  std::size_t width_ = 0;
  Word inline_ = 0;
  std::vector<Word> heap_;
};

}  // namespace bk

template <>
struct std::hash<bk::BitSet> {
  std::size_t operator()(const bk::BitSet& b) const noexcept { return b.hash(); }
};

#endif  // BK_BITSET_HPP
