#include "bk/bitset.hpp"

#include <cassert>

namespace bk {

BitSet::BitSet(std::size_t width) : width_(width) {
  if (width_ > kWordBits) heap_.assign(word_count(), 0);
}

BitSet::BitSet(std::size_t width, std::initializer_list<std::size_t> members) : BitSet(width) {
  for (std::size_t m : members) set(m);
}

BitSet BitSet::full(std::size_t width) {
  BitSet b(width);
  for (Word& w : b.words()) w = ~Word{0};
  b.trim();
  return b;
}

BitSet BitSet::from_mask(std::size_t width, Word mask) {
  assert(width <= kWordBits);
  BitSet b(width);
  b.inline_ = mask;
  b.trim();
  return b;
}

BitSet BitSet::from_members(std::size_t width, std::span<const std::size_t> members) {
  BitSet b(width);
  for (std::size_t m : members) b.set(m);
  return b;
}

void BitSet::trim() {
  if (width_ == 0) {
    inline_ = 0;
    return;
  }
  std::size_t tail = width_ % kWordBits;
  if (tail != 0) words()[word_count() - 1] &= (Word{1} << tail) - 1;
}

std::size_t BitSet::count() const {
  std::size_t n = 0;
  for (Word w : words()) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitSet::any() const {
  for (Word w : words())
    if (w != 0) return true;
  return false;
}

bool BitSet::is_subset_of(const BitSet& other) const {
  assert(width_ == other.width_);
  auto a = words();
  auto b = other.words();
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

bool BitSet::intersects(const BitSet& other) const {
  assert(width_ == other.width_);
  auto a = words();
  auto b = other.words();
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] & b[i]) != 0) return true;
  return false;
}

std::size_t BitSet::first() const {
  auto ws = words();
  for (std::size_t i = 0; i < ws.size(); ++i)
    if (ws[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(ws[i]));
  return width_;
}

std::size_t BitSet::next(std::size_t i) const {
  std::size_t j = i + 1;
  if (j >= width_) return width_;
  auto ws = words();
  std::size_t wi = j / kWordBits;
  Word w = ws[wi] & (~Word{0} << (j % kWordBits));
  while (true) {
    if (w != 0) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
    if (++wi >= ws.size()) return width_;
    w = ws[wi];
  }
}

std::vector<std::size_t> BitSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t i = first(); i < width_; i = next(i)) out.push_back(i);
  return out;
}

BitSet& BitSet::operator&=(const BitSet& other) {
  assert(width_ == other.width_);
  auto a = words();
  auto b = other.words();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] &= b[i];
  return *this;
}

BitSet& BitSet::operator|=(const BitSet& other) {
  assert(width_ == other.width_);
  auto a = words();
  auto b = other.words();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
  return *this;
}

BitSet& BitSet::operator^=(const BitSet& other) {
  assert(width_ == other.width_);
  auto a = words();
  auto b = other.words();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
  return *this;
}

BitSet BitSet::complement() const {
  BitSet b = *this;
  for (Word& w : b.words()) w = ~w;
  b.trim();
  return b;
}

bool operator==(const BitSet& a, const BitSet& b) {
  if (a.width_ != b.width_) return false;
  auto x = a.words();
  auto y = b.words();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return false;
  return true;
}

bool operator<(const BitSet& a, const BitSet& b) {
  if (a.width_ != b.width_) return a.width_ < b.width_;
  auto x = a.words();
  auto y = b.words();
  for (std::size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] < y[i];
  return false;
}

std::string BitSet::to_string() const {
  std::string s = "{";
  bool first_member = true;
  for (std::size_t i = first(); i < width_; i = next(i)) {
    if (!first_member) s += ',';
    s += std::to_string(i);
    first_member = false;
  }
  s += '}';
  return s;
}

std::size_t BitSet::hash() const {
  std::size_t h = std::hash<std::size_t>{}(width_);
  for (Word w : words()) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace bk
