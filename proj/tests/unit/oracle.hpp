#pragma once

// Brute-force reference semantics on plain nested vectors. Nothing here calls
// into the library's algorithms; only the conversions touch bk types.

#include <cstdint>
#include <random>
#include <vector>

#include "bk/model.hpp"

namespace oracle {

using Set = std::vector<bool>;
using Rel = std::vector<std::vector<bool>>;  // rel[x][y]

inline Set to_set(const bk::BitSet& b) {
  Set s(b.width());
  for (std::size_t i = 0; i < b.width(); ++i) s[i] = b.test(i);
  return s;
}

inline bk::BitSet to_bits(const Set& s) {
  bk::BitSet b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) b.set(i);
  return b;
}

inline Rel to_rel(const bk::Relation& r) {
  Rel out(r.from_size(), Set(r.to_size()));
  for (std::size_t x = 0; x < r.from_size(); ++x)
    for (std::size_t y = 0; y < r.to_size(); ++y) out[x][y] = r.test(x, y);
  return out;
}

inline Set set_from_mask(std::size_t n, std::uint64_t mask) {
  Set s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1U;
  return s;
}

inline Rel rel_from_mask(std::size_t n, std::size_t k, std::uint64_t mask) {
  Rel r(n, Set(k));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < k; ++y) r[x][y] = (mask >> (x * k + y)) & 1U;
  return r;
}

inline std::size_t cols(const Rel& r, std::size_t fallback) { return r.empty() ? fallback : r[0].size(); }

inline Rel compose(const Rel& r, const Rel& s, std::size_t c) {
  Rel out(r.size(), Set(c));
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < r[x].size(); ++y)
      for (std::size_t z = 0; z < c; ++z)
        if (r[x][y] && s[y][z]) out[x][z] = true;
  return out;
}

inline bool assumes(const Rel& r, std::size_t x, const Set& p) {
  for (std::size_t y = 0; y < p.size(); ++y)
    if (r[x][y] != p[y]) return false;
  return true;
}

inline bool believes(const Rel& r, std::size_t x, const Set& p) {
  for (std::size_t y = 0; y < p.size(); ++y)
    if (r[x][y] && !p[y]) return false;
  return true;
}

inline bool serial_at(const Rel& r, std::size_t x) {
  for (bool b : r[x])
    if (b) return true;
  return false;
}

inline bool assumption_complete(const Rel& r, const std::vector<Set>& fam) {
  for (const auto& p : fam) {
    bool found = false;
    for (std::size_t x = 0; x < r.size() && !found; ++x) found = assumes(r, x, p);
    if (!found) return false;
  }
  return true;
}

inline bool belief_complete(const Rel& r, const std::vector<Set>& fam) {
  for (const auto& p : fam) {
    bool found = false;
    for (std::size_t x = 0; x < r.size() && !found; ++x)
      found = serial_at(r, x) && believes(r, x, p);
    if (!found) return false;
  }
  return true;
}

inline bool vwps(const Rel& r, const std::vector<Set>& fam) {
  for (const auto& p : fam) {
    bool found = false;
    for (std::size_t x = 0; x < r.size() && !found; ++x) found = r[x][x] == p[x];
    if (!found) return false;
  }
  return true;
}

/// The three sequents, quantifying over x and y literally.
struct Bk {
  bool a1 = true, a2 = true, a3 = false;
};

inline Bk bk_assumptions(const Rel& ra, const Rel& rb, const Set& p, std::size_t c) {
  Bk out;
  std::size_t nb = rb.size();
  for (std::size_t y = 0; y < nb; ++y) {
    if (!ra[c][y]) continue;
    out.a3 = true;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (rb[y][x] && !p[x]) out.a1 = false;
      if (p[x] && !rb[y][x]) out.a2 = false;
    }
  }
  return out;
}

inline Set q(const Rel& ra, const Rel& rb) {
  Set out(ra.size());
  for (std::size_t x = 0; x < ra.size(); ++x)
    for (std::size_t y = 0; y < rb.size(); ++y)
      if (ra[x][y] && rb[y][x]) out[x] = true;
  return out;
}

inline bk::Relation make(const Rel& r, const std::string& from, const std::string& to,
                         std::size_t to_size) {
  bk::Relation out(from, r.size(), to, to_size);
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < to_size; ++y)
      if (r[x][y]) out.set(x, y);
  return out;
}

inline Rel random_rel(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::bernoulli_distribution coin(0.5);
  Rel r(n, Set(k));
  for (auto& row : r)
    for (std::size_t y = 0; y < k; ++y) row[y] = coin(rng);
  return r;
}

}  // namespace oracle
