#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fia/poset.hpp"

namespace fia {

namespace detail {

inline uint64_t relation_mask(const std::vector<std::vector<char>>& leq, int n) {
  uint64_t m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq[i][j]) m |= uint64_t{1} << (i * n + j);
  return m;
}

inline void permutations_of(int n, std::vector<std::vector<int>>& out) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace detail

// All posets on n labeled points {1..n} up to isomorphism, connected ones
// only. Enumeration assigns each unordered pair one of {incomparable, <, >},
// keeps the transitive relations, and dedups by the minimal relation mask
// over all relabelings. Intended for n <= 6.
inline std::vector<PosetPtr> connected_posets_of_size(int n) {
  std::vector<std::pair<int, int>> upairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) upairs.emplace_back(i, j);

  std::vector<std::vector<int>> perms;
  detail::permutations_of(n, perms);

  std::set<uint64_t> canon_seen;
  std::vector<PosetPtr> out;
  const long long total = [&] {
    long long t = 1;
    for (std::size_t k = 0; k < upairs.size(); ++k) t *= 3;
    return t;
  }();

  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (long long code = 0; code < total; ++code) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) leq[i][j] = (i == j);
    long long c = code;
    for (const auto& [i, j] : upairs) {
      int state = static_cast<int>(c % 3);
      c /= 3;
      if (state == 1) leq[i][j] = 1;
      if (state == 2) leq[j][i] = 1;
    }
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (int k = 0; k < n && transitive; ++k) {
        if (!leq[i][k]) continue;
        for (int j = 0; j < n; ++j)
          if (leq[k][j] && !leq[i][j]) {
            transitive = false;
            break;
          }
      }
    if (!transitive) continue;

    uint64_t canon = ~uint64_t{0};
    for (const auto& p : perms) {
      uint64_t m = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (leq[i][j]) m |= uint64_t{1} << (p[i] * n + p[j]);
      if (m < canon) canon = m;
    }
    if (!canon_seen.insert(canon).second) continue;

    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    auto poset = std::make_shared<FinitePoset>(std::move(labels), leq);
    if (is_connected(*poset)) out.push_back(std::move(poset));
  }
  return out;
}

inline std::vector<PosetPtr> all_connected_posets(int max_n) {
  std::vector<PosetPtr> out;
  for (int n = 1; n <= max_n; ++n)
    for (auto& p : connected_posets_of_size(n)) out.push_back(std::move(p));
  return out;
}

}  // namespace fia
