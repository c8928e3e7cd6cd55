#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fia/errors.hpp"

namespace fia {

// Finite poset with a dense le-table. Labels are sorted at construction so
// every iteration order downstream is deterministic.
class FinitePoset {
 public:
  FinitePoset(std::vector<std::string> labels, std::vector<std::vector<char>> leq)
      : labels_(std::move(labels)), leq_(std::move(leq)) {}

  int size() const { return static_cast<int>(labels_.size()); }
  bool leq(int x, int y) const { return leq_[x][y] != 0; }
  bool lt(int x, int y) const { return x != y && leq(x, y); }
  bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }

  const std::string& label(int x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }

  int index_of(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label)
      throw UnknownLabel("unknown poset element '" + label + "'");
    return static_cast<int>(it - labels_.begin());
  }

  bool has_label(const std::string& label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
  }

  // [x,y] in index order
  std::vector<int> interval(int x, int y) const {
    std::vector<int> zs;
    for (int z = 0; z < size(); ++z)
      if (leq(x, z) && leq(z, y)) zs.push_back(z);
    return zs;
  }

  // all (x,y) with x <= y, lexicographic
  std::vector<std::pair<int, int>> comparable_pairs() const {
    std::vector<std::pair<int, int>> ps;
    for (int x = 0; x < size(); ++x)
      for (int y = 0; y < size(); ++y)
        if (leq(x, y)) ps.emplace_back(x, y);
    return ps;
  }

  bool is_cover(int x, int y) const {
    if (!lt(x, y)) return false;
    for (int z = 0; z < size(); ++z)
      if (z != x && z != y && leq(x, z) && leq(z, y)) return false;
    return true;
  }

  std::vector<std::pair<int, int>> cover_pairs() const {
    std::vector<std::pair<int, int>> ps;
    for (int x = 0; x < size(); ++x)
      for (int y = 0; y < size(); ++y)
        if (is_cover(x, y)) ps.emplace_back(x, y);
    return ps;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<char>> leq_;
};

using PosetPtr = std::shared_ptr<const FinitePoset>;

// Reflexive-transitive closure of the declared covers. Rejects duplicate or
// unknown labels and any cycle the closure would create.
inline PosetPtr build_poset(std::vector<std::string> elements,
                            const std::vector<std::pair<std::string, std::string>>& covers) {
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 1; i < elements.size(); ++i)
    if (elements[i] == elements[i - 1])
      throw UnknownLabel("duplicate poset element '" + elements[i] + "'");
  if (elements.empty()) throw UnknownLabel("poset needs at least one element");

  const int n = static_cast<int>(elements.size());
  auto idx = [&](const std::string& l) {
    auto it = std::lower_bound(elements.begin(), elements.end(), l);
    if (it == elements.end() || *it != l)
      throw UnknownLabel("cover refers to unknown element '" + l + "'");
    return static_cast<int>(it - elements.begin());
  };

  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) leq[i][i] = 1;
  for (const auto& [lo, hi] : covers) leq[idx(lo)][idx(hi)] = 1;

  // Warshall
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq[i][k])
        for (int j = 0; j < n; ++j)
          if (leq[k][j]) leq[i][j] = 1;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq[i][j] && leq[j][i])
        throw CycleError("antisymmetry violated: " + elements[i] + " <= " + elements[j] +
                         " and " + elements[j] + " <= " + elements[i]);

  return std::make_shared<FinitePoset>(std::move(elements), std::move(leq));
}

// Connectivity of the comparability graph.
inline bool is_connected(const FinitePoset& poset) {
  const int n = poset.size();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y = 0; y < n; ++y)
      if (!seen[y] && x != y && poset.comparable(x, y)) {
        seen[y] = 1;
        stack.push_back(y);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

inline int component_count(const FinitePoset& poset) {
  const int n = poset.size();
  std::vector<char> seen(n, 0);
  int comps = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++comps;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y)
        if (!seen[y] && x != y && poset.comparable(x, y)) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
  }
  return comps;
}

// A bijection of X, tagged as order-preserving (automorphism) or as an
// order-reversing involution (lambda).
struct PosetMap {
  enum class Kind { Automorphism, Involution };

  PosetPtr poset;
  std::vector<int> image;
  Kind kind;

  int apply(int x) const { return image[x]; }

  std::vector<int> inverse_image() const {
    std::vector<int> inv(image.size());
    for (std::size_t x = 0; x < image.size(); ++x) inv[image[x]] = static_cast<int>(x);
    return inv;
  }

  bool operator==(const PosetMap& other) const { return image == other.image; }
};

inline bool is_order_automorphism(const FinitePoset& poset, const std::vector<int>& image) {
  const int n = poset.size();
  std::vector<char> hit(n, 0);
  for (int x = 0; x < n; ++x) {
    if (image[x] < 0 || image[x] >= n || hit[image[x]]) return false;
    hit[image[x]] = 1;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (poset.leq(x, y) != poset.leq(image[x], image[y])) return false;
  return true;
}

inline bool is_order_reversing_involution(const FinitePoset& poset,
                                          const std::vector<int>& image) {
  const int n = poset.size();
  for (int x = 0; x < n; ++x) {
    if (image[x] < 0 || image[x] >= n) return false;
    if (image[image[x]] != x) return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (poset.leq(x, y) != poset.leq(image[y], image[x])) return false;
  return true;
}

inline PosetMap make_automorphism(PosetPtr poset, std::vector<int> image) {
  if (!is_order_automorphism(*poset, image))
    throw InvalidInvolution("map is not an order automorphism");
  return PosetMap{std::move(poset), std::move(image), PosetMap::Kind::Automorphism};
}

inline PosetMap make_poset_involution(PosetPtr poset, std::vector<int> image) {
  if (!is_order_reversing_involution(*poset, image))
    throw InvalidInvolution("map is not an order-reversing involution");
  return PosetMap{std::move(poset), std::move(image), PosetMap::Kind::Involution};
}

inline PosetMap identity_automorphism(PosetPtr poset) {
  std::vector<int> image(poset->size());
  for (int x = 0; x < poset->size(); ++x) image[x] = x;
  return PosetMap{std::move(poset), std::move(image), PosetMap::Kind::Automorphism};
}

namespace detail {

// order condition over all currently assigned points
inline bool partial_consistent(const FinitePoset& poset, const std::vector<int>& image,
                               bool reversing) {
  const int n = poset.size();
  for (int a = 0; a < n; ++a) {
    if (image[a] < 0) continue;
    for (int b = 0; b < n; ++b) {
      if (image[b] < 0) continue;
      bool want = reversing ? poset.leq(image[b], image[a]) : poset.leq(image[a], image[b]);
      if (poset.leq(a, b) != want) return false;
    }
  }
  return true;
}

inline void search_automorphisms(const FinitePoset& poset, std::vector<int>& image,
                                 std::vector<char>& used, int x,
                                 std::vector<std::vector<int>>& out) {
  const int n = poset.size();
  if (x == n) {
    out.push_back(image);
    return;
  }
  for (int y = 0; y < n; ++y) {
    if (used[y]) continue;
    image[x] = y;
    used[y] = 1;
    if (partial_consistent(poset, image, false))
      search_automorphisms(poset, image, used, x + 1, out);
    image[x] = -1;
    used[y] = 0;
  }
}

// Assigns two-cycles as pairs so lambda^2 = id holds by construction.
inline void search_involutions(const FinitePoset& poset, std::vector<int>& image,
                               std::vector<char>& used, int x,
                               std::vector<std::vector<int>>& out) {
  const int n = poset.size();
  if (x == n) {
    out.push_back(image);
    return;
  }
  if (image[x] >= 0) {  // paired with a smaller element already
    search_involutions(poset, image, used, x + 1, out);
    return;
  }
  for (int y = x; y < n; ++y) {  // y < x is impossible: it would have paired x
    if (used[y]) continue;
    image[x] = y;
    used[y] = 1;
    if (y != x) {
      image[y] = x;
      used[x] = 1;
    }
    if (partial_consistent(poset, image, true))
      search_involutions(poset, image, used, x + 1, out);
    image[x] = -1;
    used[y] = 0;
    if (y != x) {
      image[y] = -1;
      used[x] = 0;
    }
  }
}

}  // namespace detail

// All order automorphisms, deterministic (lexicographic) order.
// Intended for |X| <= ~10.
inline std::vector<PosetMap> enumerate_automorphisms(PosetPtr poset) {
  const int n = poset->size();
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::vector<std::vector<int>> found;
  detail::search_automorphisms(*poset, image, used, 0, found);
  std::vector<PosetMap> out;
  out.reserve(found.size());
  for (auto& img : found)
    out.push_back(PosetMap{poset, std::move(img), PosetMap::Kind::Automorphism});
  return out;
}

// All order-reversing involutions; empty when the poset is not self-dual.
inline std::vector<PosetMap> enumerate_involutions(PosetPtr poset) {
  const int n = poset->size();
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::vector<std::vector<int>> found;
  detail::search_involutions(*poset, image, used, 0, found);
  std::vector<PosetMap> out;
  out.reserve(found.size());
  for (auto& img : found)
    out.push_back(PosetMap{poset, std::move(img), PosetMap::Kind::Involution});
  return out;
}

// Partition (X1, X2, X3): X3 the fixed points, lambda swaps X1 and X2,
// X1 downward closed, X2 upward closed.
struct LambdaDecomposition {
  std::vector<int> x1, x2, x3;  // sorted index lists

  enum class Part { X1, X2, X3 };
  Part part_of(int x) const {
    if (std::binary_search(x1.begin(), x1.end(), x)) return Part::X1;
    if (std::binary_search(x2.begin(), x2.end(), x)) return Part::X2;
    return Part::X3;
  }
  bool in_x3(int x) const { return std::binary_search(x3.begin(), x3.end(), x); }
};

namespace detail {

inline bool valid_decomposition(const FinitePoset& poset, const std::vector<int>& lambda,
                                const std::vector<int>& part /* 1,2,3 per element */) {
  const int n = poset.size();
  for (int x = 0; x < n; ++x) {
    if ((lambda[x] == x) != (part[x] == 3)) return false;
    if (part[x] == 1 && part[lambda[x]] != 2) return false;
    if (part[x] == 2 && part[lambda[x]] != 1) return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (part[x] == 1 && poset.leq(y, x) && part[y] != 1) return false;
      if (part[x] == 2 && poset.leq(x, y) && part[y] != 2) return false;
      if (part[x] == 3 && part[y] == 3 && x != y && poset.lt(x, y)) return false;
    }
  return true;
}

}  // namespace detail

// The cited existence theorem gives no algorithm, so we search the 2^k
// side assignments of the k two-cycles (k <= |X|/2, trivial at desk scale)
// and return the first assignment that verifies, in canonical order.
inline LambdaDecomposition lambda_decomposition(const PosetMap& lambda) {
  const FinitePoset& poset = *lambda.poset;
  const int n = poset.size();
  if (!is_order_reversing_involution(poset, lambda.image))
    throw InvalidInvolution("lambda_decomposition needs an order-reversing involution");

  std::vector<std::pair<int, int>> cycles;  // (x, lambda(x)), x < lambda(x) by index
  std::vector<int> part(n, 0);
  for (int x = 0; x < n; ++x) {
    if (lambda.image[x] == x)
      part[x] = 3;
    else if (x < lambda.image[x])
      cycles.emplace_back(x, lambda.image[x]);
  }

  const int k = static_cast<int>(cycles.size());
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    for (int c = 0; c < k; ++c) {
      bool first_low = ((mask >> c) & 1u) == 0;
      part[cycles[c].first] = first_low ? 1 : 2;
      part[cycles[c].second] = first_low ? 2 : 1;
    }
    if (detail::valid_decomposition(poset, lambda.image, part)) {
      LambdaDecomposition dec;
      for (int x = 0; x < n; ++x) {
        if (part[x] == 1) dec.x1.push_back(x);
        else if (part[x] == 2) dec.x2.push_back(x);
        else dec.x3.push_back(x);
      }
      return dec;
    }
  }
  throw DecompositionError("no (X1,X2,X3) assignment satisfies the closure conditions");
}

// Searches for an automorphism alpha with alpha o lambda2 = lambda1 o alpha.
// First witness in enumeration order; nullopt means not equivalent.
inline std::optional<PosetMap> poset_involutions_equivalent(const PosetMap& lambda1,
                                                            const PosetMap& lambda2) {
  if (lambda1.poset->size() != lambda2.poset->size())
    throw MismatchedCarrier("involutions live on different posets");
  for (auto& alpha : enumerate_automorphisms(lambda1.poset)) {
    bool ok = true;
    for (int x = 0; x < lambda1.poset->size() && ok; ++x)
      ok = alpha.image[lambda2.image[x]] == lambda1.image[alpha.image[x]];
    if (ok) return alpha;
  }
  return std::nullopt;
}

// All intertwining automorphisms (deterministic order) for the classifier.
inline std::vector<PosetMap> intertwining_automorphisms(const PosetMap& lambda1,
                                                        const PosetMap& lambda2) {
  std::vector<PosetMap> out;
  for (auto& alpha : enumerate_automorphisms(lambda1.poset)) {
    bool ok = true;
    for (int x = 0; x < lambda1.poset->size() && ok; ++x)
      ok = alpha.image[lambda2.image[x]] == lambda1.image[alpha.image[x]];
    if (ok) out.push_back(alpha);
  }
  return out;
}

}  // namespace fia
