#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fia/algebra.hpp"
#include "fia/smith.hpp"

namespace fia {

template <InvolutiveField F>
struct CoboundaryWitness {
  // sigma(x,y) = c(x) c(y)^-1
  std::map<int, typename F::Element> c;
};

template <InvolutiveField F>
struct CocycleObstruction {
  std::vector<int> walk;  // closed walk in the comparability graph
  typename F::Element product;  // sigma-product along the walk, != 1
};

template <InvolutiveField F>
struct CoboundaryResult {
  std::optional<CoboundaryWitness<F>> witness;
  std::optional<CocycleObstruction<F>> obstruction;
  bool is_coboundary() const { return witness.has_value(); }
};

// Spanning-tree propagation over the comparability graph. Success returns c
// with sigma = dc; failure returns a closed walk whose sigma-product is not 1.
template <InvolutiveField F>
CoboundaryResult<F> is_coboundary(const Cocycle<F>& sigma) {
  const auto& poset = *sigma.poset();
  const auto& field = sigma.field();
  const int n = poset.size();

  std::vector<int> parent(n, -1);
  std::vector<char> known(n, 0);
  std::map<int, typename F::Element> c;

  for (int root = 0; root < n; ++root) {
    if (known[root]) continue;
    known[root] = 1;
    c.emplace(root, field.one());
    std::vector<int> queue{root};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int v = queue[h];
      for (int w = 0; w < n; ++w) {
        if (known[w] || !poset.comparable(v, w) || v == w) continue;
        // sigma(x,y) = c(x) c(y)^-1 along the tree edge
        if (poset.leq(v, w))
          c.emplace(w, field.inv(sigma.at(v, w)) * c.at(v));
        else
          c.emplace(w, sigma.at(w, v) * c.at(v));
        known[w] = 1;
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }

  for (const auto& [x, y] : poset.comparable_pairs()) {
    if (x == y) continue;
    if (sigma.at(x, y) * c.at(y) == c.at(x)) continue;
    // closed walk root..x, y, ..root certifying the obstruction
    std::vector<int> to_x, to_y;
    for (int v = x; v >= 0; v = parent[v]) to_x.push_back(v);
    for (int v = y; v >= 0; v = parent[v]) to_y.push_back(v);
    std::vector<int> walk(to_x.rbegin(), to_x.rend());
    walk.insert(walk.end(), to_y.begin(), to_y.end());
    auto product = sigma.at(x, y) * c.at(y) * field.inv(c.at(x));
    return CoboundaryResult<F>{std::nullopt,
                               CocycleObstruction<F>{std::move(walk), product}};
  }
  return CoboundaryResult<F>{CoboundaryWitness<F>{std::move(c)}, std::nullopt};
}

// diagonal unit d with Psi_d = M_sigma, from a coboundary witness
template <InvolutiveField F>
AlgebraElement<F> diagonal_unit(PosetPtr poset, const F& field,
                                const CoboundaryWitness<F>& w) {
  AlgebraElement<F> d(poset, field);
  for (int x = 0; x < poset->size(); ++x) d.set(x, x, w.c.at(x));
  return d;
}

struct H1Verdict {
  bool trivial = false;
  int free_rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1
  long long unity_order = 0;       // order of the group of roots of unity in K
};

// Engineering model for H^1(X, K^x), cross-validated against exhaustive
// cocycle enumeration over finite fields (see the oracle): cocycles on cover
// edges modulo parallel-chain relations form Hom(W/R, K^x) with W the cycle
// lattice of the Hasse diagram and R the relation lattice, so the verdict is
// trivial iff W/R has free rank 0 and K has no nontrivial d-th roots of
// unity for any invariant factor d.
template <InvolutiveField F>
H1Verdict h1_trivial(PosetPtr poset, const F& field) {
  if (!is_connected(*poset)) throw Disconnected("H^1 model needs a connected poset");
  const int n = poset->size();
  auto covers = poset->cover_pairs();
  const int m = static_cast<int>(covers.size());
  std::map<std::pair<int, int>, int> cover_index;
  for (int j = 0; j < m; ++j) cover_index[covers[j]] = j;

  // spanning tree of the (undirected) Hasse graph
  std::vector<int> parent(n, -1), parent_edge(n, -1);
  std::vector<char> in_tree_edge(m, 0), seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int v = queue[h];
    for (int j = 0; j < m; ++j) {
      int other = -1;
      if (covers[j].first == v) other = covers[j].second;
      if (covers[j].second == v) other = covers[j].first;
      if (other < 0 || seen[other]) continue;
      seen[other] = 1;
      parent[other] = v;
      parent_edge[other] = j;
      in_tree_edge[j] = 1;
      queue.push_back(other);
    }
  }

  std::vector<int> nontree;
  for (int j = 0; j < m; ++j)
    if (!in_tree_edge[j]) nontree.push_back(j);
  const int cycle_dim = static_cast<int>(nontree.size());
  std::map<int, int> cycle_coord;  // cover index -> fundamental cycle number
  for (int k = 0; k < cycle_dim; ++k) cycle_coord[nontree[k]] = k;

  // relations: difference of any two maximal cover-chains with the same
  // endpoints, reduced to fundamental-cycle coordinates
  SmithMatrix relations;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!poset->lt(x, y)) continue;
      std::vector<std::vector<int>> paths;  // cover-index sequences
      std::vector<int> current;
      // DFS over cover chains x -> y
      auto dfs = [&](auto&& self, int v) -> void {
        if (v == y) {
          paths.push_back(current);
          return;
        }
        for (int j = 0; j < m; ++j) {
          if (covers[j].first != v || !poset->leq(covers[j].second, y)) continue;
          current.push_back(j);
          self(self, covers[j].second);
          current.pop_back();
        }
      };
      dfs(dfs, x);
      for (std::size_t pi = 1; pi < paths.size(); ++pi) {
        std::vector<SmithInt> edge_vec(m, 0);
        for (int j : paths[pi]) edge_vec[j] += 1;
        for (int j : paths[0]) edge_vec[j] -= 1;
        std::vector<SmithInt> coords(cycle_dim, 0);
        bool nonzero = false;
        for (int j = 0; j < m; ++j) {
          if (edge_vec[j] == 0) continue;
          auto it = cycle_coord.find(j);
          if (it != cycle_coord.end()) {
            coords[it->second] = edge_vec[j];
            nonzero = true;
          }
        }
        // tree-edge components are determined by the cycle coordinates
        if (nonzero) relations.push_back(std::move(coords));
      }
    }
  }

  H1Verdict v;
  v.unity_order = field.unity_order();
  auto invariants = relations.empty() ? std::vector<SmithInt>{} : smith_invariants(relations);
  int rank = 0;
  bool torsion_kills = false;
  for (const auto& d : invariants) {
    if (d == 0) continue;
    ++rank;
    if (d > 1) {
      long long dv = static_cast<long long>(d);
      v.torsion.push_back(dv);
      if (boost::multiprecision::gcd(SmithInt(dv), SmithInt(v.unity_order)) > 1)
        torsion_kills = true;  // K has a nontrivial d-th root of unity
    }
  }
  v.free_rank = cycle_dim - rank;
  v.trivial = v.free_rank == 0 && !torsion_kills;
  return v;
}

}  // namespace fia
