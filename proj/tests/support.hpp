#pragma once

// Shared fixtures and generators for the test suites. Everything here stays
// independent of the code paths under test: brute-force oracles live in the
// individual test files.

#include <random>

#include "fia/involution.hpp"
#include "fia/oracle.hpp"

namespace testsupport {

using namespace fia;
using QI = GaussianRationalField;
using QIE = GaussianRational;
template <class F>
using AE = AlgebraElement<F>;

inline PosetPtr chain(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  for (int i = 1; i < n; ++i)
    covers.emplace_back(std::to_string(i), std::to_string(i + 1));
  return build_poset(labels, covers);
}

inline PosetPtr diamond() {
  return build_poset({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
}

inline PosetPtr crown() {
  return build_poset({"x", "y", "a", "b"}, {{"x", "a"}, {"x", "b"}, {"y", "a"}, {"y", "b"}});
}

inline PosetPtr vee() { return build_poset({"1", "2", "3"}, {{"1", "2"}, {"1", "3"}}); }

inline PosetPtr two_disjoint_chains() {
  return build_poset({"a1", "a2", "b1", "b2"}, {{"a1", "a2"}, {"b1", "b2"}});
}

// the diamond involution fixing the two middle elements
inline PosetMap diamond_lambda_fixing_middle(const PosetPtr& dia) {
  for (auto& l : enumerate_involutions(dia))
    if (l.image[dia->index_of("a")] == dia->index_of("a")) return l;
  throw std::logic_error("diamond involution fixing {a,b} not found");
}

inline QIE random_qi_element(std::mt19937_64& rng, bool nonzero) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  while (true) {
    QIE v{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
    if (!nonzero || !v.is_zero()) return v;
  }
}

inline AE<QI> random_qi_algebra_element(PosetPtr poset, const QI& field,
                                        std::mt19937_64& rng) {
  AE<QI> f(poset, field);
  for (const auto& p : poset->comparable_pairs())
    f.set(p.first, p.second, random_qi_element(rng, false));
  return f;
}

inline AE<QI> random_qi_unit(PosetPtr poset, const QI& field, std::mt19937_64& rng) {
  AE<QI> f(poset, field);
  for (const auto& p : poset->comparable_pairs())
    f.set(p.first, p.second, random_qi_element(rng, p.first == p.second));
  return f;
}

// rho_epsilon-symmetric unit over Q(i); u_eps = delta gives
// rho_lambda^*-symmetry
inline AE<QI> random_qi_symmetric_unit(PosetPtr poset, const QI& field,
                                       const PosetMap& lambda, const AE<QI>& u_eps,
                                       std::mt19937_64& rng) {
  auto slots = oracle_detail::symmetric_slots<QI>(*poset, lambda);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  auto random_k0 = [&](bool nonzero) {
    while (true) {
      QIE v{Rat(num(rng), den(rng)), Rat(0)};
      if (!nonzero || !v.is_zero()) return v;
    }
  };
  AE<QI> v(poset, field);
  for (const auto& p : slots.fixed_diag) v.set(p.first, p.second, random_k0(true));
  for (const auto& p : slots.fixed_strict) v.set(p.first, p.second, random_k0(false));
  for (std::size_t i = 0; i < slots.free_rep.size(); ++i) {
    const auto& p = slots.free_rep[i];
    auto val = random_qi_element(rng, p.first == p.second);
    v.set(p.first, p.second, val);
    const auto& tau = slots.free_partner[i];
    v.set(tau.first, tau.second, oracle_detail::partner_value(field, u_eps, tau, val));
  }
  return v;
}

// all cocycles over a finite field: assign cover values, extend along
// chains, keep the consistent ones (independent of the Cocycle machinery)
template <class F>
inline std::vector<Cocycle<F>> all_cocycles(PosetPtr poset, const F& field) {
  auto covers = poset->cover_pairs();
  const long long q = field.q();
  std::vector<Cocycle<F>> out;
  long long total = 1;
  for (std::size_t i = 0; i < covers.size(); ++i) total *= q - 1;
  for (long long code = 0; code < total; ++code) {
    std::map<std::pair<int, int>, typename F::Element> cover_vals;
    long long c = code;
    for (const auto& e : covers) {
      cover_vals[e] = field.element_by_index(1 + c % (q - 1));
      c /= q - 1;
    }
    std::map<std::pair<int, int>, typename F::Element> vals;
    bool consistent = true;
    for (const auto& p : poset->comparable_pairs()) {
      if (p.first == p.second) {
        vals[p] = field.one();
        continue;
      }
      std::optional<typename F::Element> value;
      std::vector<std::pair<int, typename F::Element>> stack{{p.first, field.one()}};
      while (!stack.empty() && consistent) {
        auto [v, acc] = stack.back();
        stack.pop_back();
        if (v == p.second) {
          if (value && !(*value == acc)) consistent = false;
          value = acc;
          continue;
        }
        for (const auto& e : covers)
          if (e.first == v && poset->leq(e.second, p.second))
            stack.push_back({e.second, acc * cover_vals[e]});
      }
      if (!value) consistent = false;
      if (!consistent) break;
      vals[p] = *value;
    }
    if (consistent) out.push_back(Cocycle<F>(poset, field, std::move(vals)));
  }
  return out;
}

}  // namespace testsupport
