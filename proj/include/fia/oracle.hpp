#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fia/classify.hpp"
#include "fia/involution.hpp"

namespace fia {

// Defaults keep a full run under ~10^7 basic field operations per instance.
struct EnumerationBudget {
  int max_poset_size = 8;
  long long max_field_size = 32;           // q = p^2
  long long max_units = 2'000'000;         // streamed unit cap
  int max_involutions_per_lambda = 12;     // collected per induced involution
  long long max_orbit = 500'000;           // brute-force orbit closure cap
};

namespace oracle_detail {

template <InvolutiveField F>
std::string involution_key(const InvolutionMap<F>& rho) {
  std::string s = rho.second_kind() ? "2|" : "1|";
  for (const auto& [p, img] : rho.images()) {
    s += std::to_string(p.first) + "," + std::to_string(p.second) + ":";
    for (const auto& [q, v] : img.support())
      s += std::to_string(q.first) + "," + std::to_string(q.second) + "=" +
           rho.field().format(v) + ";";
    s += "|";
  }
  return s;
}

}  // namespace oracle_detail

// All units of FI(X,K) for finite K: nonzero diagonals x arbitrary strict
// entries, streamed in odometer order. The callback returns false to stop.
template <InvolutiveField F>
  requires(F::is_finite)
void enumerate_units(PosetPtr poset, const F& field, const EnumerationBudget& budget,
                     const std::function<bool(const AlgebraElement<F>&)>& fn) {
  if (poset->size() > budget.max_poset_size)
    throw BudgetExceeded("poset larger than the enumeration budget");
  if (field.q() > budget.max_field_size)
    throw BudgetExceeded("field larger than the enumeration budget");

  const long long q = field.q();
  std::vector<std::pair<int, int>> diag, strict;
  for (const auto& p : poset->comparable_pairs())
    (p.first == p.second ? diag : strict).push_back(p);

  const int slots = static_cast<int>(diag.size() + strict.size());
  std::vector<long long> state(slots, 0);
  auto slot_base = [&](int s) { return s < static_cast<int>(diag.size()) ? q - 1 : q; };

  long long produced = 0;
  while (true) {
    AlgebraElement<F> u(poset, field);
    for (int s = 0; s < slots; ++s) {
      if (s < static_cast<int>(diag.size()))
        u.set(diag[s].first, diag[s].second, field.element_by_index(state[s] + 1));
      else {
        auto p = strict[s - diag.size()];
        u.set(p.first, p.second, field.element_by_index(state[s]));
      }
    }
    if (++produced > budget.max_units) throw BudgetExceeded("unit stream exceeded max_units");
    if (!fn(u)) return;
    int s = 0;
    for (; s < slots; ++s) {
      if (++state[s] < slot_base(s)) break;
      state[s] = 0;
    }
    if (s == slots) return;
  }
}

template <InvolutiveField F>
  requires(F::is_finite)
long long count_units(PosetPtr poset, const F& field, const EnumerationBudget& budget) {
  long long n = 0;
  enumerate_units<F>(poset, field, budget, [&](const AlgebraElement<F>&) {
    ++n;
    return true;
  });
  return n;
}

namespace oracle_detail {

// Position orbits of the pair map (x,y) -> (lambda y, lambda x). A
// rho_epsilon-symmetric unit is determined by: values in K0 on fixed
// positions (K0^x on fixed diagonals), free values on one member of each
// two-cycle with the partner forced to u_eps(x') v^* u_eps(y')^-1.
template <InvolutiveField F>
struct SymmetricSlots {
  std::vector<std::pair<int, int>> fixed_diag, fixed_strict, free_rep;
  std::vector<std::pair<int, int>> free_partner;  // tau(p) per free_rep entry
};

template <InvolutiveField F>
SymmetricSlots<F> symmetric_slots(const FinitePoset& poset, const PosetMap& lambda) {
  SymmetricSlots<F> s;
  for (const auto& p : poset.comparable_pairs()) {
    std::pair<int, int> tau{lambda.image[p.second], lambda.image[p.first]};
    if (tau == p) {
      (p.first == p.second ? s.fixed_diag : s.fixed_strict).push_back(p);
    } else if (p < tau) {
      s.free_rep.push_back(p);
      s.free_partner.push_back(tau);
    }
  }
  return s;
}

// forced partner value keeping rho_epsilon-symmetry
template <InvolutiveField F>
typename F::Element partner_value(const F& field, const AlgebraElement<F>& u_eps,
                                  const std::pair<int, int>& tau,
                                  const typename F::Element& v) {
  return u_eps.at(tau.first, tau.first) * field.star(v) *
         field.inv(u_eps.at(tau.second, tau.second));
}

}  // namespace oracle_detail

// Sweeps every rho_lambda^*-symmetric unit v (canonical odometer order) and
// yields them; with the standing hypothesis checked by the caller this
// reaches every second-kind involution inducing lambda as Psi_v o rho_lambda^*.
template <InvolutiveField F>
  requires(F::is_finite)
void enumerate_symmetric_units(PosetPtr poset, const F& field, const PosetMap& lambda,
                               const EnumerationBudget& budget,
                               const std::function<bool(const AlgebraElement<F>&)>& fn) {
  auto slots = oracle_detail::symmetric_slots<F>(*poset, lambda);
  auto delta = AlgebraElement<F>::delta(poset, field);

  // K0 = {a + 0*t}: indices a*p of element_by_index
  std::vector<typename F::Element> k0, k0x, kall, kx;
  for (long long idx = 0; idx < field.q(); ++idx) {
    auto e = field.element_by_index(idx);
    kall.push_back(e);
    if (!field.is_zero(e)) kx.push_back(e);
    if (field.is_in_K0(e)) {
      k0.push_back(e);
      if (!field.is_zero(e)) k0x.push_back(e);
    }
  }

  struct Slot {
    std::pair<int, int> pos;
    const std::vector<typename F::Element>* values;
    std::optional<std::pair<int, int>> partner;
  };
  std::vector<Slot> layout;
  for (const auto& p : slots.fixed_diag) layout.push_back({p, &k0x, std::nullopt});
  for (const auto& p : slots.fixed_strict) layout.push_back({p, &k0, std::nullopt});
  for (std::size_t i = 0; i < slots.free_rep.size(); ++i) {
    bool diag = slots.free_rep[i].first == slots.free_rep[i].second;
    layout.push_back({slots.free_rep[i], diag ? &kx : &kall, slots.free_partner[i]});
  }

  std::vector<std::size_t> state(layout.size(), 0);
  long long produced = 0;
  while (true) {
    AlgebraElement<F> v(poset, field);
    for (std::size_t s = 0; s < layout.size(); ++s) {
      const auto& val = (*layout[s].values)[state[s]];
      v.set(layout[s].pos.first, layout[s].pos.second, val);
      if (layout[s].partner)
        v.set(layout[s].partner->first, layout[s].partner->second,
              oracle_detail::partner_value(field, delta, *layout[s].partner, val));
    }
    if (++produced > budget.max_units)
      throw BudgetExceeded("symmetric unit sweep exceeded max_units");
    if (!fn(v)) return;
    std::size_t s = 0;
    for (; s < layout.size(); ++s) {
      if (++state[s] < layout[s].values->size()) break;
      state[s] = 0;
    }
    if (s == layout.size()) return;
  }
}

// Every second-kind involution on FI(X,K), K finite, obtained by sweeping
// Psi_v o rho_lambda^* over symmetric units v for each poset involution
// lambda. Completeness rests on the decomposition theorem together with the
// standing hypothesis (H^1 trivial, checked here); each produced map is
// revalidated with is_involution, and the collected list is deduplicated and
// capped per lambda.
template <InvolutiveField F>
  requires(F::is_finite)
std::vector<InvolutionMap<F>> enumerate_second_kind_involutions(
    PosetPtr poset, const F& field, const EnumerationBudget& budget) {
  if (!h1_trivial(poset, field).trivial)
    throw H1Obstruction("involution sweep requires trivial H^1(X,K^x)");

  std::vector<InvolutionMap<F>> out;
  for (const auto& lambda : enumerate_involutions(poset)) {
    auto rl = rho_lambda_star(poset, field, lambda);
    std::unordered_set<std::string> seen;
    int kept = 0;
    enumerate_symmetric_units<F>(poset, field, lambda, budget,
                                 [&](const AlgebraElement<F>& v) {
                                   auto tw = twist(rl, v);
                                   auto key = oracle_detail::involution_key(tw.rho);
                                   if (!seen.insert(key).second) return true;
                                   auto check = is_involution(tw.rho);
                                   if (!check.ok)
                                     throw Error("sweep produced a non-involution: " +
                                                 check.reason);
                                   out.push_back(std::move(tw.rho));
                                   ++kept;
                                   return kept < budget.max_involutions_per_lambda;
                                 });
  }
  return out;
}

// rho -> Psi_g o rho o Psi_g^-1
template <InvolutiveField F>
InvolutionMap<F> conjugate_by_inner(const InvolutionMap<F>& rho, const AlgebraElement<F>& g,
                                    const AlgebraElement<F>& g_inv) {
  typename InvolutionMap<F>::Images images;
  for (const auto& [p, _] : rho.images()) {
    auto e = AlgebraElement<F>::basis(rho.poset(), rho.field(), p.first, p.second);
    images.emplace(p, g * rho.apply(g_inv * e * g) * g_inv);
  }
  return InvolutionMap<F>(rho.poset(), rho.field(), std::move(images), rho.second_kind());
}

// Peels a unit into a diagonal times transvections delta + c e_xy (shortest
// intervals first). Witnesses that the elementary conjugations below
// generate every inner automorphism.
template <InvolutiveField F>
std::vector<AlgebraElement<F>> factor_unit(const AlgebraElement<F>& u) {
  const auto& poset = *u.poset();
  const auto& field = u.field();
  if (!u.is_invertible()) throw NotInvertible("factor_unit needs a unit");

  std::vector<AlgebraElement<F>> factors;
  auto d = AlgebraElement<F>::zero(u.poset(), field);
  for (int x = 0; x < poset.size(); ++x) d.set(x, x, u.at(x, x));
  factors.push_back(d);

  auto w = invert(d) * u;  // unipotent
  auto pairs = poset.comparable_pairs();
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return poset.interval(a.first, a.second).size() < poset.interval(b.first, b.second).size();
  });
  auto delta = AlgebraElement<F>::delta(u.poset(), field);
  for (const auto& [x, y] : pairs) {
    if (x == y) continue;
    auto c = w.at(x, y);
    if (field.is_zero(c)) continue;
    auto t = delta;
    t.set(x, y, c);
    factors.push_back(t);
    auto t_inv = delta;
    t_inv.set(x, y, -c);
    w = t_inv * w;  // clears (x,y) without touching shorter intervals
  }
  if (!(w == delta)) throw Error("factor_unit: peeling did not terminate at delta");
  return factors;
}

// Brute-force equivalence on a finite instance: the orbit of an involution
// under conjugation by the full automorphism group, computed as a BFS
// closure under elementary inner conjugations and induced poset maps (with
// trivial H^1, multiplicative automorphisms are inner and add nothing).
// Orbits are cached, so all-pairs queries stay cheap.
template <InvolutiveField F>
  requires(F::is_finite)
class OrbitOracle {
 public:
  OrbitOracle(PosetPtr poset, const F& field, EnumerationBudget budget, bool inner_only)
      : poset_(std::move(poset)), field_(field), budget_(budget), inner_only_(inner_only) {
    build_generators();
  }

  bool equivalent(const InvolutionMap<F>& rho1, const InvolutionMap<F>& rho2) {
    auto k1 = oracle_detail::involution_key(rho1);
    auto k2 = oracle_detail::involution_key(rho2);
    if (k1 == k2) return true;
    int o1 = orbit_of(rho1, k1);
    auto it = orbit_id_.find(k2);
    if (it != orbit_id_.end()) return it->second == o1;
    return false;  // k2's orbit is disjoint from every known one incl. o1
  }

  int orbit_of(const InvolutionMap<F>& rho, const std::string& key) {
    auto it = orbit_id_.find(key);
    if (it != orbit_id_.end()) return it->second;
    int id = next_orbit_++;
    // BFS closure
    std::vector<InvolutionMap<F>> frontier{rho};
    orbit_id_.emplace(key, id);
    long long size = 1;
    while (!frontier.empty()) {
      std::vector<InvolutionMap<F>> next;
      for (const auto& r : frontier) {
        for (const auto& gen : generators_) {
          auto image = gen(r);
          auto k = oracle_detail::involution_key(image);
          auto [it, inserted] = orbit_id_.emplace(k, id);
          if (inserted) {
            if (++size > budget_.max_orbit)
              throw BudgetExceeded("conjugation orbit exceeded max_orbit");
            next.push_back(std::move(image));
          } else if (it->second != id) {
            throw Error("orbit closure reached a previously closed orbit");  // impossible
          }
        }
      }
      frontier = std::move(next);
    }
    return id;
  }

  int orbit_of(const InvolutionMap<F>& rho) {
    return orbit_of(rho, oracle_detail::involution_key(rho));
  }

 private:
  void build_generators() {
    auto delta = AlgebraElement<F>::delta(poset_, field_);
    // transvections delta + c e_xy for c in the additive basis {1, i}
    for (const auto& [x, y] : poset_->comparable_pairs()) {
      if (x == y) continue;
      for (auto c : {field_.one(), field_.i()}) {
        auto g = delta;
        g.set(x, y, c);
        auto g_inv = delta;
        g_inv.set(x, y, -c);
        generators_.push_back([g, g_inv](const InvolutionMap<F>& r) {
          return conjugate_by_inner(r, g, g_inv);
        });
      }
    }
    // one-coordinate diagonals at a multiplicative generator
    auto g0 = field_.multiplicative_generator();
    for (int x = 0; x < poset_->size(); ++x) {
      auto g = delta;
      g.set(x, x, g0);
      auto g_inv = invert(g);
      generators_.push_back([g, g_inv](const InvolutionMap<F>& r) {
        return conjugate_by_inner(r, g, g_inv);
      });
    }
    if (!inner_only_) {
      for (const auto& alpha : enumerate_automorphisms(poset_)) {
        bool is_id = true;
        for (int x = 0; x < poset_->size(); ++x) is_id = is_id && alpha.image[x] == x;
        if (is_id) continue;
        generators_.push_back([alpha](const InvolutionMap<F>& r) {
          return conjugate_by_poset_auto(r, alpha);
        });
      }
    }
  }

  PosetPtr poset_;
  F field_;
  EnumerationBudget budget_;
  bool inner_only_;
  std::vector<std::function<InvolutionMap<F>(const InvolutionMap<F>&)>> generators_;
  std::unordered_map<std::string, int> orbit_id_;
  int next_orbit_ = 0;
};

// One-shot form; prefer a long-lived OrbitOracle for all-pairs sweeps.
template <InvolutiveField F>
  requires(F::is_finite)
bool brute_equivalent(const InvolutionMap<F>& rho1, const InvolutionMap<F>& rho2,
                      const EnumerationBudget& budget) {
  OrbitOracle<F> oracle(rho1.poset(), rho1.field(), budget, false);
  return oracle.equivalent(rho1, rho2);
}

}  // namespace fia
