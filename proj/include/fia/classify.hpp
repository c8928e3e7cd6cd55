#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fia/involution.hpp"

namespace fia {

// epsilon_1(x) epsilon_2(x)^-1 normalized by the base-point ratio; the
// involutions are inner-equivalent iff every entry lies in K1.
template <InvolutiveField F>
struct CosetVector {
  int base_point = -1;  // smallest element of X3
  std::map<int, typename F::Element> ratios;
};

template <InvolutiveField F>
CosetVector<F> coset_vector(const F& field, const std::vector<int>& x3,
                            const std::map<int, typename F::Element>& eps1,
                            const std::map<int, typename F::Element>& eps2) {
  CosetVector<F> cv;
  if (x3.empty()) return cv;
  cv.base_point = x3.front();
  auto k = eps1.at(cv.base_point) * field.inv(eps2.at(cv.base_point));
  auto k_inv = field.inv(k);
  for (int x : x3) cv.ratios[x] = eps1.at(x) * field.inv(eps2.at(x)) * k_inv;
  return cv;
}

template <InvolutiveField F>
struct Obstruction {
  enum class Kind { DifferentLambdaClass, DifferentScalarAction, CosetMismatch };
  Kind kind;
  std::string at;                            // X3 label, for CosetMismatch
  std::optional<typename F::Element> ratio;  // the non-norm ratio
  std::string detail;
};

// Equivalent verdicts ship a machine-checked witness Phi = Psi_u o alpha_hat
// with Phi o rho2 = rho1 o Phi; negative verdicts ship an obstruction.
template <InvolutiveField F>
struct EquivalenceReport {
  bool equivalent = false;
  std::optional<PosetMap> alpha;
  std::optional<AlgebraElement<F>> u;
  bool checked = false;
  std::optional<Obstruction<F>> obstruction;
};

namespace detail {

template <InvolutiveField F>
bool intertwines(const InvolutionMap<F>& rho1, const InvolutionMap<F>& rho2,
                 const AlgebraElement<F>& u, const PosetMap* alpha) {
  // Phi o rho2 = rho1 o Phi on the spanning set, Phi = Psi_u o alpha_hat
  auto phi = alpha ? AlgebraAutomorphism<F>::inner(u).then(
                         AlgebraAutomorphism<F>::induced(*alpha))
                   : AlgebraAutomorphism<F>::inner(u);
  for (const auto& [p, img2] : rho2.images()) {
    auto e = AlgebraElement<F>::basis(rho1.poset(), rho1.field(), p.first, p.second);
    if (!(phi(img2) == rho1.apply(phi(e)))) return false;
  }
  return true;
}

}  // namespace detail

// Equivalence via inner automorphisms. Necessary conditions first (same
// induced lambda, same scalar action), then the normalized K1-coset test of
// the epsilon-forms; positive verdicts assemble an explicit inner witness.
template <InvolutiveField F>
EquivalenceReport<F> inner_equivalent(const InvolutionMap<F>& rho1,
                                      const InvolutionMap<F>& rho2) {
  const auto& field = rho1.field();
  if (rho1.poset().get() != rho2.poset().get() || !(field == rho2.field()))
    throw MismatchedCarrier("involutions live on different algebras");
  if (!rho1.second_kind() || !rho2.second_kind())
    throw KindMismatch("classification covers second-kind involutions only");
  if (!h1_trivial(rho1.poset(), field).trivial)
    throw H1Obstruction("classification hypothesis fails: H^1(X,K^x) is nontrivial");

  EquivalenceReport<F> report;
  auto lambda1 = induced_poset_involution(rho1);
  auto lambda2 = induced_poset_involution(rho2);
  if (!(lambda1 == lambda2)) {
    report.obstruction =
        Obstruction<F>{Obstruction<F>::Kind::DifferentLambdaClass, "", std::nullopt,
                       "induced poset involutions differ"};
    return report;
  }

  auto sf1 = symmetric_normal_form(rho1);
  auto sf2 = symmetric_normal_form(rho2);
  auto dec = lambda_decomposition(lambda1);

  std::map<int, typename F::Element> eps1, eps2;
  for (int x : dec.x3) {
    eps1[x] = sf1.v.at(x, x);
    eps2[x] = sf2.v.at(x, x);
  }

  typename F::Element k = field.one();
  if (!dec.x3.empty()) {
    auto cv = coset_vector(field, dec.x3, eps1, eps2);
    k = eps1.at(cv.base_point) * field.inv(eps2.at(cv.base_point));
    for (int x : dec.x3) {
      if (!field.is_in_K1(cv.ratios.at(x))) {
        report.obstruction = Obstruction<F>{
            Obstruction<F>::Kind::CosetMismatch, rho1.poset()->label(x),
            field.inv(cv.ratios.at(x)),  // reported as eps2-over-eps1, normalized
            "normalized epsilon ratio is not a norm"};
        return report;
      }
    }
  }

  // witness: rho_i ~ rho_{eps_i} through the split lemma, then the epsilon
  // forms are joined by k^-1 u_eps1 u_eps2^-1 = w3 rho_eps2(w3)
  auto re1 = build_rho_epsilon(rho1.poset(), field, lambda1, eps1);
  auto re2 = build_rho_epsilon(rho2.poset(), field, lambda1, eps2);
  auto w1 = split_symmetric_unit(sf1.v * invert(re1.u_eps), re1);
  auto w2 = split_symmetric_unit(sf2.v * invert(re2.u_eps), re2);
  auto w3 = split_symmetric_unit(field.inv(k) * (re1.u_eps * invert(re2.u_eps)), re2);
  auto witness = w1 * w3 * invert(w2);

  if (!detail::intertwines(rho1, rho2, witness, nullptr))
    throw Error("inner_equivalent: assembled witness failed verification");
  report.equivalent = true;
  report.u = witness;
  report.checked = true;
  return report;
}

// alpha_hat o rho o alpha_hat^-1; for rho = rho_epsilon this is
// rho_{epsilon o alpha^-1}.
template <InvolutiveField F>
InvolutionMap<F> conjugate_by_poset_auto(const InvolutionMap<F>& rho, const PosetMap& alpha) {
  auto inv = alpha.inverse_image();
  auto hat = induced_auto(alpha);
  typename InvolutionMap<F>::Images images;
  for (const auto& [p, _] : rho.images())
    images.emplace(p, hat(rho.image_of_basis(inv[p.first], inv[p.second])));
  return InvolutionMap<F>(rho.poset(), rho.field(), std::move(images), rho.second_kind());
}

// General equivalence: scalar actions must agree, then some intertwining
// poset automorphism must make the pair inner-equivalent.
template <InvolutiveField F>
EquivalenceReport<F> equivalent(const InvolutionMap<F>& rho1, const InvolutionMap<F>& rho2) {
  const auto& field = rho1.field();
  if (rho1.poset().get() != rho2.poset().get() || !(field == rho2.field()))
    throw MismatchedCarrier("involutions live on different algebras");
  if (!rho1.second_kind() || !rho2.second_kind())
    throw KindMismatch("classification covers second-kind involutions only");
  if (!h1_trivial(rho1.poset(), field).trivial)
    throw H1Obstruction("classification hypothesis fails: H^1(X,K^x) is nontrivial");

  EquivalenceReport<F> report;
  auto lambda1 = induced_poset_involution(rho1);
  auto lambda2 = induced_poset_involution(rho2);
  auto alphas = intertwining_automorphisms(lambda1, lambda2);
  if (alphas.empty()) {
    report.obstruction =
        Obstruction<F>{Obstruction<F>::Kind::DifferentLambdaClass, "", std::nullopt,
                       "no poset automorphism intertwines the induced involutions"};
    return report;
  }

  std::optional<Obstruction<F>> first_obstruction;
  for (const auto& alpha : alphas) {
    auto conj = conjugate_by_poset_auto(rho2, alpha);
    auto inner = inner_equivalent(rho1, conj);
    if (inner.equivalent) {
      if (!detail::intertwines(rho1, rho2, *inner.u, &alpha))
        throw Error("equivalent: composed witness failed verification");
      report.equivalent = true;
      report.alpha = alpha;
      report.u = inner.u;
      report.checked = true;
      return report;
    }
    if (!first_obstruction) first_obstruction = inner.obstruction;
  }
  report.obstruction = first_obstruction;
  if (report.obstruction)
    report.obstruction->detail += " (every intertwining automorphism fails)";
  return report;
}

struct ClassCount {
  enum class Tag { Finite, Infinite, EmptyX3 } tag = Tag::Finite;
  long long count = 0;    // |K0^x / K1|^(|X3|-1) when finite; 1 for EmptyX3
  std::string criterion;  // decidable membership test, for the infinite case
};

// Number of inner-equivalence classes of involutions inducing lambda and *.
template <InvolutiveField F>
ClassCount class_count(PosetPtr /*poset*/, const F& field, const PosetMap& lambda) {
  auto dec = lambda_decomposition(lambda);
  if (dec.x3.empty())
    return ClassCount{ClassCount::Tag::EmptyX3, 1,
                      "X3 empty: single class, every such involution ~ rho_lambda^*"};
  if constexpr (F::is_finite) {
    // K1 is all of K0^x (norm surjectivity), verified by scan
    long long k1 = 0, k0 = 0;
    for (long long idx = 1; idx < field.q(); ++idx) {
      auto c = field.element_by_index(idx);
      if (!field.is_in_K0(c)) continue;
      ++k0;
      if (field.is_in_K1(c)) ++k1;
    }
    long long quotient = k0 / k1;
    long long count = 1;
    for (std::size_t e = 1; e < dec.x3.size(); ++e) count *= quotient;
    return ClassCount{ClassCount::Tag::Finite, count, ""};
  } else {
    return ClassCount{
        ClassCount::Tag::Infinite, 0,
        "K0^x/K1 is infinite; rho_eps1 ~ rho_eps2 iff eps1(x)eps2(x)^-1, normalized at "
        "the base point of X3, is a positive rational whose primes = 3 (mod 4) all "
        "carry even exponents"};
  }
}

}  // namespace fia
