#pragma once

#include <concepts>
#include <string>

#include "fia/errors.hpp"
#include "fia/field_gfp2.hpp"
#include "fia/field_qi.hpp"

namespace fia {

// Exact field of characteristic != 2 carrying a second-kind involution *
// with distinguished i such that i^2 in K0 and i^* = -i.
template <class F>
concept InvolutiveField = requires(const F f, const typename F::Element x, std::string s) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.i() } -> std::convertible_to<typename F::Element>;
  { f.from_int(int64_t{1}) } -> std::convertible_to<typename F::Element>;
  { f.star(x) } -> std::convertible_to<typename F::Element>;
  { f.inv(x) } -> std::convertible_to<typename F::Element>;
  { f.norm(x) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(x) } -> std::convertible_to<bool>;
  { f.is_in_K0(x) } -> std::convertible_to<bool>;
  { f.is_in_K1(x) } -> std::convertible_to<bool>;
  { f.norm_preimage(x) } -> std::convertible_to<typename F::Element>;
  { f.format(x) } -> std::convertible_to<std::string>;
  { f.parse(s) } -> std::convertible_to<typename F::Element>;
  { f.unity_order() } -> std::convertible_to<long long>;
  { x + x } -> std::convertible_to<typename F::Element>;
  { x - x } -> std::convertible_to<typename F::Element>;
  { x* x } -> std::convertible_to<typename F::Element>;
  { -x } -> std::convertible_to<typename F::Element>;
  { x == x } -> std::convertible_to<bool>;
};

static_assert(InvolutiveField<GaussianRationalField>);
static_assert(InvolutiveField<GFp2Field>);

// Writes a *-unitary k as a^* a^-1. With k = a + bi over K0 and b != 0 the
// witness l = (1+a) - bi equals 1 + k^*, so no coordinate splitting is
// needed; k = 1 and k = -1 get the pinned witnesses 1 and i.
template <InvolutiveField F>
typename F::Element unitary_to_ratio(const F& field, const typename F::Element& k) {
  if (field.is_zero(k)) throw NotUnitary("zero is not unitary");
  if (!(k * field.star(k) == field.one()))
    throw NotUnitary("element is not *-unitary: k k^* != 1");
  if (k == field.one()) return field.one();
  if (k == -field.one()) return field.i();
  typename F::Element l = field.one() + field.star(k);
  // b = 0 with k != +-1 cannot reach here; a = -1 with b != 0 contradicts
  // k k^* = 1, so l != 0
  if (field.is_zero(l)) throw NotUnitary("unreachable: 1 + k^* vanished for a unitary k");
  if (!(field.star(l) * field.inv(l) == k))
    throw NotUnitary("unitary_to_ratio postcondition failed");
  return l;
}

}  // namespace fia
