#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fia/algebra.hpp"
#include "fia/cohomology.hpp"

namespace fia {

// Involution on FI(X,K), stored by its action on the basis {e_xy} plus the
// induced involution on K (identity for the first kind, * for the second).
// The star-semilinear extension rho(sum c_p e_p) = sum act(c_p) rho(e_p)
// recovers the full map.
template <InvolutiveField F>
class InvolutionMap {
 public:
  using Elem = typename F::Element;
  using Images = std::map<std::pair<int, int>, AlgebraElement<F>>;

  InvolutionMap(PosetPtr poset, F field, Images images, bool second_kind)
      : poset_(std::move(poset)),
        field_(std::move(field)),
        images_(std::move(images)),
        second_kind_(second_kind) {
    for (const auto& p : poset_->comparable_pairs())
      if (images_.find(p) == images_.end())
        throw InvalidInvolution("missing basis image at (" + poset_->label(p.first) + "," +
                                poset_->label(p.second) + ")");
  }

  const PosetPtr& poset() const { return poset_; }
  const F& field() const { return field_; }
  const Images& images() const { return images_; }
  bool second_kind() const { return second_kind_; }

  Elem scalar_action(const Elem& c) const { return second_kind_ ? field_.star(c) : c; }

  const AlgebraElement<F>& image_of_basis(int x, int y) const { return images_.at({x, y}); }

  // rho(i delta) as an algebra element
  AlgebraElement<F> i_image() const {
    return AlgebraElement<F>::scalar(poset_, field_, scalar_action(field_.i()));
  }

  AlgebraElement<F> apply(const AlgebraElement<F>& f) const {
    if (f.poset().get() != poset_.get() || !(f.field() == field_))
      throw MismatchedCarrier("involution applied to an element of a different algebra");
    AlgebraElement<F> r(poset_, field_);
    for (const auto& [p, c] : f.support()) r = r + scalar_action(c) * images_.at(p);
    return r;
  }

  bool operator==(const InvolutionMap& o) const {
    return second_kind_ == o.second_kind_ && images_ == o.images_;
  }

 private:
  PosetPtr poset_;
  F field_;
  Images images_;
  bool second_kind_;
};

// rho_lambda^*(f)(x,y) = [f(lambda(y), lambda(x))]^*, the canonical
// second-kind involution: on the basis, e_xy -> e_{lambda(y) lambda(x)}.
template <InvolutiveField F>
InvolutionMap<F> rho_lambda_star(PosetPtr poset, const F& field, const PosetMap& lambda) {
  if (!is_order_reversing_involution(*poset, lambda.image))
    throw InvalidInvolution("rho_lambda_star needs an order-reversing involution");
  typename InvolutionMap<F>::Images images;
  for (const auto& [x, y] : poset->comparable_pairs())
    images.emplace(std::make_pair(x, y),
                   AlgebraElement<F>::basis(poset, field, lambda.image[y], lambda.image[x]));
  return InvolutionMap<F>(poset, field, std::move(images), true);
}

// K-linear variant (first kind) of the same formula, kept for test contrast.
template <InvolutiveField F>
InvolutionMap<F> rho_lambda_linear(PosetPtr poset, const F& field, const PosetMap& lambda) {
  if (!is_order_reversing_involution(*poset, lambda.image))
    throw InvalidInvolution("rho_lambda_linear needs an order-reversing involution");
  typename InvolutionMap<F>::Images images;
  for (const auto& [x, y] : poset->comparable_pairs())
    images.emplace(std::make_pair(x, y),
                   AlgebraElement<F>::basis(poset, field, lambda.image[y], lambda.image[x]));
  return InvolutionMap<F>(poset, field, std::move(images), false);
}

struct InvolutionCheck {
  bool ok = true;
  std::string reason;
};

// Anti-multiplicativity and order 2 on the spanning set {e_xy} u {i delta};
// sufficient at finite scale.
template <InvolutiveField F>
InvolutionCheck is_involution(const InvolutionMap<F>& rho) {
  const auto& poset = *rho.poset();
  const auto& field = rho.field();
  auto pairs = poset.comparable_pairs();

  auto delta = AlgebraElement<F>::delta(rho.poset(), field);
  AlgebraElement<F> delta_image(rho.poset(), field);
  for (int x = 0; x < poset.size(); ++x)
    delta_image = delta_image + rho.image_of_basis(x, x);
  if (!(delta_image == delta)) return {false, "rho(delta) != delta"};

  for (const auto& p : pairs) {
    auto e = AlgebraElement<F>::basis(rho.poset(), field, p.first, p.second);
    if (!(rho.apply(rho.image_of_basis(p.first, p.second)) == e))
      return {false, "rho^2 != id at e_(" + poset.label(p.first) + "," +
                         poset.label(p.second) + ")"};
  }

  for (const auto& p : pairs) {
    for (const auto& q : pairs) {
      // e_p e_q = [p.second == q.first] e_(p.first, q.second)
      AlgebraElement<F> lhs(rho.poset(), field);
      if (p.second == q.first) lhs = rho.image_of_basis(p.first, q.second);
      auto rhs = rho.image_of_basis(q.first, q.second) * rho.image_of_basis(p.first, p.second);
      if (!(lhs == rhs))
        return {false, "anti-multiplicativity fails on e_(" + poset.label(p.first) + "," +
                           poset.label(p.second) + ") e_(" + poset.label(q.first) + "," +
                           poset.label(q.second) + ")"};
    }
  }
  return {true, ""};
}

template <InvolutiveField F>
struct TwistResult {
  InvolutionMap<F> rho;
  typename F::Element k;  // rho(u) = k u; k is rho-unitary
};

// Psi_u o rho, admissible exactly when rho(u) is a scalar multiple of u
// (FI central makes "central" mean "scalar").
template <InvolutiveField F>
TwistResult<F> twist(const InvolutionMap<F>& rho, const AlgebraElement<F>& u) {
  const auto& field = rho.field();
  auto u_inv = invert(u);
  auto ratio = rho.apply(u) * u_inv;
  auto k = ratio.as_scalar();
  if (!k) throw NotTwistable("rho(u) u^-1 is not a scalar");
  if (!(*k * rho.scalar_action(*k) == field.one()))
    throw NotTwistable("twist scalar is not rho-unitary");  // cannot happen for valid rho
  typename InvolutionMap<F>::Images images;
  for (const auto& [p, img] : rho.images())
    images.emplace(p, u * img * u_inv);
  return TwistResult<F>{InvolutionMap<F>(rho.poset(), field, std::move(images),
                                         rho.second_kind()),
                        *k};
}

// rho_epsilon = Psi_{u_epsilon} o rho_lambda^* together with the data that
// built it; epsilon maps X3 into K0^x.
template <InvolutiveField F>
struct RhoEpsilon {
  InvolutionMap<F> rho;
  PosetMap lambda;
  LambdaDecomposition dec;
  std::map<int, typename F::Element> epsilon;
  AlgebraElement<F> u_eps;
};

template <InvolutiveField F>
RhoEpsilon<F> build_rho_epsilon(PosetPtr poset, const F& field, const PosetMap& lambda,
                                const std::map<int, typename F::Element>& epsilon) {
  auto dec = lambda_decomposition(lambda);
  if (epsilon.size() != dec.x3.size())
    throw DomainMismatch("epsilon must be defined exactly on X3");
  for (int x : dec.x3) {
    auto it = epsilon.find(x);
    if (it == epsilon.end())
      throw DomainMismatch("epsilon missing value at '" + poset->label(x) + "'");
    if (field.is_zero(it->second) || !(field.star(it->second) == it->second))
      throw DomainMismatch("epsilon('" + poset->label(x) + "') is not in K0^x");
  }

  auto u_eps = AlgebraElement<F>::delta(poset, field);
  for (int x : dec.x3) u_eps.set(x, x, epsilon.at(x));

  auto rl = rho_lambda_star(poset, field, lambda);
  auto tw = twist(rl, u_eps);
  if (!(tw.k == field.one()))
    throw Error("u_epsilon must be rho_lambda^*-symmetric");  // unreachable
  return RhoEpsilon<F>{std::move(tw.rho), lambda, std::move(dec), epsilon, std::move(u_eps)};
}

// lambda(x) := the unique z with rho(e_x)(z,z) = 1; the diagonal of any
// conjugate of e_z is the indicator of z.
template <InvolutiveField F>
PosetMap induced_poset_involution(const InvolutionMap<F>& rho) {
  const auto& poset = *rho.poset();
  const auto& field = rho.field();
  std::vector<int> image(poset.size(), -1);
  for (int x = 0; x < poset.size(); ++x) {
    const auto& d = rho.image_of_basis(x, x);
    if (!(d * d == d))
      throw MalformedIdempotent("rho(e_" + poset.label(x) + ") is not idempotent");
    int z = -1;
    for (int w = 0; w < poset.size(); ++w) {
      auto v = d.at(w, w);
      if (field.is_zero(v)) continue;
      if (!(v == field.one()) || z >= 0)
        throw MalformedIdempotent("rho(e_" + poset.label(x) +
                                  ") does not have indicator diagonal");
      z = w;
    }
    if (z < 0)
      throw MalformedIdempotent("rho(e_" + poset.label(x) + ") has zero diagonal");
    image[x] = z;
  }
  return make_poset_involution(rho.poset(), std::move(image));
}

enum class ScalarAction { Identity, Star };

// rho restricted to K delta (= the center, for connected X)
template <InvolutiveField F>
ScalarAction restrict_to_scalars(const InvolutionMap<F>& rho) {
  if (!is_connected(*rho.poset()))
    throw Disconnected("scalar restriction defined through the center needs connectedness");
  auto expected = AlgebraElement<F>::scalar(rho.poset(), rho.field(),
                                            rho.scalar_action(rho.field().i()));
  if (!(rho.i_image() == expected))
    throw NotScalarStable("rho(i delta) is not the expected scalar");
  return rho.second_kind() ? ScalarAction::Star : ScalarAction::Identity;
}

template <InvolutiveField F>
struct Decomposition {
  AlgebraElement<F> f;  // unit with diagonal 1; rho = Psi_{f^-1} o M_sigma o rho_lambda^*
  Cocycle<F> sigma;
  PosetMap lambda;
};

// Constructive form of the factorization rho = Psi o M o rho_lambda^*:
// f(u,v) = rho(e_{lambda(u)})(u,v), sigma extracted entrywise, and the exact
// factorization re-checked on the spanning set.
template <InvolutiveField F>
Decomposition<F> decompose(const InvolutionMap<F>& rho) {
  if (!rho.second_kind()) throw KindMismatch("decompose expects a second-kind involution");
  if (!is_connected(*rho.poset())) throw Disconnected("decompose needs a connected poset");
  const auto& poset = *rho.poset();
  const auto& field = rho.field();

  PosetMap lambda = [&] {
    try {
      return induced_poset_involution(rho);
    } catch (const Error& e) {
      throw DecompositionFailure(std::string("induced poset map invalid: ") + e.what());
    }
  }();

  AlgebraElement<F> f(rho.poset(), field);
  for (const auto& [p, _] : rho.images()) {
    int u = p.first, v = p.second;
    auto val = rho.image_of_basis(lambda.image[u], lambda.image[u]).at(u, v);
    if (u == v && !(val == field.one()))
      throw DecompositionFailure("f(" + poset.label(u) + "," + poset.label(u) + ") != 1");
    f.set(u, v, val);
  }
  auto f_inv = invert(f);

  std::map<std::pair<int, int>, typename F::Element> sigma_values;
  for (const auto& [p, _] : rho.images()) {
    int x = p.first, y = p.second;
    // (Psi_f o rho o rho_lambda^*)(e_xy) must be sigma(x,y) e_xy
    auto b = f * rho.image_of_basis(lambda.image[y], lambda.image[x]) * f_inv;
    auto s = b.at(x, y);
    if (field.is_zero(s) ||
        !(b == s * AlgebraElement<F>::basis(rho.poset(), field, x, y)))
      throw DecompositionFailure("Psi_f o rho o rho_lambda^* is not multiplicative at (" +
                                 poset.label(x) + "," + poset.label(y) + ")");
    sigma_values[{x, y}] = s;
  }

  auto sigma = [&] {
    try {
      return Cocycle<F>(rho.poset(), field, std::move(sigma_values));
    } catch (const Error& e) {
      throw DecompositionFailure(std::string("extracted sigma is not a cocycle: ") + e.what());
    }
  }();

  // round trip: Psi_{f^-1} o M_sigma o rho_lambda^* = rho on the basis
  for (const auto& [p, img] : rho.images()) {
    int x = p.first, y = p.second;
    auto reassembled = f_inv *
                       (sigma.at(lambda.image[y], lambda.image[x]) *
                        AlgebraElement<F>::basis(rho.poset(), field, lambda.image[y],
                                                 lambda.image[x])) *
                       f;
    if (!(reassembled == img))
      throw DecompositionFailure("factorization does not reproduce rho at (" +
                                 poset.label(x) + "," + poset.label(y) + ")");
  }

  return Decomposition<F>{std::move(f), std::move(sigma), std::move(lambda)};
}

template <InvolutiveField F>
struct SymmetricForm {
  AlgebraElement<F> v;  // rho_lambda^*-symmetric unit with rho = Psi_v o rho_lambda^*
  PosetMap lambda;
};

// decompose, absorb M_sigma into the inner factor through the coboundary
// witness, then symmetrize the unit with Prop. k = a^* a^-1.
template <InvolutiveField F>
SymmetricForm<F> symmetric_normal_form(const InvolutionMap<F>& rho) {
  const auto& field = rho.field();
  auto dec = decompose(rho);

  auto cb = is_coboundary(dec.sigma);
  if (!cb.is_coboundary())
    throw H1Obstruction("multiplicative factor is not inner: sigma is not a coboundary");
  auto d = diagonal_unit<F>(rho.poset(), field, *cb.witness);

  auto u = invert(dec.f) * d;
  auto rl = rho_lambda_star(rho.poset(), field, dec.lambda);
  auto ratio = rl.apply(u) * invert(u);
  auto k = ratio.as_scalar();
  if (!k) throw NotScalar("rho_lambda^*(u) u^-1 is not scalar");
  auto a = unitary_to_ratio(field, *k);
  auto v = field.inv(a) * u;

  if (!(rl.apply(v) == v)) throw Error("symmetric_normal_form: v is not symmetric");
  auto v_inv = invert(v);
  for (const auto& [p, img] : rho.images())
    if (!(v * rl.image_of_basis(p.first, p.second) * v_inv == img))
      throw Error("symmetric_normal_form: Psi_v o rho_lambda^* != rho");
  return SymmetricForm<F>{std::move(v), std::move(dec.lambda)};
}

// u = v rho_epsilon(v) for a rho_epsilon-symmetric unit u whose X3-diagonal
// lies in K1; v is built by the six-case table over (X1, X2, X3).
template <InvolutiveField F>
AlgebraElement<F> split_symmetric_unit(const AlgebraElement<F>& u, const RhoEpsilon<F>& re) {
  const auto& poset = *u.poset();
  const auto& field = u.field();
  if (!u.is_invertible()) throw NotInvertible("split_symmetric_unit needs a unit");
  if (!(re.rho.apply(u) == u))
    throw NotSymmetric("element is not rho_epsilon-symmetric");

  std::map<int, typename F::Element> a;  // X3 diagonal preimages
  for (int x : re.dec.x3) {
    auto c = u.at(x, x);
    if (!field.is_in_K1(c))
      throw NotInK1OnX3("u(" + poset.label(x) + "," + poset.label(x) + ") is not in K1",
                        poset.label(x));
    a[x] = field.norm_preimage(c);
  }

  auto half = field.inv(field.from_int(2));  // char K != 2
  using Part = LambdaDecomposition::Part;
  AlgebraElement<F> v(u.poset(), field);
  for (const auto& q : poset.comparable_pairs()) {
    int x = q.first, y = q.second;
    Part px = re.dec.part_of(x), py = re.dec.part_of(y);
    if (px == Part::X1 && py == Part::X1) {
      if (x == y) v.set(x, y, field.one());
    } else if (px == Part::X2 && py == Part::X2) {
      v.set(x, y, u.at(x, y));
    } else if (px == Part::X1 && py == Part::X2) {
      v.set(x, y, u.at(x, y) * half);
    } else if (px == Part::X1 && py == Part::X3) {
      // v(x,y) = 0
    } else if (px == Part::X3 && py == Part::X2) {
      v.set(x, y, u.at(x, y));
    } else if (px == Part::X3 && py == Part::X3 && x == y) {
      v.set(x, y, a.at(x));
    } else {
      throw Error("impossible (X1,X2,X3) configuration for a comparable pair");
    }
  }

  if (!(v * re.rho.apply(v) == u))
    throw Error("split_symmetric_unit: u != v rho_epsilon(v)");
  return v;
}

// Theorem: FI(X,K) has a second-kind involution iff X has an involution
// (our fields always carry a second-kind *).
template <InvolutiveField F>
bool exists_second_kind_involution(PosetPtr poset, const F&) {
  if (!is_connected(*poset)) throw Disconnected("criterion stated for connected posets");
  return !enumerate_involutions(poset).empty();
}

}  // namespace fia
