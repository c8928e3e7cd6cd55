#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "fia/errors.hpp"
#include "fia/field.hpp"
#include "fia/poset.hpp"

namespace fia {

// Element of FI(X,K): a K-valued function on comparable pairs, stored
// sparsely (absent = zero). Values on incomparable pairs cannot be set.
template <InvolutiveField F>
class AlgebraElement {
 public:
  using Elem = typename F::Element;
  using Support = std::map<std::pair<int, int>, Elem>;

  AlgebraElement(PosetPtr poset, F field)
      : poset_(std::move(poset)), field_(std::move(field)) {}

  static AlgebraElement zero(PosetPtr poset, const F& field) {
    return AlgebraElement(std::move(poset), field);
  }

  static AlgebraElement delta(PosetPtr poset, const F& field) {
    AlgebraElement d(poset, field);
    for (int x = 0; x < poset->size(); ++x) d.coef_[{x, x}] = field.one();
    return d;
  }

  // e_xy (e_x when x == y)
  static AlgebraElement basis(PosetPtr poset, const F& field, int x, int y) {
    AlgebraElement e(poset, field);
    e.set(x, y, field.one());
    return e;
  }

  static AlgebraElement scalar(PosetPtr poset, const F& field, const Elem& c) {
    AlgebraElement d(poset, field);
    if (!field.is_zero(c))
      for (int x = 0; x < poset->size(); ++x) d.coef_[{x, x}] = c;
    return d;
  }

  const PosetPtr& poset() const { return poset_; }
  const F& field() const { return field_; }
  const Support& support() const { return coef_; }

  Elem at(int x, int y) const {
    auto it = coef_.find({x, y});
    return it == coef_.end() ? field_.zero() : it->second;
  }

  void set(int x, int y, const Elem& v) {
    if (!poset_->leq(x, y))
      throw Error("entry (" + poset_->label(x) + "," + poset_->label(y) +
                  ") is not a comparable pair");
    if (field_.is_zero(v))
      coef_.erase({x, y});
    else
      coef_[{x, y}] = v;
  }

  bool is_zero() const { return coef_.empty(); }

  bool is_invertible() const {
    for (int x = 0; x < poset_->size(); ++x)
      if (field_.is_zero(at(x, x))) return false;
    return true;
  }

  bool same_carrier(const AlgebraElement& o) const {
    return poset_.get() == o.poset_.get() && field_ == o.field_;
  }

  AlgebraElement operator+(const AlgebraElement& o) const {
    require_carrier(o);
    AlgebraElement r = *this;
    for (const auto& [p, v] : o.coef_) {
      auto it = r.coef_.find(p);
      if (it == r.coef_.end()) {
        r.coef_[p] = v;
      } else {
        it->second = it->second + v;
        if (field_.is_zero(it->second)) r.coef_.erase(it);
      }
    }
    return r;
  }

  AlgebraElement operator-(const AlgebraElement& o) const { return *this + (-o); }

  AlgebraElement operator-() const {
    AlgebraElement r = *this;
    for (auto& [p, v] : r.coef_) v = -v;
    return r;
  }

  // convolution (fg)(x,y) = sum_{x<=z<=y} f(x,z) g(z,y)
  AlgebraElement operator*(const AlgebraElement& o) const {
    require_carrier(o);
    AlgebraElement r(poset_, field_);
    for (const auto& [p, fv] : coef_) {
      for (const auto& [q, gv] : o.coef_) {
        if (p.second != q.first) continue;
        auto key = std::make_pair(p.first, q.second);
        Elem term = fv * gv;
        auto it = r.coef_.find(key);
        if (it == r.coef_.end()) {
          if (!field_.is_zero(term)) r.coef_[key] = term;
        } else {
          it->second = it->second + term;
          if (field_.is_zero(it->second)) r.coef_.erase(it);
        }
      }
    }
    return r;
  }

  friend AlgebraElement operator*(const Elem& c, const AlgebraElement& f) {
    AlgebraElement r(f.poset_, f.field_);
    if (f.field_.is_zero(c)) return r;
    for (const auto& [p, v] : f.coef_) {
      auto t = c * v;
      if (!f.field_.is_zero(t)) r.coef_[p] = t;
    }
    return r;
  }

  bool operator==(const AlgebraElement& o) const {
    return same_carrier(o) && coef_ == o.coef_;
  }
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  // c with *this == c * delta, if any
  std::optional<Elem> as_scalar() const {
    Elem c = at(0, 0);
    AlgebraElement cd = scalar(poset_, field_, c);
    if (*this == cd) return c;
    return std::nullopt;
  }

 private:
  void require_carrier(const AlgebraElement& o) const {
    if (!same_carrier(o))
      throw MismatchedCarrier("algebra elements live on different posets or fields");
  }

  PosetPtr poset_;
  F field_;
  Support coef_;
};

template <InvolutiveField F>
AlgebraElement<F> convolve(const AlgebraElement<F>& f, const AlgebraElement<F>& g) {
  return f * g;
}

// Interval recursion for the two-sided inverse; the defining identity is
// re-checked before returning.
template <InvolutiveField F>
AlgebraElement<F> invert(const AlgebraElement<F>& f) {
  const auto& poset = *f.poset();
  const auto& field = f.field();
  for (int x = 0; x < poset.size(); ++x)
    if (field.is_zero(f.at(x, x)))
      throw NotInvertible("diagonal entry at '" + poset.label(x) + "' is zero");

  auto pairs = poset.comparable_pairs();
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return poset.interval(a.first, a.second).size() < poset.interval(b.first, b.second).size();
  });

  AlgebraElement<F> g(f.poset(), field);
  for (const auto& [x, y] : pairs) {
    if (x == y) {
      g.set(x, x, field.inv(f.at(x, x)));
      continue;
    }
    auto acc = field.zero();
    for (int z : poset.interval(x, y)) {
      if (z == y) continue;
      acc = acc + g.at(x, z) * f.at(z, y);
    }
    g.set(x, y, -(acc * field.inv(f.at(y, y))));
  }

  auto d = AlgebraElement<F>::delta(f.poset(), field);
  if (!(f * g == d) || !(g * f == d))
    throw Error("invert postcondition failed");  // indicates a corrupted element
  return g;
}

// Psi_u(f) = u f u^-1
template <InvolutiveField F>
struct InnerAuto {
  AlgebraElement<F> u, u_inv;

  AlgebraElement<F> operator()(const AlgebraElement<F>& f) const { return u * f * u_inv; }
};

template <InvolutiveField F>
InnerAuto<F> inner_auto(const AlgebraElement<F>& u) {
  return InnerAuto<F>{u, invert(u)};
}

// sigma(x,y) != 0 on every comparable pair, sigma(x,x) = 1,
// sigma(x,y) sigma(y,z) = sigma(x,z) whenever x <= y <= z.
template <InvolutiveField F>
class Cocycle {
 public:
  using Elem = typename F::Element;

  Cocycle(PosetPtr poset, F field, std::map<std::pair<int, int>, Elem> values)
      : poset_(std::move(poset)), field_(std::move(field)), values_(std::move(values)) {
    validate();
  }

  static Cocycle trivial(PosetPtr poset, const F& field) {
    std::map<std::pair<int, int>, Elem> vals;
    for (const auto& p : poset->comparable_pairs()) vals[p] = field.one();
    return Cocycle(poset, field, std::move(vals));
  }

  const PosetPtr& poset() const { return poset_; }
  const F& field() const { return field_; }

  const Elem& at(int x, int y) const { return values_.at({x, y}); }

  bool operator==(const Cocycle& o) const { return values_ == o.values_; }

 private:
  void validate() const {
    for (const auto& p : poset_->comparable_pairs()) {
      auto it = values_.find(p);
      if (it == values_.end() || field_.is_zero(it->second))
        throw InvalidCocycle("cocycle vanishes or is undefined at (" +
                             poset_->label(p.first) + "," + poset_->label(p.second) + ")");
    }
    for (int x = 0; x < poset_->size(); ++x)
      if (!(at(x, x) == field_.one()))
        throw InvalidCocycle("cocycle is not 1 at (" + poset_->label(x) + "," +
                             poset_->label(x) + ")");
    const int n = poset_->size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!poset_->leq(x, y)) continue;
        for (int z = 0; z < n; ++z) {
          if (!poset_->leq(y, z)) continue;
          if (!(at(x, y) * at(y, z) == at(x, z)))
            throw InvalidCocycle("cocycle identity fails on (" + poset_->label(x) + "," +
                                 poset_->label(y) + "," + poset_->label(z) + ")");
        }
      }
  }

  PosetPtr poset_;
  F field_;
  std::map<std::pair<int, int>, Elem> values_;
};

// M_sigma(f)(x,y) = sigma(x,y) f(x,y); fixes every e_x.
template <InvolutiveField F>
struct MultiplicativeAuto {
  Cocycle<F> sigma;

  AlgebraElement<F> operator()(const AlgebraElement<F>& f) const {
    AlgebraElement<F> r(f.poset(), f.field());
    for (const auto& [p, v] : f.support()) r.set(p.first, p.second, sigma.at(p.first, p.second) * v);
    return r;
  }
};

template <InvolutiveField F>
MultiplicativeAuto<F> multiplicative_auto(const Cocycle<F>& sigma) {
  return MultiplicativeAuto<F>{sigma};
}

// alpha_hat(f)(x,y) = f(alpha^-1 x, alpha^-1 y), i.e. entry (x,y) moves to
// (alpha x, alpha y)
struct InducedAuto {
  PosetMap alpha;

  template <InvolutiveField F>
  AlgebraElement<F> operator()(const AlgebraElement<F>& f) const {
    AlgebraElement<F> r(f.poset(), f.field());
    for (const auto& [p, v] : f.support())
      r.set(alpha.image[p.first], alpha.image[p.second], v);
    return r;
  }
};

inline InducedAuto induced_auto(const PosetMap& alpha) { return InducedAuto{alpha}; }

// Automorphism of FI(X,K) as a composite of inner, multiplicative and
// induced factors, applied left to right as written: the factor list
// {f1, f2, f3} acts as f1 o f2 o f3.
template <InvolutiveField F>
class AlgebraAutomorphism {
 public:
  using Factor = std::variant<InnerAuto<F>, MultiplicativeAuto<F>, InducedAuto>;

  static AlgebraAutomorphism inner(const AlgebraElement<F>& u) {
    return AlgebraAutomorphism({Factor{inner_auto(u)}});
  }
  static AlgebraAutomorphism multiplicative(const Cocycle<F>& sigma) {
    return AlgebraAutomorphism({Factor{multiplicative_auto(sigma)}});
  }
  static AlgebraAutomorphism induced(const PosetMap& alpha) {
    return AlgebraAutomorphism({Factor{induced_auto(alpha)}});
  }

  // this o next
  AlgebraAutomorphism then(const AlgebraAutomorphism& next) const {
    auto factors = factors_;
    factors.insert(factors.end(), next.factors_.begin(), next.factors_.end());
    return AlgebraAutomorphism(std::move(factors));
  }

  AlgebraElement<F> operator()(const AlgebraElement<F>& f) const {
    auto r = f;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
      r = std::visit([&](const auto& factor) { return factor(r); }, *it);
    return r;
  }

  const std::vector<Factor>& factors() const { return factors_; }

 private:
  explicit AlgebraAutomorphism(std::vector<Factor> factors) : factors_(std::move(factors)) {}

  std::vector<Factor> factors_;
};

// f central <=> f commutes with the spanning set {e_x} u {e_xy}
template <InvolutiveField F>
bool is_central(const AlgebraElement<F>& f) {
  const auto& poset = *f.poset();
  for (const auto& p : poset.comparable_pairs()) {
    auto e = AlgebraElement<F>::basis(f.poset(), f.field(), p.first, p.second);
    if (!(f * e == e * f)) return false;
  }
  return true;
}

template <InvolutiveField F>
struct CenterBasis {
  int dimension = 0;
  std::vector<AlgebraElement<F>> basis;
};

// Solves f g = g f over the spanning set by exact Gaussian elimination;
// nullspace basis is canonical (free variables in sorted pair order).
template <InvolutiveField F>
CenterBasis<F> center(PosetPtr poset, const F& field) {
  using Elem = typename F::Element;
  auto pairs = poset->comparable_pairs();
  const int m = static_cast<int>(pairs.size());
  std::map<std::pair<int, int>, int> col;
  for (int j = 0; j < m; ++j) col[pairs[j]] = j;

  // rows of the homogeneous system
  std::vector<std::vector<Elem>> rows;
  auto add_row = [&](std::vector<Elem>& r) {
    bool nonzero = false;
    for (auto& v : r)
      if (!field.is_zero(v)) nonzero = true;
    if (nonzero) rows.push_back(r);
  };

  for (const auto& g : pairs) {  // g = e_{z,w}
    int z = g.first, w = g.second;
    for (const auto& uv : pairs) {
      int u = uv.first, v = uv.second;
      // (f e_zw - e_zw f)(u,v) = [v==w][u<=z] f(u,z) - [u==z][w<=v] f(w,v)
      std::vector<Elem> r(m, field.zero());
      if (v == w && poset->leq(u, z)) r[col.at({u, z})] = r[col.at({u, z})] + field.one();
      if (u == z && poset->leq(w, v)) r[col.at({w, v})] = r[col.at({w, v})] - field.one();
      add_row(r);
    }
  }

  // reduced row echelon form
  int pivot_row = 0;
  std::vector<int> pivot_col_of_row;
  std::vector<char> is_pivot_col(m, 0);
  for (int c = 0; c < m && pivot_row < static_cast<int>(rows.size()); ++c) {
    int sel = -1;
    for (int r = pivot_row; r < static_cast<int>(rows.size()); ++r)
      if (!field.is_zero(rows[r][c])) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[pivot_row], rows[sel]);
    Elem piv_inv = field.inv(rows[pivot_row][c]);
    for (int j = 0; j < m; ++j) rows[pivot_row][j] = rows[pivot_row][j] * piv_inv;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == pivot_row || field.is_zero(rows[r][c])) continue;
      Elem factor = rows[r][c];
      for (int j = 0; j < m; ++j) rows[r][j] = rows[r][j] - factor * rows[pivot_row][j];
    }
    is_pivot_col[c] = 1;
    pivot_col_of_row.push_back(c);
    ++pivot_row;
  }

  CenterBasis<F> out;
  for (int c = 0; c < m; ++c) {
    if (is_pivot_col[c]) continue;
    AlgebraElement<F> b(poset, field);
    b.set(pairs[c].first, pairs[c].second, field.one());
    for (int r = 0; r < static_cast<int>(pivot_col_of_row.size()); ++r) {
      Elem v = -rows[r][c];
      if (!field.is_zero(v)) b.set(pairs[pivot_col_of_row[r]].first,
                                   pairs[pivot_col_of_row[r]].second, v);
    }
    out.basis.push_back(std::move(b));
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace fia
