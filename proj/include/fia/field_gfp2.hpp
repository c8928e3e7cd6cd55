#pragma once

#include <cstdint>
#include <string>

#include "fia/errors.hpp"

namespace fia {

// Element a + b*t of GF(p^2) = GF(p)[t]/(t^2 - n), residues in [0, p).
// Carrying (p, n) in the element keeps arithmetic self-contained.
struct GFp2Element {
  int32_t a = 0, b = 0, p = 0, n = 0;

  bool is_zero() const { return a == 0 && b == 0; }

  friend GFp2Element operator+(const GFp2Element& x, const GFp2Element& y) {
    if (x.p != y.p) throw MismatchedCarrier("GF(p^2) elements from different fields");
    return {static_cast<int32_t>((x.a + y.a) % x.p), static_cast<int32_t>((x.b + y.b) % x.p),
            x.p, x.n};
  }
  friend GFp2Element operator-(const GFp2Element& x, const GFp2Element& y) {
    if (x.p != y.p) throw MismatchedCarrier("GF(p^2) elements from different fields");
    return {static_cast<int32_t>((x.a - y.a % x.p + x.p) % x.p),
            static_cast<int32_t>((x.b - y.b % x.p + x.p) % x.p), x.p, x.n};
  }
  friend GFp2Element operator*(const GFp2Element& x, const GFp2Element& y) {
    if (x.p != y.p) throw MismatchedCarrier("GF(p^2) elements from different fields");
    int64_t a = (static_cast<int64_t>(x.a) * y.a + static_cast<int64_t>(x.b) * y.b % x.p * x.n) %
                x.p;
    int64_t b = (static_cast<int64_t>(x.a) * y.b + static_cast<int64_t>(x.b) * y.a) % x.p;
    return {static_cast<int32_t>(a), static_cast<int32_t>(b), x.p, x.n};
  }
  GFp2Element operator-() const {
    return {static_cast<int32_t>((p - a) % p), static_cast<int32_t>((p - b) % p), p, n};
  }
  bool operator==(const GFp2Element& o) const { return a == o.a && b == o.b && p == o.p; }
  bool operator!=(const GFp2Element& o) const { return !(*this == o); }
  bool operator<(const GFp2Element& o) const {  // for ordered containers only
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

// GF(p^2) for an odd prime p, realized as GF(p)[t]/(t^2 - n) with n the
// least quadratic non-residue. The distinguished i is t, and the Frobenius
// x -> x^p is the second-kind involution (t^p = -t since n is a non-residue).
class GFp2Field {
 public:
  using Element = GFp2Element;

  explicit GFp2Field(int32_t p) : p_(p) {
    if (p < 3) throw Error("GF(p^2) needs an odd prime p >= 3");
    for (int32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw Error("GF(p^2): p must be prime");
    n_ = 0;
    for (int32_t c = 2; c < p; ++c) {
      if (!is_square_mod_p(c)) {
        n_ = c;
        break;
      }
    }
    if (n_ == 0) throw Error("GF(p^2): no quadratic non-residue found");
  }

  int32_t p() const { return p_; }
  int32_t non_residue() const { return n_; }
  long long q() const { return static_cast<long long>(p_) * p_; }

  Element zero() const { return {0, 0, p_, n_}; }
  Element one() const { return {1, 0, p_, n_}; }
  Element i() const { return {0, 1, p_, n_}; }
  Element make(int64_t a, int64_t b) const {
    return {static_cast<int32_t>(((a % p_) + p_) % p_), static_cast<int32_t>(((b % p_) + p_) % p_),
            p_, n_};
  }
  Element from_int(long long v) const { return make(v, 0); }

  bool is_zero(const Element& x) const { return x.is_zero(); }

  Element star(const Element& x) const { return {x.a, static_cast<int32_t>((p_ - x.b) % p_), p_, n_}; }

  Element inv(const Element& x) const {
    if (x.is_zero()) throw ZeroElement("division by zero in GF(p^2)");
    // (a + bt)^-1 = (a - bt) / (a^2 - n b^2)
    int64_t d = ((static_cast<int64_t>(x.a) * x.a - static_cast<int64_t>(x.b) * x.b % p_ * n_) %
                     p_ + p_) % p_;
    int64_t dinv = inv_mod_p(d);
    return make(static_cast<int64_t>(x.a) * dinv, static_cast<int64_t>((p_ - x.b) % p_) * dinv);
  }

  Element mul(const Element& a, const Element& b) const { return a * b; }

  Element norm(const Element& x) const { return x * star(x); }

  bool is_in_K0(const Element& x) const { return x.b == 0; }

  // The finite-field norm maps K^x onto K0^x, so membership only needs the
  // K0^x test; we still certify it by a preimage scan.
  bool is_in_K1(const Element& c) const {
    if (c.is_zero()) throw ZeroElement("K1 membership asked of zero");
    if (!is_in_K0(c)) throw NotInK0("K1 membership asked of a non-K0 element");
    return true;
  }

  // first (a,b) in lexicographic scan order with norm c
  Element norm_preimage(const Element& c) const {
    if (!is_in_K1(c)) throw NotANorm("element is not a norm");
    for (int32_t a = 0; a < p_; ++a)
      for (int32_t b = 0; b < p_; ++b) {
        Element x{a, b, p_, n_};
        if (!x.is_zero() && norm(x) == c) return x;
      }
    throw NotANorm("norm scan found no preimage");  // unreachable for valid input
  }

  long long unity_order() const { return q() - 1; }  // K^x is cyclic

  static constexpr bool is_finite = true;

  // index <-> element, for exhaustive sweeps; index = a*p + b
  Element element_by_index(long long idx) const { return make(idx / p_, idx % p_); }
  long long index_of(const Element& x) const { return static_cast<long long>(x.a) * p_ + x.b; }

  Element multiplicative_generator() const {
    for (long long idx = 1; idx < q(); ++idx) {
      Element g = element_by_index(idx);
      if (g.is_zero()) continue;
      long long ord = 1;
      Element v = g;
      while (!(v == one())) {
        v = v * g;
        ++ord;
      }
      if (ord == q() - 1) return g;
    }
    throw Error("no multiplicative generator found");  // unreachable
  }

  std::string name() const { return "GF(" + std::to_string(q()) + ")"; }

  bool operator==(const GFp2Field& o) const { return p_ == o.p_; }

  // canonical text: "1+2t", "2t", "1", "0"
  std::string format(const Element& x) const {
    if (x.b == 0) return std::to_string(x.a);
    std::string tail = std::to_string(x.b) + "t";
    if (x.a == 0) return tail;
    return std::to_string(x.a) + "+" + tail;
  }

  Element parse(const std::string& text) const;

 private:
  bool is_square_mod_p(int32_t c) const {
    for (int32_t x = 0; x < p_; ++x)
      if ((x * x) % p_ == c % p_) return true;
    return false;
  }

  int64_t inv_mod_p(int64_t a) const {  // Fermat
    int64_t r = 1, b = a % p_, e = p_ - 2;
    while (e > 0) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return r;
  }

  int32_t p_, n_;
};

// "1+2t", "2t", "-1", "t"; residues may come signed, they are reduced mod p
inline GFp2Element GFp2Field::parse(const std::string& text) const {
  if (text.empty()) throw ParseError("empty field element");
  int64_t a = 0, b = 0;
  bool saw_a = false, saw_b = false;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    int64_t sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
      if (pos == text.size()) throw ParseError("dangling sign in '" + text + "'");
    } else if (!first) {
      throw ParseError("missing sign between terms in '" + text + "'");
    }
    first = false;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    bool have_digits = pos > start;
    int64_t value = have_digits ? std::stoll(text.substr(start, pos - start)) : 1;
    bool is_t = pos < text.size() && text[pos] == 't';
    if (is_t) ++pos;
    if (!have_digits && !is_t) throw ParseError("unexpected character in '" + text + "'");
    if (is_t) {
      if (saw_b) throw ParseError("two t-terms in '" + text + "'");
      b = sign * value;
      saw_b = true;
    } else {
      if (saw_a) throw ParseError("two constant terms in '" + text + "'");
      a = sign * value;
      saw_a = true;
    }
  }
  return make(a, b);
}

}  // namespace fia
