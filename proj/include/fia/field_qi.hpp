#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fia/errors.hpp"

namespace fia {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Element of Q(i): re + im*i with exact rational parts. cpp_rational keeps
// lowest terms and positive denominator, so equality is structural.
struct GaussianRational {
  Rat re, im;

  GaussianRational() = default;
  GaussianRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational operator-() const { return {-re, -im}; }
  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }
  bool operator<(const GaussianRational& o) const {  // for ordered containers only
    if (re != o.re) return re < o.re;
    return im < o.im;
  }
};

namespace detail {

// trial division; desk-scale magnitudes only
inline std::map<Int, int> factorize(Int n) {
  std::map<Int, int> fac;
  if (n < 0) n = -n;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++fac[p];
      n /= p;
    }
  }
  if (n > 1) ++fac[n];
  return fac;
}

inline std::string rat_to_string(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

}  // namespace detail

// Q(i) with complex conjugation as the second-kind involution.
// K0 = Q, i^2 = -1, K1 = positive rationals that are norms (sums of two
// rational squares).
class GaussianRationalField {
 public:
  using Element = GaussianRational;

  Element zero() const { return {Rat(0), Rat(0)}; }
  Element one() const { return {Rat(1), Rat(0)}; }
  Element i() const { return {Rat(0), Rat(1)}; }
  Element from_int(long long n) const { return {Rat(n), Rat(0)}; }
  Element from_ratio(long long n, long long d) const { return {Rat(n, d), Rat(0)}; }

  bool is_zero(const Element& x) const { return x.is_zero(); }

  Element star(const Element& x) const { return {x.re, -x.im}; }

  Element inv(const Element& x) const {
    if (x.is_zero()) throw ZeroElement("division by zero in Q(i)");
    Rat n = x.re * x.re + x.im * x.im;
    return {x.re / n, -x.im / n};
  }

  Element mul(const Element& a, const Element& b) const { return a * b; }

  // x * x^*; always lands in K0
  Element norm(const Element& x) const { return x * star(x); }

  bool is_in_K0(const Element& x) const { return x.im == 0; }

  // c in K1 iff c > 0 and every prime = 3 (mod 4) occurs to an even power
  // in numerator*denominator (sum-of-two-squares criterion).
  bool is_in_K1(const Element& c) const {
    if (c.is_zero()) throw ZeroElement("K1 membership asked of zero");
    if (!is_in_K0(c)) throw NotInK0("K1 membership asked of a non-K0 element");
    if (c.re < 0) return false;
    Int m = numerator(c.re) * denominator(c.re);
    for (const auto& [p, e] : detail::factorize(m))
      if (p % 4 == 3 && e % 2 == 1) return false;
    return true;
  }

  // Some a with a a^* = c. Gaussian-prime composition over m*n, then the
  // representative is canonicalized: largest re among unit/conjugate
  // variants, ties broken by im >= 0.
  Element norm_preimage(const Element& c) const {
    if (!is_in_K1(c)) throw NotANorm("element is not a norm in Q(i)");
    Int m = numerator(c.re), n = denominator(c.re);
    Int target = m * n;  // c = (m n) / n^2
    Int gre = 1, gim = 0;
    for (const auto& [p, e] : detail::factorize(target)) {
      Int fre, fim;
      int reps = e;
      if (p == 2) {
        fre = 1;
        fim = 1;
      } else if (p % 4 == 1) {
        fre = 0;
        fim = 0;
        for (Int y = 1; y * y * 2 <= p; ++y) {
          Int x2 = p - y * y;
          Int x = boost::multiprecision::sqrt(x2);
          if (x * x == x2) {
            fre = x;
            fim = y;
            break;
          }
        }
      } else {  // p = 3 (mod 4), even exponent
        fre = p;
        fim = 0;
        reps = e / 2;
      }
      for (int k = 0; k < reps; ++k) {
        Int nre = gre * fre - gim * fim;
        Int nim = gre * fim + gim * fre;
        gre = nre;
        gim = nim;
      }
    }
    Element a{Rat(gre, n), Rat(gim, n)};
    // canonical pick among a * {1,-1,i,-i} and conj(a) * {1,-1,i,-i}:
    // largest re, then largest im
    Element best = a;
    bool have = false;
    for (Element base : {a, star(a)}) {
      Element v = base;
      for (int k = 0; k < 4; ++k) {
        if (!have || v.re > best.re || (v.re == best.re && v.im > best.im)) {
          best = v;
          have = true;
        }
        v = v * i();
      }
    }
    if (norm(best) != c) throw NotANorm("norm_preimage postcondition failed");
    return best;
  }

  long long unity_order() const { return 4; }  // {1, -1, i, -i}

  static constexpr bool is_finite = false;

  std::string name() const { return "Q(i)"; }

  bool operator==(const GaussianRationalField&) const { return true; }

  // canonical text: "3/5+2/7i", "-1", "2i"
  std::string format(const Element& x) const {
    if (x.im == 0) return detail::rat_to_string(x.re);
    std::string imag = detail::rat_to_string(x.im) + "i";
    if (x.re == 0) return imag;
    if (x.im > 0) return detail::rat_to_string(x.re) + "+" + imag;
    return detail::rat_to_string(x.re) + imag;  // im < 0 carries its sign
  }

  Element parse(const std::string& text) const;

 private:
};

namespace detail {

struct NumberToken {
  Rat value;
  bool imaginary;
};

// [sign] digits [/digits] [unit]; also bare "i"/"t" with implicit 1
template <char Unit>
inline std::vector<NumberToken> tokenize_field_text(const std::string& text) {
  std::vector<NumberToken> toks;
  std::size_t pos = 0;
  if (text.empty()) throw ParseError("empty field element");
  while (pos < text.size()) {
    Int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
      if (pos == text.size()) throw ParseError("dangling sign in '" + text + "'");
    } else if (!toks.empty()) {
      throw ParseError("missing sign between terms in '" + text + "'");
    }
    auto read_int = [&]() {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw ParseError("expected digits in '" + text + "'");
      return Int(text.substr(start, pos - start));
    };
    Int num = 1, den = 1;
    bool have_digits = pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
    if (have_digits) {
      num = read_int();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_int();
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
      }
    }
    bool imag = pos < text.size() && text[pos] == Unit;
    if (imag) ++pos;
    if (!have_digits && !imag) throw ParseError("unexpected character in '" + text + "'");
    toks.push_back(NumberToken{Rat(sign * num, den), imag});
  }
  if (toks.size() > 2) throw ParseError("too many terms in '" + text + "'");
  return toks;
}

}  // namespace detail

inline GaussianRational GaussianRationalField::parse(const std::string& text) const {
  auto toks = detail::tokenize_field_text<'i'>(text);
  Rat re = 0, im = 0;
  bool saw_re = false, saw_im = false;
  for (const auto& t : toks) {
    if (t.imaginary) {
      if (saw_im) throw ParseError("two imaginary terms in '" + text + "'");
      im = t.value;
      saw_im = true;
    } else {
      if (saw_re) throw ParseError("two real terms in '" + text + "'");
      re = t.value;
      saw_re = true;
    }
  }
  return {re, im};
}

}  // namespace fia
