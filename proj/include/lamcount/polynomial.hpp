#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lamcount/size_model.hpp"

namespace lamcount {

using BigInt = boost::multiprecision::cpp_int;

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense polynomial with exact integer coefficients, low degree first.
/// Used for the singularity polynomials, whose roots are then certified by
/// exact sign evaluation at dyadic rationals.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPolynomial monomial(unsigned degree, BigInt coeff) {
    std::vector<BigInt> v(degree + 1);
    v[degree] = std::move(coeff);
    return IntPolynomial(std::move(v));
  }

  const std::vector<BigInt>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  unsigned degree() const noexcept { return c_.empty() ? 0 : static_cast<unsigned>(c_.size()) - 1; }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  IntPolynomial& operator-=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(v));
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * BigInt(i);
    return IntPolynomial(std::move(v));
  }

  /// Exact value of 2^{k*deg} * p(num / 2^k); only its sign is ever used.
  BigInt scaled_value_at_dyadic(const BigInt& num, unsigned k) const {
    if (c_.empty()) return 0;
    BigInt acc = c_.back();
    BigInt one = BigInt(1) << k;
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * num + c_[i] * pow(one, c_.size() - 1 - i);
    return acc;
  }

  int sign_at_dyadic(const BigInt& num, unsigned k) const {
    BigInt v = scaled_value_at_dyadic(num, k);
    return v == 0 ? 0 : (v > 0 ? 1 : -1);
  }

  template <class Real>
  Real eval(const Real& x) const {
    Real acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Real(c_[i]);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

/// Dyadic enclosure [lo_num, hi_num] / 2^log2_den of a real root.
struct RootBracket {
  BigInt lo_num, hi_num;
  unsigned log2_den = 0;

  template <class Real>
  Real midpoint() const {
    Real mid(lo_num + hi_num);
    return ldexp(mid, -static_cast<int>(log2_den) - 1);
  }
};

namespace detail {

inline unsigned sign_variations(const std::vector<BigInt>& v) {
  unsigned count = 0;
  int last = 0;
  for (const BigInt& x : v) {
    if (x == 0) continue;
    int s = x > 0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// In-place Taylor shift: p(x) -> p(x+1).
inline void shift_by_one(std::vector<BigInt>& p) {
  if (p.size() < 2) return;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    for (std::size_t j = p.size() - 1; j-- > i;) p[j] += p[j + 1];
}

// Descartes bound for the number of roots in the open interval (0,1):
// variations of (1+x)^n p(1/(1+x)).
inline unsigned root_bound01(const std::vector<BigInt>& p) {
  std::vector<BigInt> q(p.rbegin(), p.rend());
  shift_by_one(q);
  return sign_variations(q);
}

struct IsolationState {
  const IntPolynomial* poly;
  unsigned max_depth;
};

// Leftmost-first subdivision on [c, c+1]/2^k.  `p` is the polynomial mapped
// onto that interval.  Returns true and fills `out` once an interval with
// exactly one interior root (or an exact dyadic root) is found.
inline bool isolate_rec(const IsolationState& st, std::vector<BigInt> p, const BigInt& c,
                        unsigned k, RootBracket& out) {
  unsigned bound = root_bound01(p);
  if (bound == 0) return false;
  if (bound == 1) {
    out = RootBracket{c, c + 1, k};
    return true;
  }
  if (k >= st.max_depth)
    throw NumericError("root isolation failed to separate roots (depth " +
                       std::to_string(st.max_depth) + ")");
  // Left half: q(x) = 2^n p(x/2); right half: shift q by one.
  std::vector<BigInt> q(p.size());
  unsigned n = static_cast<unsigned>(p.size()) - 1;
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i] << (n - i);
  std::vector<BigInt> r = q;
  shift_by_one(r);
  if (isolate_rec(st, std::move(q), c * 2, k + 1, out)) return true;
  if (r[0] == 0) {  // exact root at the midpoint c*2+1 over 2^{k+1}
    BigInt mid = c * 2 + 1;
    out = RootBracket{mid, mid, k + 1};
    return true;
  }
  return isolate_rec(st, std::move(r), c * 2 + 1, k + 1, out);
}

}  // namespace detail

/// Isolates the smallest root of p in the open interval (0, 1).  Requires
/// p(0) != 0 and p(1) != 0.  Throws NumericError when no root exists there.
inline RootBracket isolate_smallest_root01(const IntPolynomial& p, unsigned max_depth = 128) {
  if (p.is_zero() || p.coeffs().front() == 0 ||
      p.sign_at_dyadic(1, 0) == 0)
    throw std::invalid_argument("isolation requires p(0) != 0 and p(1) != 0");
  detail::IsolationState st{&p, max_depth};
  RootBracket out;
  if (!detail::isolate_rec(st, p.coeffs(), 0, 0, out))
    throw NumericError("polynomial has no root in (0,1)");
  return out;
}

/// Shrinks an isolating bracket by exact-sign bisection until its relative
/// width is below 10^-digits.  The returned endpoints still enclose the root.
inline RootBracket refine_bracket(const IntPolynomial& p, RootBracket b, unsigned digits) {
  if (b.lo_num == b.hi_num) return b;  // exact dyadic root
  int lo_sign = p.sign_at_dyadic(b.lo_num, b.log2_den);
  int hi_sign = p.sign_at_dyadic(b.hi_num, b.log2_den);
  if (lo_sign == 0 || lo_sign == hi_sign)
    throw NumericError("bracket does not straddle a sign change");
  const BigInt threshold = pow(BigInt(10), digits);
  while (b.lo_num < threshold) {
    BigInt mid = b.lo_num + b.hi_num;  // midpoint numerator at denominator 2^{k+1}
    ++b.log2_den;
    b.lo_num <<= 1;
    b.hi_num <<= 1;
    int s = p.sign_at_dyadic(mid, b.log2_den);
    if (s == 0) {
      b.lo_num = b.hi_num = mid;
      return b;
    }
    if (s == lo_sign)
      b.lo_num = mid;
    else
      b.hi_num = mid;
  }
  return b;
}

/// Polynomial whose smallest root in (0,1) is the dominant singularity of
/// the all-terms series: (1-z^b)(1-z^c)^2 - 4 z^{a+d}.
inline IntPolynomial singularity_polynomial(const SizeModel& mo) {
  IntPolynomial one = IntPolynomial::monomial(0, 1);
  IntPolynomial f = (one - IntPolynomial::monomial(mo.b, 1));
  IntPolynomial g = one - IntPolynomial::monomial(mo.c, 1);
  return f * g * g - IntPolynomial::monomial(mo.a + mo.d, 4);
}

/// Polynomial for the dominant singularity of the bounded-index families:
/// ((1-z^b)(1-z^c)^2 - 4 z^{a+d}(1-z^{bh})) / (1-z), with the forced root at
/// z = 1 already divided out so that isolation in (0,1) is clean.
inline IntPolynomial bounded_index_singularity_polynomial(const SizeModel& mo, unsigned h) {
  if (h == 0) throw std::invalid_argument("index bound h must be >= 1");
  // (1-z^b)/(1-z) = 1 + z + ... + z^{b-1}; same for (1-z^{bh})/(1-z).
  IntPolynomial geo_b(std::vector<BigInt>(mo.b, BigInt(1)));
  IntPolynomial geo_bh(std::vector<BigInt>(std::size_t{mo.b} * h, BigInt(1)));
  IntPolynomial one = IntPolynomial::monomial(0, 1);
  IntPolynomial g = one - IntPolynomial::monomial(mo.c, 1);
  return geo_b * g * g - IntPolynomial::monomial(mo.a + mo.d, 4) * geo_bh;
}

}  // namespace lamcount
