#pragma once

#include <limits>
#include <stdexcept>

#include "lamcount/polynomial.hpp"
#include "lamcount/real.hpp"
#include "lamcount/series.hpp"
#include "lamcount/size_model.hpp"

namespace lamcount {

/// First two terms of the expansion of a counting series at its dominant
/// singularity rho:  f(z) = constant + sqrt_coeff * (1 - z/rho)^(1/2) + ...
/// For the term-counting families the constant is positive and the square
/// root coefficient negative.
template <class R>
struct GfExpansion {
  R rho;
  R constant;
  R sqrt_coeff;
  unsigned digits = 0;
};

namespace detail {

template <class R>
R certified_root01(const IntPolynomial& p, unsigned digits) {
  if (digits + 10 > working_digits<R>())
    throw NumericError("requested digits exceed the working precision tier");
  RootBracket b = isolate_smallest_root01(p);
  b = refine_bracket(p, b, digits + 4);
  return b.template midpoint<R>();
}

}  // namespace detail

/// Dominant singularity of the all-terms series: the unique root in (0,1) of
/// (1-z^b)(1-z^c)^2 - 4 z^{a+d}, enclosed by exact-integer bisection until
/// the relative bracket width is below 10^-digits.
template <class R>
R dominant_singularity(const SizeModel& mo, unsigned digits) {
  require_valid(mo);
  return detail::certified_root01<R>(singularity_polynomial(mo), digits);
}

/// Dominant singularity of the bounded-index families (index bound h); it is
/// strictly larger than dominant_singularity and decreases to it as h grows.
template <class R>
R bounded_index_singularity(const SizeModel& mo, unsigned h, unsigned digits) {
  require_valid(mo);
  return detail::certified_root01<R>(bounded_index_singularity_polynomial(mo, h), digits);
}

/// Value of the all-terms series at z in (0, rho], via its closed form
/// (1 - z^c - sqrt((1-z^c)^2 - 4 z^{a+d}/(1-z^b))) / (2 z^d).
template <class R>
R eval_all_terms_gf(const SizeModel& mo, const R& z) {
  if (!(z > 0 && z < 1)) throw std::invalid_argument("evaluation point must lie in (0,1)");
  R zc = ipow(z, mo.c);
  R radicand = (1 - zc) * (1 - zc) - 4 * ipow(z, mo.a + mo.d) / (1 - ipow(z, mo.b));
  if (radicand < 0) throw NumericError("negative radicand: z lies beyond the singularity");
  return (1 - zc - sqrt(radicand)) / (2 * ipow(z, mo.d));
}

/// Value of the bounded-index series (openness allowance m, index bound h)
/// at z in (0, rho^{(h)}), evaluated through its nested-radical closed form,
/// innermost radical first.
template <class R>
R eval_bounded_index_gf(const SizeModel& mo, unsigned m, unsigned h, const R& z) {
  if (h == 0) throw std::invalid_argument("index bound h must be >= 1");
  if (!(z > 0 && z < 1)) throw std::invalid_argument("evaluation point must lie in (0,1)");
  const R zb = ipow(z, mo.b);
  const R zc = ipow(z, mo.c);
  const R zad4 = 4 * ipow(z, mo.a + mo.d);
  auto index_sum = [&](unsigned j) {  // 1 + z^b + ... + z^{b(j-1)}
    return (1 - ipow(z, std::uint64_t{mo.b} * j)) / (1 - zb);
  };

  R val = (1 - zc) * (1 - zc) - zad4 * index_sum(h);
  if (val < 0) throw NumericError("negative radicand: z lies beyond the singularity");
  if (m >= h) return (1 - zc - sqrt(val)) / (2 * ipow(z, mo.d));

  for (unsigned j = h; j-- > m;) {
    R rj = 1 - zad4 * index_sum(j) - 2 * zc;
    if (j == h - 1) rj += 2 * zc * zc;
    val = rj + 2 * zc * sqrt(val);
    if (val < 0) throw NumericError("negative radicand: z lies beyond the singularity");
  }
  return (1 - sqrt(val)) / (2 * ipow(z, mo.d));
}

/// Expansion of the all-terms series at its dominant singularity.  The
/// constant is (1 - rho^c)/(2 rho^d); the square-root coefficient comes from
/// the exact derivative of the closed-form radicand at rho and is negative.
template <class R>
GfExpansion<R> all_terms_expansion(const SizeModel& mo, unsigned digits) {
  require_valid(mo);
  R rho = dominant_singularity<R>(mo, digits);

  R constant = (1 - ipow(rho, mo.c)) / (2 * ipow(rho, mo.d));

  // radicand g(z) = (1-z^c)^2 - 4 z^{a+d} / (1-z^b) = P1(z) - P2(z)/Q(z);
  // near rho, g(z) ~ -rho g'(rho) (1 - z/rho), so the square-root
  // coefficient of the series is -sqrt(-rho g'(rho)) / (2 rho^d).
  IntPolynomial one = IntPolynomial::monomial(0, 1);
  IntPolynomial gc = one - IntPolynomial::monomial(mo.c, 1);
  IntPolynomial p1 = gc * gc;
  IntPolynomial p2 = IntPolynomial::monomial(mo.a + mo.d, 4);
  IntPolynomial q = one - IntPolynomial::monomial(mo.b, 1);
  R qv = q.eval(rho);
  R gprime = p1.derivative().eval(rho) -
             (p2.derivative().eval(rho) * qv - p2.eval(rho) * q.derivative().eval(rho)) / (qv * qv);
  R inner = -rho * gprime;
  if (inner <= 0) throw NumericError("radicand derivative check failed at the singularity");
  R sqrt_coeff = -sqrt(inner) / (2 * ipow(rho, mo.d));

  return GfExpansion<R>{rho, constant, sqrt_coeff, digits};
}

/// |f(rho_hat)| where f is the singularity polynomial; reported alongside
/// rho as a numerical certificate.
template <class R>
R singularity_residual(const SizeModel& mo, const R& rho_hat) {
  R v = singularity_polynomial(mo).eval(rho_hat);
  return v < 0 ? R(-v) : v;
}

}  // namespace lamcount
