#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace lamcount {

/// Fixed-precision binary float with D decimal digits of working precision.
template <unsigned D>
using RealDigits = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<D>>;

/// Default working precision: comfortably above the 30 reported digits the
/// reports default to, so that the heavy cancellations in the bound
/// improvement still leave ample headroom.
using Real = RealDigits<60>;

/// Wide tier for unusually high --digits requests.
using WideReal = RealDigits<200>;

template <class R>
constexpr unsigned working_digits() {
  return std::numeric_limits<R>::digits10;
}

/// x^e for integer e (negative exponents allowed).
template <class R>
R ipow(const R& x, long long e) {
  if (e < 0) return R(1) / ipow(x, -e);
  R acc(1), base(x);
  unsigned long long n = static_cast<unsigned long long>(e);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

/// Gamma(-1/2) = -2*sqrt(pi), the transfer constant turning the coefficient
/// of (1 - z/rho)^(1/2) into the n^(-3/2) rho^(-n) asymptotic constant.
template <class R>
R gamma_minus_half() {
  return R(-2) * boost::math::constants::root_pi<R>();
}

/// Decimal rendering with a fixed number of significant digits; used for all
/// machine-readable output so identical runs emit identical bytes.
template <class R>
std::string to_decimal_string(const R& x, unsigned digits) {
  std::ostringstream os;
  os << std::setprecision(static_cast<int>(digits)) << x;
  return os.str();
}

}  // namespace lamcount
