#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lamcount/real.hpp"
#include "lamcount/singularity.hpp"
#include "lamcount/size_model.hpp"

namespace lamcount {

/// (constant, square-root coefficient) of an expansion at the dominant
/// singularity rho of the all-terms series.
template <class R>
struct PuiseuxPair {
  R constant{};
  R sqrt_coeff{};
};

/// Everything a bounds computation reports: the expansions of the two excess
/// surrogates, the expansions of the induced bounding series at level m, and
/// the asymptotic constants obtained through the transfer
/// C = sqrt_coeff / Gamma(-1/2).
template <class R>
struct BoundsReport {
  SizeModel model;
  unsigned m = 0, h = 0, H = 0;
  unsigned M = 0;  // 0: plain bounds; otherwise the improvement start level
  R rho{};
  R all_constant{};    // value of the all-terms series at rho
  R all_sqrt_coeff{};  // its square-root coefficient (negative)
  PuiseuxPair<R> excess_lower;  // lower excess surrogate (upper series bound)
  PuiseuxPair<R> excess_upper;  // upper excess surrogate (lower series bound)
  PuiseuxPair<R> series_lower;  // lower bounding series at level m
  PuiseuxPair<R> series_upper;  // upper bounding series at level m
  R C_lower{}, C_upper{};
  bool lower_trivial = false;  // C_lower <= 0 carries no information
  int agreement_digits = 0;
  std::string note;
};

/// Evaluates singularity expansions of the excess surrogates and propagates
/// them into asymptotic constants.  Caches the bounded-index series values
/// at rho per index bound and the lower-surrogate expansions per (m, h);
/// use one engine per thread.
template <class R>
class BoundsEngine {
 public:
  BoundsEngine(const SizeModel& mo, unsigned digits)
      : model_(mo), digits_(digits), all_(all_terms_expansion<R>(mo, digits)) {}

  const SizeModel& model() const noexcept { return model_; }
  unsigned digits() const noexcept { return digits_; }
  const GfExpansion<R>& all() const noexcept { return all_; }

  /// Expansion at rho of the lower excess surrogate with index bound h.
  PuiseuxPair<R> excess_lower_expansion(unsigned m, unsigned h) {
    auto key = std::make_pair(m, h);
    if (auto it = lower_cache_.find(key); it != lower_cache_.end()) return it->second;
    PuiseuxPair<R> out = compute_excess_lower(m, h);
    lower_cache_.emplace(key, out);
    return out;
  }

  /// Expansion at rho of the upper excess surrogate (bounds h, relaxation
  /// level H).
  PuiseuxPair<R> excess_upper_expansion(unsigned m, unsigned h, unsigned H) {
    const R& rho = all_.rho;
    const R pref_denom = 1 - ipow(rho, model_.b);
    const R tail_denom = 1 - ipow(rho, model_.b + model_.c) - 2 * ipow(rho, model_.d) * all_.constant;
    guard_positive(tail_denom, "relaxed tail");
    const R rd = ipow(rho, model_.d);
    const R B2 = 2 * all_.sqrt_coeff;

    if (m >= H) {
      R scale = ipow(rho, std::uint64_t{model_.a} + std::uint64_t{model_.b} * m) /
                (pref_denom * tail_denom);
      return {scale, scale * B2 * rd / tail_denom};
    }

    std::vector<R> dot_c(H - m), pair_d(H - m);
    for (unsigned i = m; i < H; ++i) {
      PuiseuxPair<R> k = excess_lower_expansion(i, h);
      R denom = 1 - rd * (2 * all_.constant - k.constant);
      guard_positive(denom, "relaxed factor");
      dot_c[i - m] = 1 / denom;
      pair_d[i - m] = B2 - k.sqrt_coeff;  // 2*sqrt_coeff(all) - d_i of the lower surrogate
    }

    R prefix = ipow(rho, static_cast<long long>(model_.a) -
                             static_cast<long long>(model_.c) * m) /
               pref_denom;
    R sum_c = 0, sum_d = 0, prod = 1, ratio_sum = 0;
    for (unsigned j = m; j < H; ++j) {
      prod *= dot_c[j - m];
      ratio_sum += rd * pair_d[j - m] * dot_c[j - m];  // dot_d_i / dot_c_i
      R weight = ipow(rho, std::uint64_t{j} * (model_.b + model_.c));
      sum_c += weight * prod;
      sum_d += weight * ratio_sum * prod;
    }

    std::uint64_t E = std::uint64_t{model_.a} + std::uint64_t{model_.b} * H +
                      std::uint64_t{model_.c} * (H - m);
    R tail_scale = ipow(rho, E) / (pref_denom * tail_denom) * prod;
    R corr = B2 / tail_denom;
    for (unsigned i = m; i < H; ++i) corr += pair_d[i - m] * dot_c[i - m];

    return {prefix * sum_c + tail_scale, prefix * sum_d + tail_scale * rd * corr};
  }

  /// Puiseux propagation through one level of the quadratic recurrence:
  /// given the expansion of the bounding series at level m+1, returns the
  /// expansion of the induced bounding series at level m.
  PuiseuxPair<R> quadratic_step(unsigned m, const PuiseuxPair<R>& tail) const {
    const R& rho = all_.rho;
    R u = 1 - 4 * ipow(rho, model_.a + model_.d) * index_sum(m);
    return step_with_source(u, tail);
  }

  /// Same propagation with the unlimited variable source; the all-terms
  /// expansion is its exact fixed point.
  PuiseuxPair<R> quadratic_step_unbounded(const PuiseuxPair<R>& tail) const {
    R u = 1 - 4 * ipow(all_.rho, model_.a + model_.d) / (1 - ipow(all_.rho, model_.b));
    return step_with_source(u, tail);
  }

  BoundsReport<R> asymptotic_bounds(unsigned m, unsigned h, unsigned H) {
    BoundsReport<R> rep = base_report(m, h, H, 0);
    rep.excess_lower = excess_lower_expansion(m, h);
    rep.excess_upper = excess_upper_expansion(m, h, H);
    rep.series_upper = {all_.constant - rep.excess_lower.constant,
                        all_.sqrt_coeff - rep.excess_lower.sqrt_coeff};
    rep.series_lower = {all_.constant - rep.excess_upper.constant,
                        all_.sqrt_coeff - rep.excess_upper.sqrt_coeff};
    finish_report(rep);
    return rep;
  }

  /// Bound improvement: seed the two bounding series at level M with the
  /// excess surrogates, then propagate both expansions down to level m
  /// through the quadratic recurrence.
  BoundsReport<R> improved_bounds(unsigned m, unsigned M, unsigned h, unsigned H) {
    if (m > M) throw std::invalid_argument("improvement requires m <= M");
    BoundsReport<R> rep = base_report(m, h, H, M);
    rep.excess_lower = excess_lower_expansion(M, h);
    rep.excess_upper = excess_upper_expansion(M, h, H);
    PuiseuxPair<R> upper{all_.constant - rep.excess_lower.constant,
                         all_.sqrt_coeff - rep.excess_lower.sqrt_coeff};
    PuiseuxPair<R> lower{all_.constant - rep.excess_upper.constant,
                         all_.sqrt_coeff - rep.excess_upper.sqrt_coeff};
    for (unsigned level = M; level-- > m;) {
      upper = quadratic_step(level, upper);
      lower = quadratic_step(level, lower);
    }
    rep.series_upper = upper;
    rep.series_lower = lower;
    finish_report(rep);
    return rep;
  }

 private:
  R index_sum(unsigned j) const {  // 1 + rho^b + ... + rho^{b(j-1)}
    return (1 - ipow(all_.rho, std::uint64_t{model_.b} * j)) / (1 - ipow(all_.rho, model_.b));
  }

  PuiseuxPair<R> step_with_source(const R& u, const PuiseuxPair<R>& tail) const {
    const R& rho = all_.rho;
    R v = -4 * ipow(rho, model_.c + model_.d);
    R w = u + v * tail.constant;
    if (w <= 0)
      throw NumericError("quadratic step radicand is not positive; "
                         "the surrogate singularity would move");
    R root = sqrt(w);
    R rd = ipow(rho, model_.d);
    return {(1 - root) / (2 * rd), -v * tail.sqrt_coeff / (4 * rd * root)};
  }

  PuiseuxPair<R> compute_excess_lower(unsigned m, unsigned h) {
    const R& rho = all_.rho;
    const std::vector<R>& lh = bounded_values(h);  // lh[i] for i = 0..h
    const R pref_denom = 1 - ipow(rho, model_.b);
    const R rd = ipow(rho, model_.d);
    const R& B = all_.sqrt_coeff;

    R tail_denom = 1 - ipow(rho, model_.b + model_.c) - rd * (all_.constant + lh[h]);
    guard_positive(tail_denom, "bounded tail");

    if (m >= h) {
      R scale = ipow(rho, std::uint64_t{model_.a} + std::uint64_t{model_.b} * m) /
                (pref_denom * tail_denom);
      return {scale, scale * B * rd / tail_denom};
    }

    std::vector<R> tc(h - m);
    for (unsigned i = m; i < h; ++i) {
      R denom = 1 - rd * (all_.constant + lh[i]);
      guard_positive(denom, "bounded factor");
      tc[i - m] = 1 / denom;
    }

    R prefix = ipow(rho, static_cast<long long>(model_.a) -
                             static_cast<long long>(model_.c) * m) /
               pref_denom;
    R sum_c = 0, sum_d = 0, prod = 1, ratio_sum = 0;
    for (unsigned j = m; j < h; ++j) {
      prod *= tc[j - m];
      ratio_sum += B * rd * tc[j - m];  // tilde_d_i / tilde_c_i
      R weight = ipow(rho, std::uint64_t{j} * (model_.b + model_.c));
      sum_c += weight * prod;
      sum_d += weight * ratio_sum * prod;
    }

    std::uint64_t E = std::uint64_t{model_.a} + std::uint64_t{model_.b} * h +
                      std::uint64_t{model_.c} * (h - m);
    R tail_scale = ipow(rho, E) / (pref_denom * tail_denom) * prod;
    R corr = 1 / tail_denom;
    for (unsigned i = m; i < h; ++i) corr += tc[i - m];

    return {prefix * sum_c + tail_scale, prefix * sum_d + tail_scale * B * rd * corr};
  }

  const std::vector<R>& bounded_values(unsigned h) {
    auto it = lh_cache_.find(h);
    if (it == lh_cache_.end()) {
      std::vector<R> vals(h + 1);
      for (unsigned i = 0; i <= h; ++i)
        vals[i] = eval_bounded_index_gf(model_, i, h, all_.rho);
      it = lh_cache_.emplace(h, std::move(vals)).first;
    }
    return it->second;
  }

  BoundsReport<R> base_report(unsigned m, unsigned h, unsigned H, unsigned M) const {
    if (h == 0 || H == 0) throw std::invalid_argument("index bounds h, H must be >= 1");
    BoundsReport<R> rep;
    rep.model = model_;
    rep.m = m;
    rep.h = h;
    rep.H = H;
    rep.M = M;
    rep.rho = all_.rho;
    rep.all_constant = all_.constant;
    rep.all_sqrt_coeff = all_.sqrt_coeff;
    return rep;
  }

  void finish_report(BoundsReport<R>& rep) const {
    R gamma = gamma_minus_half<R>();
    rep.C_upper = rep.series_upper.sqrt_coeff / gamma;
    rep.C_lower = rep.series_lower.sqrt_coeff / gamma;
    if (rep.C_lower > rep.C_upper) {  // orientation is checked, not assumed
      std::swap(rep.C_lower, rep.C_upper);
      std::swap(rep.series_lower, rep.series_upper);
      rep.note += "bounding series exchanged roles after the numeric orientation check; ";
    }
    if (!(rep.C_upper > 0))
      throw NumericError("upper asymptotic constant is not positive");
    rep.lower_trivial = !(rep.C_lower > 0);
    rep.agreement_digits = agreement_digits(rep.C_lower, rep.C_upper);
  }

  static int agreement_digits(const R& lo, const R& hi) {
    if (!(lo > 0)) return 0;
    R gap = hi - lo;
    if (gap <= 0) return working_digits<R>();
    double ratio = static_cast<double>(hi / gap);
    if (!(ratio > 1)) return 0;
    return static_cast<int>(std::floor(std::log10(ratio)));
  }

  static void guard_positive(const R& value, const char* what) {
    if (!(value > 0))
      throw NumericError(std::string("sequence-schema guard failed (") + what +
                         "): denominator is not positive");
  }

  SizeModel model_;
  unsigned digits_;
  GfExpansion<R> all_;
  std::map<unsigned, std::vector<R>> lh_cache_;
  std::map<std::pair<unsigned, unsigned>, PuiseuxPair<R>> lower_cache_;
};

template <class R>
PuiseuxPair<R> excess_lower_expansion(const SizeModel& mo, unsigned m, unsigned h,
                                      unsigned digits) {
  return BoundsEngine<R>(mo, digits).excess_lower_expansion(m, h);
}

template <class R>
PuiseuxPair<R> excess_upper_expansion(const SizeModel& mo, unsigned m, unsigned h, unsigned H,
                                      unsigned digits) {
  return BoundsEngine<R>(mo, digits).excess_upper_expansion(m, h, H);
}

template <class R>
BoundsReport<R> asymptotic_bounds(const SizeModel& mo, unsigned m, unsigned h, unsigned H,
                                  unsigned digits) {
  return BoundsEngine<R>(mo, digits).asymptotic_bounds(m, h, H);
}

template <class R>
BoundsReport<R> improved_asymptotic_bounds(const SizeModel& mo, unsigned m, unsigned M,
                                           unsigned h, unsigned H, unsigned digits) {
  return BoundsEngine<R>(mo, digits).improved_bounds(m, M, h, H);
}

}  // namespace lamcount
