#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lamcount/size_model.hpp"

namespace lamcount {

using BigInt = boost::multiprecision::cpp_int;

/// Counting-series families.  "excess" counts the structures separating all
/// terms from the m-open ones; the lower/upper variants are the bounding
/// surrogates obtained by restricting or relaxing the open-term factor of
/// the excess recurrence.
enum class Family {
  all_terms,       // every De Bruijn term
  open_terms,      // terms closable by a prefix of at most m abstractions
  excess,          // all_terms minus open_terms
  bounded_index,   // m-open terms whose variable indices are all <= h
  excess_lower,    // excess surrogate built over bounded_index (pointwise <= excess)
  excess_upper,    // excess surrogate relaxed above level H (pointwise >= excess)
};

/// Truncated counting series with exact coefficients.
struct CoeffSeries {
  SizeModel model;
  Family family = Family::all_terms;
  unsigned m = 0, h = 0, H = 0;  // parameters; meaningful per family
  std::vector<BigInt> coeffs;    // coeffs[n] counts objects of size n, n <= N

  unsigned truncation() const { return static_cast<unsigned>(coeffs.size()) - 1; }
};

namespace detail {

// Coefficient of z^n in the variable source z^a * (1 + z^b + z^{2b} + ...),
// with at most `allowance` summands (indices 1..allowance); no limit when
// allowance is empty.
inline BigInt variable_source(const SizeModel& mo, unsigned n,
                              std::optional<std::uint64_t> allowance) {
  if (n < mo.a || (n - mo.a) % mo.b != 0) return 0;
  std::uint64_t j = (n - mo.a) / mo.b;
  if (allowance && j >= *allowance) return 0;
  return 1;
}

// Sum over i+j == t of A[i]*B[j], skipping factors at index `self` (used when
// d == 0, where the skipped entries are zero anyway because a >= 1).
inline BigInt convolve_at(const std::vector<BigInt>& A, const std::vector<BigInt>& B,
                          unsigned t, unsigned self) {
  BigInt acc = 0;
  for (unsigned i = 0; i <= t; ++i) {
    if (i == self || t - i == self) continue;
    acc += A[i] * B[t - i];
  }
  return acc;
}

inline std::vector<BigInt> all_terms_vec(const SizeModel& mo, unsigned N) {
  std::vector<BigInt> L(static_cast<std::size_t>(N) + 1);
  for (unsigned n = 0; n <= N; ++n) {
    BigInt v = variable_source(mo, n, std::nullopt);
    if (n >= mo.c) v += L[n - mo.c];
    if (n >= mo.d) v += convolve_at(L, L, n - mo.d, mo.d == 0 ? n : N + 1);
    L[n] = std::move(v);
  }
  return L;
}

// Smallest level m' >= m at which every term of size <= N - c*(m' - m) is
// m'-open (a variable of index m'+1 alone would already be too large).
inline unsigned open_cutoff_level(const SizeModel& mo, unsigned m, unsigned N) {
  std::uint64_t level = m;
  for (;;) {
    std::uint64_t spent = mo.c * (level - m);
    if (spent > N) return static_cast<unsigned>(level);
    if (std::uint64_t{mo.a} + std::uint64_t{mo.b} * level > N - spent)
      return static_cast<unsigned>(level);
    ++level;
  }
}

// Open-term coefficients at levels m..top; level m' is truncated at
// N - c*(m' - m).  Above `top` the open-term series agrees with all_terms.
inline std::vector<std::vector<BigInt>> open_terms_ladder(const SizeModel& mo, unsigned m,
                                                          unsigned N,
                                                          const std::vector<BigInt>& all) {
  unsigned top = open_cutoff_level(mo, m, N);
  std::vector<std::vector<BigInt>> levels(top - m + 1);
  {
    std::uint64_t spent = std::uint64_t{mo.c} * (top - m);
    unsigned T = spent > N ? 0 : N - static_cast<unsigned>(spent);
    levels[top - m].assign(all.begin(), all.begin() + T + 1);
  }
  for (unsigned level = top; level-- > m;) {
    unsigned T = N - mo.c * (level - m);
    const auto& next = levels[level - m + 1];
    auto& cur = levels[level - m];
    cur.resize(static_cast<std::size_t>(T) + 1);
    for (unsigned n = 0; n <= T; ++n) {
      BigInt v = variable_source(mo, n, level);
      if (n >= mo.c) v += next[n - mo.c];
      if (n >= mo.d) v += convolve_at(cur, cur, n - mo.d, mo.d == 0 ? n : T + 1);
      cur[n] = std::move(v);
    }
  }
  return levels;
}

// Bounded-index coefficients at levels lo..max(lo, h), all truncated at N.
// Level h is the self-contained family; levels above h coincide with it.
inline std::vector<std::vector<BigInt>> bounded_index_ladder(const SizeModel& mo, unsigned lo,
                                                             unsigned h, unsigned N) {
  unsigned base = lo < h ? lo : h;
  std::vector<std::vector<BigInt>> levels(h - base + 1);
  {
    auto& Lh = levels[h - base];
    Lh.resize(static_cast<std::size_t>(N) + 1);
    for (unsigned n = 0; n <= N; ++n) {
      BigInt v = variable_source(mo, n, h);
      if (n >= mo.c) v += Lh[n - mo.c];
      if (n >= mo.d) v += convolve_at(Lh, Lh, n - mo.d, mo.d == 0 ? n : N + 1);
      Lh[n] = std::move(v);
    }
  }
  for (unsigned level = h; level-- > base;) {
    const auto& next = levels[level - base + 1];
    auto& cur = levels[level - base];
    cur.resize(static_cast<std::size_t>(N) + 1);
    for (unsigned n = 0; n <= N; ++n) {
      BigInt v = variable_source(mo, n, level);
      if (n >= mo.c) v += next[n - mo.c];
      if (n >= mo.d) v += convolve_at(cur, cur, n - mo.d, mo.d == 0 ? n : N + 1);
      cur[n] = std::move(v);
    }
  }
  return levels;
}

// Shared driver for the two excess surrogates: the recurrence is linear in
// the unknown series, with a per-level companion factor (all_terms plus the
// relevant open-term surrogate).  Level m' is truncated at N - c*(m' - m)
// and is identically zero once a + b*m' exceeds that truncation.
//
// companion(level, j) must return the j-th coefficient of the companion sum
// at `level`, for j <= the level's truncation.
template <class Companion>
std::vector<std::vector<BigInt>> excess_ladder(const SizeModel& mo, unsigned m, unsigned N,
                                               Companion&& companion) {
  unsigned top = open_cutoff_level(mo, m, N);
  std::vector<std::vector<BigInt>> levels(top - m + 1);
  {
    std::uint64_t spent = std::uint64_t{mo.c} * (top - m);
    unsigned T = spent > N ? 0 : N - static_cast<unsigned>(spent);
    levels[top - m].assign(T + 1, BigInt(0));
  }
  std::vector<BigInt> factor;
  for (unsigned level = top; level-- > m;) {
    unsigned T = N - mo.c * (level - m);
    factor.resize(static_cast<std::size_t>(T) + 1);
    for (unsigned j = 0; j <= T; ++j) factor[j] = companion(level, j);
    const auto& next = levels[level - m + 1];
    auto& cur = levels[level - m];
    cur.resize(static_cast<std::size_t>(T) + 1);
    for (unsigned n = 0; n <= T; ++n) {
      BigInt v = 0;
      if (n >= mo.a && (n - mo.a) % mo.b == 0 && (n - mo.a) / mo.b >= level) v = 1;
      if (n >= mo.c) v += next[n - mo.c];
      if (n >= mo.d) v += convolve_at(cur, factor, n - mo.d, mo.d == 0 ? n : T + 1);
      cur[n] = std::move(v);
    }
  }
  return levels;
}

inline std::vector<std::vector<BigInt>> excess_lower_ladder(const SizeModel& mo, unsigned m,
                                                            unsigned h, unsigned N,
                                                            const std::vector<BigInt>& all) {
  auto bounded = bounded_index_ladder(mo, m, h, N);
  unsigned base = m < h ? m : h;
  return excess_ladder(mo, m, N, [&](unsigned level, unsigned j) {
    const auto& lh = bounded[level < h ? level - base : h - base];
    return all[j] + lh[j];
  });
}

}  // namespace detail

inline void require_valid(const SizeModel& mo) {
  validate_model(mo.a, mo.b, mo.c, mo.d);
}

/// Coefficients of the counting series of all terms, up to size N.
inline CoeffSeries term_count_series(const SizeModel& mo, unsigned N) {
  require_valid(mo);
  return CoeffSeries{mo, Family::all_terms, 0, 0, 0, detail::all_terms_vec(mo, N)};
}

/// Coefficients of the counting series of m-open terms, up to size N.
inline CoeffSeries open_term_series(const SizeModel& mo, unsigned m, unsigned N) {
  require_valid(mo);
  auto all = detail::all_terms_vec(mo, N);
  auto levels = detail::open_terms_ladder(mo, m, N, all);
  return CoeffSeries{mo, Family::open_terms, m, 0, 0, std::move(levels.front())};
}

/// Difference series all_terms - open_terms; every entry is >= 0.
inline CoeffSeries excess_series(const SizeModel& mo, unsigned m, unsigned N) {
  require_valid(mo);
  auto all = detail::all_terms_vec(mo, N);
  auto open = detail::open_terms_ladder(mo, m, N, all).front();
  for (unsigned n = 0; n <= N; ++n) {
    all[n] -= open[n];
    if (all[n] < 0) throw std::logic_error("excess coefficient went negative");
  }
  return CoeffSeries{mo, Family::excess, m, 0, 0, std::move(all)};
}

/// Coefficients of m-open terms whose variable indices are bounded by h.
inline CoeffSeries bounded_index_series(const SizeModel& mo, unsigned m, unsigned h,
                                        unsigned N) {
  require_valid(mo);
  if (h == 0) throw std::invalid_argument("index bound h must be >= 1");
  auto levels = detail::bounded_index_ladder(mo, m, h, N);
  return CoeffSeries{mo, Family::bounded_index, m, h, 0,
                     std::move(levels[m < h ? 0 : levels.size() - 1])};
}

/// Lower excess surrogate: the excess recurrence with its open-term factor
/// replaced by the bounded-index series.  Pointwise <= excess_series.
inline CoeffSeries excess_lower_series(const SizeModel& mo, unsigned m, unsigned h,
                                       unsigned N) {
  require_valid(mo);
  if (h == 0) throw std::invalid_argument("index bound h must be >= 1");
  auto all = detail::all_terms_vec(mo, N);
  auto levels = detail::excess_lower_ladder(mo, m, h, N, all);
  return CoeffSeries{mo, Family::excess_lower, m, h, 0, std::move(levels.front())};
}

/// Upper excess surrogate: the open-term factor is replaced by
/// all_terms - excess_lower below level H and by all_terms above it.
/// Pointwise >= excess_series.
inline CoeffSeries excess_upper_series(const SizeModel& mo, unsigned m, unsigned h,
                                       unsigned H, unsigned N) {
  require_valid(mo);
  if (h == 0 || H == 0) throw std::invalid_argument("index bounds h, H must be >= 1");
  auto all = detail::all_terms_vec(mo, N);
  auto lower = detail::excess_lower_ladder(mo, m, h, N, all);
  auto levels = detail::excess_ladder(mo, m, N, [&](unsigned level, unsigned j) {
    BigInt v = 2 * all[j];
    if (level < H && level - m < lower.size()) v -= lower[level - m][j];
    return v;
  });
  return CoeffSeries{mo, Family::excess_upper, m, h, H, std::move(levels.front())};
}

}  // namespace lamcount
