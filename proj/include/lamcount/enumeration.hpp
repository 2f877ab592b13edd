#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lamcount/size_model.hpp"
#include "lamcount/term.hpp"

namespace lamcount {

using BigInt = boost::multiprecision::cpp_int;

class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(std::uint64_t cap)
      : std::runtime_error("term enumeration budget exceeded (cap " +
                           std::to_string(cap) + " terms)") {}
};

/// Every term of size <= n_max, bucketed by exact size.  Terms of size s are
/// built structurally: the single variable candidate for s, abstractions
/// over the bucket at s - c, applications over bucket pairs.  Subterms are
/// shared.  Throws BudgetExceededError once more than term_cap terms exist.
inline std::vector<std::vector<TermPtr>> enumerate_terms(const SizeModel& model,
                                                         unsigned n_max,
                                                         std::uint64_t term_cap = 20'000'000) {
  std::vector<std::vector<TermPtr>> by_size(n_max + 1);
  std::uint64_t built = 0;
  for (unsigned s = 0; s <= n_max; ++s) {
    auto& bucket = by_size[s];
    if (s >= model.a && (s - model.a) % model.b == 0) {
      unsigned k = (s - model.a) / model.b + 1;  // the one index with this size
      bucket.push_back(Term::var(k));
    }
    if (s >= model.c) {
      for (const TermPtr& t : by_size[s - model.c]) bucket.push_back(Term::abs(t));
    }
    if (s >= model.d) {
      unsigned rest = s - model.d;
      for (unsigned i = 0; i <= rest; ++i) {
        if (by_size[i].empty() || by_size[rest - i].empty()) continue;
        for (const TermPtr& f : by_size[i])
          for (const TermPtr& x : by_size[rest - i]) bucket.push_back(Term::app(f, x));
      }
    }
    built += bucket.size();
    if (built > term_cap) throw BudgetExceededError(term_cap);
  }
  return by_size;
}

/// How many terms of each size have each openness value, obtained by
/// exhaustively building every term up to a size bound and measuring it with
/// term_size and openness.  This is the ground-truth oracle for the
/// coefficient recurrences: it never touches a generating-function identity.
class OpennessHistogram {
 public:
  OpennessHistogram(const SizeModel& model, unsigned n_max,
                    std::uint64_t term_cap = 20'000'000)
      : model_(model) {
    auto by_size = enumerate_terms(model, n_max, term_cap);
    counts_.assign(n_max + 1, {});
    for (unsigned s = 0; s <= n_max; ++s) {
      for (const TermPtr& t : by_size[s]) {
        if (term_size(*t, model) != s)
          throw std::logic_error("enumerated term has unexpected size");
        unsigned o = openness(*t);
        auto& row = counts_[s];
        if (row.size() <= o) row.resize(o + 1, 0);
        ++row[o];
      }
    }
  }

  const SizeModel& model() const noexcept { return model_; }
  unsigned n_max() const noexcept { return static_cast<unsigned>(counts_.size()) - 1; }

  /// Number of terms of size n whose openness is exactly o.
  std::uint64_t count_exact(unsigned n, unsigned o) const {
    const auto& row = counts_.at(n);
    return o < row.size() ? row[o] : 0;
  }

  /// Number of m-open terms of size n (all terms when m is empty).
  std::uint64_t count(unsigned n, std::optional<unsigned> m) const {
    const auto& row = counts_.at(n);
    std::uint64_t total = 0;
    for (unsigned o = 0; o < row.size(); ++o) {
      if (!m || o <= *m) total += row[o];
    }
    return total;
  }

 private:
  SizeModel model_;
  std::vector<std::vector<std::uint64_t>> counts_;
};

/// Exact counts of m-open terms for every size 0..n_max (all terms when m is
/// empty), by exhaustive enumeration.  Throws BudgetExceededError when more
/// than term_cap terms would have to be built.
inline std::vector<BigInt> oracle_counts(const SizeModel& model,
                                         std::optional<unsigned> m, unsigned n_max,
                                         std::uint64_t term_cap = 20'000'000) {
  OpennessHistogram hist(model, n_max, term_cap);
  std::vector<BigInt> out(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) out[n] = hist.count(n, m);
  return out;
}

}  // namespace lamcount
