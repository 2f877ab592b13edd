#include <catch2/catch_amalgamated.hpp>

#include "lamcount/bounds.hpp"
#include "lamcount/reference_data.hpp"
#include "lamcount/series.hpp"

using namespace lamcount;

namespace {

Real abs_r(const Real& x) { return x < 0 ? Real(-x) : x; }

void check_row(BoundsEngine<Real>& engine, unsigned h, double lc, double ld, double uc,
               double ud) {
  auto rep = engine.asymptotic_bounds(0, h, h);
  INFO("h=" << h);
  CHECK(abs_r(rep.excess_lower.constant - Real(lc)) < 1e-6);
  CHECK(abs_r(rep.excess_lower.sqrt_coeff - Real(ld)) < 1e-6);
  CHECK(abs_r(rep.excess_upper.constant - Real(uc)) < 1e-6);
  CHECK(abs_r(rep.excess_upper.sqrt_coeff - Real(ud)) < 1e-6);
}

}  // namespace

TEST_CASE("surrogate expansions match the reference rows") {
  BoundsEngine<Real> engine(natural_model(), 30);
  check_row(engine, 1, 0.855448, -1.153959, 1.086200, -3.803686);
  check_row(engine, 7, 0.938055, -1.498647, 0.942443, -2.152790);
  check_row(engine, 10, 0.940172, -1.509525, 0.940931, -2.136799);
  check_row(engine, 15, 0.940594, -1.511701, 0.940630, -2.133619);
}

TEST_CASE("supercriticality guards hold at the singularity") {
  for (auto model : {natural_model(), binary_model(), less_natural_model()}) {
    BoundsEngine<Real> engine(model, 30);
    const auto& all = engine.all();
    Real rho = all.rho;
    Real rd = ipow(rho, model.d);
    for (unsigned i = 0; i <= 6; ++i) {
      Real li = eval_bounded_index_gf(model, i, 6u, rho);
      CHECK(1 - rd * (all.constant + li) > 0);
    }
    Real lh = eval_bounded_index_gf(model, 6, 6u, rho);
    CHECK(1 - ipow(rho, model.b + model.c) - rd * (all.constant + lh) > 0);
    CHECK(1 - ipow(rho, model.b + model.c) - 2 * rd * all.constant > 0);
  }
}

TEST_CASE("asymptotic constants and triviality thresholds") {
  BoundsEngine<Real> engine(natural_model(), 30);

  auto rep15 = engine.asymptotic_bounds(0, 15, 15);
  CHECK(abs_r(rep15.C_lower - Real(reference::natural_C_lower)) < 5e-3);
  CHECK(abs_r(rep15.C_upper - Real(reference::natural_C_upper)) < 5e-3);
  CHECK_FALSE(rep15.lower_trivial);
  CHECK(rep15.C_lower > 0);
  CHECK(rep15.C_lower <= rep15.C_upper);

  for (unsigned h = 1; h <= 7; ++h) {
    auto rep = engine.asymptotic_bounds(0, h, h);
    INFO("h=" << h);
    CHECK(rep.lower_trivial);
  }
  for (unsigned h = 8; h <= 15; ++h) {
    auto rep = engine.asymptotic_bounds(0, h, h);
    INFO("h=" << h);
    CHECK_FALSE(rep.lower_trivial);
  }

  // upper-minus-lower is a nonnegative multiple of the surrogate gap
  for (auto model : {natural_model(), binary_model()}) {
    BoundsEngine<Real> eng(model, 30);
    for (unsigned h : {2u, 5u, 9u}) {
      auto rep = eng.asymptotic_bounds(0, h, h);
      CHECK(rep.C_upper - rep.C_lower >= 0);
      CHECK(rep.C_upper > 0);
    }
  }
}

TEST_CASE("quadratic propagation step") {
  BoundsEngine<Real> engine(natural_model(), 40);
  const auto& all = engine.all();

  // the all-terms expansion is a fixed point of the unlimited-source step,
  // up to the certified accuracy of rho (40 digits here)
  PuiseuxPair<Real> fixed{all.constant, all.sqrt_coeff};
  PuiseuxPair<Real> next = engine.quadratic_step_unbounded(fixed);
  CHECK(abs_r(next.constant - all.constant) < Real("1e-40"));
  CHECK(abs_r(next.sqrt_coeff - all.sqrt_coeff) < Real("1e-40"));

  // an analytic tail stays analytic
  PuiseuxPair<Real> analytic{all.constant, Real(0)};
  CHECK(engine.quadratic_step(3, analytic).sqrt_coeff == 0);

  // a wildly wrong tail constant moves the surrogate singularity
  PuiseuxPair<Real> bad{Real(50), Real(-1)};
  CHECK_THROWS_AS(engine.quadratic_step(0, bad), NumericError);
}

TEST_CASE("improved bounds reproduce the published constants") {
  BoundsEngine<Real> nat(natural_model(), 30);
  auto rep = nat.improved_bounds(0, 13, 13, 13);
  CHECK(abs_r(rep.C_lower / Real(reference::natural_improved_C_lower) - 1) < 1e-8);
  CHECK(abs_r(rep.C_upper / Real(reference::natural_improved_C_upper) - 1) < 1e-8);
  CHECK(rep.C_lower <= rep.C_upper);
  CHECK(rep.agreement_digits >= 6);

  BoundsEngine<Real> bin(binary_model(), 30);
  auto repb = bin.improved_bounds(0, 13, 13, 13);
  CHECK(abs_r(repb.C_lower - Real(reference::binary_improved_C_lower)) < 1e-6);
  CHECK(abs_r(repb.C_upper - Real(reference::binary_improved_C_upper)) < 1e-6);
}

TEST_CASE("the improvement gap shrinks as the seed level grows") {
  BoundsEngine<Real> engine(natural_model(), 30);
  Real previous_gap = -1;
  for (unsigned M = 8; M <= 13; ++M) {
    auto rep = engine.improved_bounds(0, M, M, M);
    Real gap = rep.C_upper - rep.C_lower;
    CHECK(gap > 0);
    if (previous_gap >= 0) CHECK(gap < previous_gap);
    previous_gap = gap;
  }
  // and it beats the plain bounds by orders of magnitude
  auto plain = engine.asymptotic_bounds(0, 15, 15);
  auto improved = engine.improved_bounds(0, 13, 13, 13);
  CHECK(improved.C_upper - improved.C_lower <
        (plain.C_upper - plain.C_lower) / 1000);
}

TEST_CASE("bounds stay coherent on off-preset models") {
  // weightless application, weightless zero, and an exactly dyadic singularity
  for (auto model : {validate_model(1, 1, 1, 0), validate_model(0, 2, 1, 1),
                     validate_model(3, 1, 1, 2)}) {
    BoundsEngine<Real> engine(model, 30);
    auto rep = engine.improved_bounds(0, 10, 10, 10);
    INFO("model (" << model.a << "," << model.b << "," << model.c << "," << model.d << ")");
    CHECK(rep.C_lower > 0);
    CHECK(rep.C_lower <= rep.C_upper);
    CHECK(rep.agreement_digits >= 2);
  }
}

TEST_CASE("surrogate expansion trends across the table") {
  BoundsEngine<Real> engine(natural_model(), 30);
  PuiseuxPair<Real> prev_low, prev_up;
  for (unsigned h = 1; h <= 15; ++h) {
    auto low = engine.excess_lower_expansion(0, h);
    auto up = engine.excess_upper_expansion(0, h, h);
    CHECK(abs_r(low.sqrt_coeff) <= abs_r(up.sqrt_coeff));
    if (h > 1) {
      CHECK(low.constant > prev_low.constant);        // increasing in h
      CHECK(up.constant < prev_up.constant);          // decreasing in H
      CHECK(low.sqrt_coeff < prev_low.sqrt_coeff);    // decreasing
      CHECK(up.sqrt_coeff > prev_up.sqrt_coeff);      // increasing
    }
    prev_low = low;
    prev_up = up;
  }
  CHECK(abs_r(prev_low.constant - prev_up.constant) < 1e-4);  // common limit
}

TEST_CASE("closed-form expansions match the coefficient growth") {
  // n^{3/2} rho^n [z^n] of the lower surrogate approaches sqrt_coeff/Gamma(-1/2)
  auto nat = natural_model();
  BoundsEngine<Real> engine(nat, 30);
  Real rho = engine.all().rho;
  auto pair = engine.excess_lower_expansion(0, 2);
  Real limit = pair.sqrt_coeff / gamma_minus_half<Real>();
  auto coeffs = excess_lower_series(nat, 0, 2, 200).coeffs;
  Real n200(200);
  Real ratio = n200 * sqrt(n200) * ipow(rho, 200) * Real(coeffs[200]);
  CHECK(abs_r(ratio / limit - 1) < Real("0.05"));
}
