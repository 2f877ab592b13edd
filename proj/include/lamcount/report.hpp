#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "lamcount/bounds.hpp"
#include "lamcount/real.hpp"
#include "lamcount/series.hpp"
#include "lamcount/singularity.hpp"

namespace lamcount {

using Json = nlohmann::ordered_json;

inline Json model_to_json(const SizeModel& mo) {
  return Json{{"a", mo.a}, {"b", mo.b}, {"c", mo.c}, {"d", mo.d}};
}

inline const char* family_name(Family f) {
  switch (f) {
    case Family::all_terms: return "all_terms";
    case Family::open_terms: return "open_terms";
    case Family::excess: return "excess";
    case Family::bounded_index: return "bounded_index";
    case Family::excess_lower: return "excess_lower";
    case Family::excess_upper: return "excess_upper";
  }
  return "?";
}

inline Json series_to_json(const CoeffSeries& s) {
  Json rows = Json::array();
  for (unsigned n = 0; n < s.coeffs.size(); ++n)
    rows.push_back(Json{{"n", n}, {"count", s.coeffs[n].str()}});
  Json j{{"model", model_to_json(s.model)}, {"family", family_name(s.family)}};
  if (s.family != Family::all_terms) j["m"] = s.m;
  if (s.h != 0) j["h"] = s.h;
  if (s.H != 0) j["H"] = s.H;
  j["N"] = s.truncation();
  j["counts"] = rows;
  return j;
}

inline void series_to_csv(const CoeffSeries& s, std::ostream& os) {
  os << "n,count\n";
  for (unsigned n = 0; n < s.coeffs.size(); ++n) os << n << ',' << s.coeffs[n].str() << '\n';
}

template <class R>
Json singularity_report_to_json(const SizeModel& mo, const GfExpansion<R>& exp,
                                unsigned print_digits,
                                std::optional<std::pair<unsigned, R>> bounded = {}) {
  Json j{{"model", model_to_json(mo)},
         {"rho", to_decimal_string(exp.rho, print_digits)},
         {"rho_digits", exp.digits},
         {"a_inf", to_decimal_string(exp.constant, print_digits)},
         {"b_inf", to_decimal_string(exp.sqrt_coeff, print_digits)},
         {"b_inf_magnitude", to_decimal_string(-exp.sqrt_coeff, print_digits)},
         {"residual", to_decimal_string(singularity_residual(mo, exp.rho), 3)}};
  if (bounded) {
    j["h"] = bounded->first;
    j["rho_h"] = to_decimal_string(bounded->second, print_digits);
  }
  return j;
}

template <class R>
Json puiseux_pair_to_json(const PuiseuxPair<R>& p, unsigned digits) {
  return Json{{"constant", to_decimal_string(p.constant, digits)},
              {"sqrt_coeff", to_decimal_string(p.sqrt_coeff, digits)}};
}

template <class R>
Json bounds_report_to_json(const BoundsReport<R>& rep, unsigned digits) {
  Json j{{"model", model_to_json(rep.model)},
         {"m", rep.m},
         {"h", rep.h},
         {"H", rep.H},
         {"M", rep.M},
         {"rho", to_decimal_string(rep.rho, digits)},
         {"a_inf", to_decimal_string(rep.all_constant, digits)},
         {"b_inf", to_decimal_string(rep.all_sqrt_coeff, digits)},
         {"excess_lower", puiseux_pair_to_json(rep.excess_lower, digits)},
         {"excess_upper", puiseux_pair_to_json(rep.excess_upper, digits)},
         {"series_lower", puiseux_pair_to_json(rep.series_lower, digits)},
         {"series_upper", puiseux_pair_to_json(rep.series_upper, digits)},
         {"C_lower", to_decimal_string(rep.C_lower, digits)},
         {"C_upper", to_decimal_string(rep.C_upper, digits)},
         {"lower_trivial", rep.lower_trivial},
         {"agreement_digits", rep.agreement_digits}};
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

}  // namespace lamcount
