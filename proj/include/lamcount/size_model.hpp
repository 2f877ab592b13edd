#pragma once

#include <numeric>
#include <stdexcept>
#include <string>

namespace lamcount {

/// Reasons a weight assignment can be rejected.
enum class ModelError {
  zero_and_application_weightless,  // a + d == 0: applications of zeros would be free
  weightless_successor,             // b == 0: successor chains would be free
  weightless_abstraction,           // c == 0: abstraction chains would be free
  common_weight_factor,             // gcd(b, c, a+d) != 1
};

class ModelValidationError : public std::invalid_argument {
 public:
  ModelValidationError(ModelError code, const std::string& what)
      : std::invalid_argument(what), code_(code) {}
  ModelError code() const noexcept { return code_; }

 private:
  ModelError code_;
};

/// Weights of the four term constructors: a variable with index k costs
/// a + (k-1)*b, an abstraction adds c, an application adds d on top of
/// both operands.  Valid models keep the number of terms of every size
/// finite and give the counting series a unique dominant singularity.
struct SizeModel {
  unsigned a = 1;  // zero (base of a variable)
  unsigned b = 1;  // successor (one step of a variable index)
  unsigned c = 1;  // abstraction
  unsigned d = 1;  // application

  friend bool operator==(const SizeModel&, const SizeModel&) = default;
};

inline SizeModel validate_model(unsigned a, unsigned b, unsigned c, unsigned d) {
  if (a + d == 0)
    throw ModelValidationError(ModelError::zero_and_application_weightless,
                               "invalid size model: a + d must be >= 1");
  if (b == 0)
    throw ModelValidationError(ModelError::weightless_successor,
                               "invalid size model: b must be >= 1");
  if (c == 0)
    throw ModelValidationError(ModelError::weightless_abstraction,
                               "invalid size model: c must be >= 1");
  if (std::gcd(std::gcd(b, c), a + d) != 1)
    throw ModelValidationError(ModelError::common_weight_factor,
                               "invalid size model: gcd(b, c, a+d) must be 1");
  return SizeModel{a, b, c, d};
}

// The three weight assignments commonly used in the literature.
inline SizeModel natural_model() { return validate_model(1, 1, 1, 1); }
inline SizeModel less_natural_model() { return validate_model(0, 1, 1, 2); }
inline SizeModel binary_model() { return validate_model(2, 1, 2, 2); }

}  // namespace lamcount
