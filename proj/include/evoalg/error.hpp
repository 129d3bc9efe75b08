#ifndef EVOALG_ERROR_HPP_
#define EVOALG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace evoalg {

enum class Errc {
  non_prime_modulus,
  reducible_modulus,
  degree_mismatch,
  division_by_zero,
  mixed_fields,
  needs_extension,
  constant_polynomial,
  infinite_field,
  singular_change,
  invalid_params,
  unsupported_key,
  budget_exceeded,
  parse_error,
};

constexpr std::string_view errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::non_prime_modulus: return "NonPrimeModulus";
    case Errc::reducible_modulus: return "ReducibleModulus";
    case Errc::degree_mismatch: return "DegreeMismatch";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::mixed_fields: return "MixedFields";
    case Errc::needs_extension: return "NeedsExtension";
    case Errc::constant_polynomial: return "ConstantPolynomial";
    case Errc::infinite_field: return "InfiniteField";
    case Errc::singular_change: return "SingularChange";
    case Errc::invalid_params: return "InvalidParams";
    case Errc::unsupported_key: return "UnsupportedKey";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

// All library failures are reported through this type; `code()` carries the
// machine-readable reason.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace evoalg

#endif  // EVOALG_ERROR_HPP_
