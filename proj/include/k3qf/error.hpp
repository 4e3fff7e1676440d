#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3qf {

enum class Errc {
  zero_input,
  not_an_odd_prime,
  not_a_prime,
  search_exhausted,
  invalid_constraint,
  degenerate,
  not_symmetric,
  dimension_mismatch,
  not_realizable,
  malformed_invariants,
  zero_scale,
  nonpositive_degree,
  not_primitive,
  degenerate_complement,
  rank_too_small,
  not_on_quadric,
  not_positive,
  parse,
};

constexpr std::string_view to_string(Errc e) noexcept {
  switch (e) {
    case Errc::zero_input: return "ZeroInput";
    case Errc::not_an_odd_prime: return "NotAnOddPrime";
    case Errc::not_a_prime: return "NotAPrime";
    case Errc::search_exhausted: return "SearchExhausted";
    case Errc::invalid_constraint: return "InvalidConstraint";
    case Errc::degenerate: return "Degenerate";
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_realizable: return "NotRealizable";
    case Errc::malformed_invariants: return "MalformedInvariants";
    case Errc::zero_scale: return "ZeroScale";
    case Errc::nonpositive_degree: return "NonpositiveDegree";
    case Errc::not_primitive: return "NotPrimitive";
    case Errc::degenerate_complement: return "DegenerateComplement";
    case Errc::rank_too_small: return "RankTooSmall";
    case Errc::not_on_quadric: return "NotOnQuadric";
    case Errc::not_positive: return "NotPositive";
    case Errc::parse: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace k3qf
