#pragma once

#include <stdexcept>
#include <string>

namespace infodecomp {

// Every failure the library can raise, split into two families: rejected
// input (bad poset, bad probabilities, bad request) and solver breakdown
// (a projection that could not be completed to tolerance).  Callers that
// map failures to process exit codes can use is_solver_error() to tell
// the families apart.
enum class errc {
  // input and model validation
  duplicate_label,
  unknown_label,
  unknown_element,
  cycle_detected,
  multiple_minimal_elements,
  redundant_cover_edge,
  non_positive_probability,
  not_normalized,
  inconsistent_eta,
  poset_mismatch,
  poset_too_large,
  not_a_chain,
  invalid_dof,
  join_does_not_exist,
  threshold_too_low,
  empty_model,
  no_bottom,
  invalid_argument,
  parse_error,
  // numerical solver failures
  no_feasible_bracket,
  max_iterations,
  max_outer_iterations,
  no_convergence,
};

constexpr const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::duplicate_label: return "duplicate_label";
    case errc::unknown_label: return "unknown_label";
    case errc::unknown_element: return "unknown_element";
    case errc::cycle_detected: return "cycle_detected";
    case errc::multiple_minimal_elements: return "multiple_minimal_elements";
    case errc::redundant_cover_edge: return "redundant_cover_edge";
    case errc::non_positive_probability: return "non_positive_probability";
    case errc::not_normalized: return "not_normalized";
    case errc::inconsistent_eta: return "inconsistent_eta";
    case errc::poset_mismatch: return "poset_mismatch";
    case errc::poset_too_large: return "poset_too_large";
    case errc::not_a_chain: return "not_a_chain";
    case errc::invalid_dof: return "invalid_dof";
    case errc::join_does_not_exist: return "join_does_not_exist";
    case errc::threshold_too_low: return "threshold_too_low";
    case errc::empty_model: return "empty_model";
    case errc::no_bottom: return "no_bottom";
    case errc::invalid_argument: return "invalid_argument";
    case errc::parse_error: return "parse_error";
    case errc::no_feasible_bracket: return "no_feasible_bracket";
    case errc::max_iterations: return "max_iterations";
    case errc::max_outer_iterations: return "max_outer_iterations";
    case errc::no_convergence: return "no_convergence";
  }
  return "unknown";
}

constexpr bool is_solver_error(errc code) noexcept {
  switch (code) {
    case errc::no_feasible_bracket:
    case errc::max_iterations:
    case errc::max_outer_iterations:
    case errc::no_convergence:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace infodecomp
