#pragma once

#include <stdexcept>
#include <string>

namespace otlck {

// Every rejection the library produces carries one of these codes, so
// callers (and the CLI) can map failures to labeled diagnostics without
// parsing message text.
enum class errc {
    non_monic,
    non_integer_coeffs,
    not_squarefree,
    rational_root,
    no_real_embedding,
    degree_too_small,
    zero_polynomial,
    field_mismatch,
    zero_element,
    reducible_minpoly,
    precision_exhausted,
    not_a_unit,
    not_totally_positive,
    invalid_index,
    dimension_mismatch,
    full_rank_sublattice,
    divisor_mismatch,
    hypothesis_failure,
    parse_error,
};

const char* errc_label(errc code);

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, std::string(errc_label(code)) + ": " + what);
}

} // namespace otlck
