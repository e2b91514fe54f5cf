#include "otlck/errors.hpp"

namespace otlck {

const char* errc_label(errc code) {
    switch (code) {
    case errc::non_monic:
        return "non-monic";
    case errc::non_integer_coeffs:
        return "non-integer-coefficients";
    case errc::not_squarefree:
        return "not-squarefree";
    case errc::rational_root:
        return "rational-root";
    case errc::no_real_embedding:
        return "no-real-embedding";
    case errc::degree_too_small:
        return "degree-too-small";
    case errc::zero_polynomial:
        return "zero-polynomial";
    case errc::field_mismatch:
        return "field-mismatch";
    case errc::zero_element:
        return "zero-element";
    case errc::reducible_minpoly:
        return "reducible-minimal-polynomial";
    case errc::precision_exhausted:
        return "precision-exhausted";
    case errc::not_a_unit:
        return "not-a-unit";
    case errc::not_totally_positive:
        return "not-totally-positive";
    case errc::invalid_index:
        return "invalid-index";
    case errc::dimension_mismatch:
        return "dimension-mismatch";
    case errc::full_rank_sublattice:
        return "full-rank-sublattice";
    case errc::divisor_mismatch:
        return "divisor-mismatch";
    case errc::hypothesis_failure:
        return "hypothesis-failure";
    case errc::parse_error:
        return "parse-error";
    }
    return "unknown-error";
}

} // namespace otlck
