#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "otlck/lckcheck.hpp"

namespace otlck::io {

// Parsed batch input. The file format is line oriented:
//
//   # comment
//   minpoly: -1 -1 0 1
//   generator: 0 1 0
//   generator: 1/2 0 -3
//   lattice: 1 0 ; 0 1
//   sublattice: 1 1
//
// minpoly lists ascending integer coefficients; generator rows list n
// exact rationals; lattice/sublattice rows are ';'-separated rational
// vectors. Parsing is strict: malformed numbers, wrong vector lengths
// and unknown keys are hard errors with line and field diagnostics.
struct InputSpec {
    std::optional<QPoly> minpoly;
    std::vector<std::vector<Rat>> generators;
    std::optional<std::vector<std::vector<Rat>>> lattice;
    std::vector<std::vector<std::vector<Rat>>> sublattices;
};

InputSpec parse_input(std::istream& in);
InputSpec parse_input_file(const std::string& path);

struct Options {
    long precision_bits = 128;
    long max_precision_bits = 16384;
    int box = 2;
    int display_digits = 30;
};

// Exit status contract: 0 success/holds, 1 criterion fails,
// 2 validation or hypothesis error, 3 indeterminate.
struct RunResult {
    nlohmann::ordered_json report;
    int exit_code = 0;
};

RunResult run_signature(const InputSpec& in, const Options& opt);
RunResult run_lck_check(const InputSpec& in, const Options& opt);
RunResult run_audit(const InputSpec& in, const Options& opt);
RunResult run_lemma_witness(const InputSpec& in, const Options& opt);
RunResult run_rank(const InputSpec& in, const Options& opt);
RunResult run_log_embedding(const InputSpec& in, const Options& opt);

// Dispatch by subcommand name ("signature", "lck-check", "audit",
// "lemma-witness", "rank", "log-embedding").
RunResult run_command(const std::string& command, const InputSpec& in, const Options& opt);

// Deterministic serialization used by the CLI: two-space indent, ordered
// keys, trailing newline. Byte-identical for identical input and options.
std::string render_report(const nlohmann::ordered_json& report);

} // namespace otlck::io
