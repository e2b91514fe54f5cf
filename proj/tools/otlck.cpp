// otlck: certified decisions about locally conformally Kaehler structures
// on Oeljeklaus-Toma manifolds, driven by structured text inputs.
//
// Subcommands:
//   signature      field signature trichotomy (does any LCK metric exist?)
//   lck-check      modulus-equality criterion for the given unit subgroup
//   audit          desk-scale non-existence audit over an exponent box
//   lemma-witness  lattice vector avoiding all proper-rank sublattices
//   rank           certified rank of a unit subgroup modulo torsion
//   log-embedding  certified logarithmic embedding vectors
//
// Exit codes: 0 success/holds, 1 criterion fails, 2 validation or
// hypothesis error, 3 indeterminate at the precision cap.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "otlck/io.hpp"

namespace {

int emit(const otlck::io::RunResult& result, const std::string& output) {
    std::string text = otlck::io::render_report(result.report);
    if (output == "stdout" || output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file '" << output << "'\n";
            return 2;
        }
        out << text;
    }
    return result.exit_code;
}

int parse_failure_report(const std::string& command, const otlck::io::Options& opt,
                         const otlck::error& e, const std::string& output) {
    nlohmann::ordered_json rep;
    rep["schema"] = 1;
    rep["command"] = command;
    nlohmann::ordered_json o;
    o["precision_bits"] = opt.precision_bits;
    o["max_precision_bits"] = opt.max_precision_bits;
    o["box"] = opt.box;
    o["display_digits"] = opt.display_digits;
    rep["options"] = o;
    nlohmann::ordered_json err;
    err["code"] = otlck::errc_label(e.code());
    err["message"] = e.what();
    rep["error"] = err;
    rep["status"] = "error";
    return emit({rep, 2}, output);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified LCK admissibility decisions for Oeljeklaus-Toma data"};
    app.require_subcommand(1);

    otlck::io::Options opt;
    std::string input_path;
    std::string output = "stdout";

    auto add_common = [&](CLI::App* sub, bool wants_box) {
        sub->add_option("input", input_path, "structured text input file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--precision-bits", opt.precision_bits,
                        "target enclosure width 2^-bits (default 128)");
        sub->add_option("--max-precision-bits", opt.max_precision_bits,
                        "escalation cap before reporting indeterminate (default 16384)");
        if (wants_box)
            sub->add_option("--box", opt.box, "exponent box radius for the audit (default 2)");
        sub->add_option("--output", output, "report destination: a path, or 'stdout'");
    };

    add_common(app.add_subcommand("signature", "field signature trichotomy"), false);
    add_common(app.add_subcommand("lck-check", "modulus-equality criterion"), false);
    add_common(app.add_subcommand("audit", "non-existence mechanism audit"), true);
    add_common(app.add_subcommand("lemma-witness", "sublattice-avoiding lattice vector"), false);
    add_common(app.add_subcommand("rank", "certified unit subgroup rank"), false);
    add_common(app.add_subcommand("log-embedding", "certified log vectors"), false);

    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands().front()->get_name();
    try {
        otlck::io::InputSpec in = otlck::io::parse_input_file(input_path);
        return emit(otlck::io::run_command(command, in, opt), output);
    } catch (const otlck::error& e) {
        return parse_failure_report(command, opt, e, output);
    }
}
