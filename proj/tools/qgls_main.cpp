#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "qgls/pipeline_io.hpp"

namespace {

using namespace qgls;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError:
        case ErrorCode::SemanticError:
        case ErrorCode::BadGrid:
        case ErrorCode::EmptyWindow:
        case ErrorCode::AsymmetricSampling:
            return 2;
        case ErrorCode::TruncationOverflow:
            return 4;
        case ErrorCode::IoError:
            return 1;
        default:
            return 3; // numerical inadmissibility
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof()) throw Error(ErrorCode::IoError, "failed reading '" + path + "'");
    return buffer.str();
}

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
    out << content;
    if (!out.good()) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

struct RangeSpec {
    double lo = 0.0, hi = 0.0;
    Index n = 0;
};

RangeSpec parse_range(const std::string& text, const std::string& flag) {
    RangeSpec range;
    size_t first = text.find(':');
    size_t second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw Error(ErrorCode::BadGrid, flag + " must look like lo:hi:n, got '" + text + "'");
    try {
        range.lo = std::stod(text.substr(0, first));
        range.hi = std::stod(text.substr(first + 1, second - first - 1));
        range.n = static_cast<Index>(std::stoll(text.substr(second + 1)));
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadGrid, flag + " must look like lo:hi:n, got '" + text + "'");
    }
    if (range.n < 1) throw Error(ErrorCode::BadGrid, flag + " needs at least one sample");
    if (range.hi < range.lo) throw Error(ErrorCode::BadGrid, flag + " range is reversed");
    return range;
}

std::string stage_path(const std::string& base, Index stage) {
    std::filesystem::path path(base);
    std::filesystem::path stem = path.stem();
    std::filesystem::path ext = path.extension();
    if (ext.empty()) ext = ".csv";
    return (path.parent_path() / (stem.string() + "_stage" + std::to_string(stage) + ext.string()))
        .string();
}

int cmd_validate(const std::string& file, const std::string& pt_file, double tol) {
    PipelineSpec pipeline = parse_pipeline(read_file(file), tol);
    bool all_passed = true;
    for (size_t i = 0; i < pipeline.elements.size(); ++i) {
        const ElementSpec& element = pipeline.elements[i];
        ValidationReport report = validate_device(element.to_device(tol), tol);
        all_passed = all_passed && report.passed;
        std::cout << "element " << i << " (" << element.describe() << "): residual "
                  << format_double(report.constraint_residual) << ", singular values ["
                  << format_double(report.singular_min) << ", "
                  << format_double(report.singular_max) << "], "
                  << (report.passed ? "pass" : "FAIL") << '\n';
    }
    if (pipeline.elements.empty()) std::cout << "identity pipeline, nothing to validate\n";

    if (!pt_file.empty()) {
        PTReport report = check_pt_profile(parse_index_profile(read_file(pt_file)), tol);
        std::cout << (report.pt_symmetric ? "PT-symmetric" : "not PT-symmetric")
                  << " (max residual " << format_double(report.max_pt_residual) << ")\n"
                  << to_json(report).dump(2) << '\n';
        all_passed = all_passed && report.pt_symmetric;
    }
    return all_passed ? 0 : 2;
}

int cmd_simulate(const std::string& file, const std::string& out, bool literal, bool si,
                 double omega_hz, double tol) {
    PipelineSpec pipeline = parse_pipeline(read_file(file), tol);
    SimulateOptions options;
    options.literal_paper_formula = literal;
    options.si_units = si;
    options.omega_si = 2.0 * std::numbers::pi * omega_hz;
    write_text(out, simulate_report(pipeline, options, tol).dump(2) + "\n");
    return 0;
}

int cmd_wigner(const std::string& file, const std::string& stage, const std::string& xrange,
               const std::string& prange, Index mode, const std::string& format,
               const std::string& out, double tol) {
    PipelineSpec pipeline = parse_pipeline(read_file(file), tol);
    std::vector<GaussianState> stages = run_pipeline_stages(pipeline, tol);

    std::vector<Index> wanted;
    if (stage == "all") {
        for (Index k = 0; k < static_cast<Index>(stages.size()); ++k) wanted.push_back(k);
    } else {
        Index k = -1;
        try {
            k = static_cast<Index>(std::stoll(stage));
        } catch (const std::exception&) {
            throw Error(ErrorCode::SemanticError, "--stage must be 'all' or an index");
        }
        if (k < 0 || k >= static_cast<Index>(stages.size()))
            throw Error(ErrorCode::SemanticError,
                        "stage " + stage + " out of range; pipeline has " +
                            std::to_string(stages.size()) + " stages");
        wanted.push_back(k);
    }

    RangeSpec rx = parse_range(xrange, "--xrange");
    RangeSpec rp = parse_range(prange, "--prange");
    Window window{rx.lo, rx.hi, rx.n, rp.lo, rp.hi, rp.n};

    if (format == "json") {
        Json doc{{"file", file}, {"stages", Json::array()}};
        for (Index k : wanted) {
            Json entry = to_json(wigner(stages[static_cast<size_t>(k)], mode, window));
            entry["stage"] = k;
            doc["stages"].push_back(std::move(entry));
        }
        write_text(out, doc.dump(2) + "\n");
    } else if (format == "csv") {
        for (Index k : wanted) {
            std::ostringstream csv;
            wigner(stages[static_cast<size_t>(k)], mode, window).write_csv(csv);
            write_text(wanted.size() > 1 ? stage_path(out, k) : out, csv.str());
        }
    } else {
        throw Error(ErrorCode::BadGrid, "--format must be csv or json");
    }
    return 0;
}

int cmd_oracle(const std::string& file, Index dim, const std::string& out, double compare_tol,
               double leak_bound, double tol) {
    PipelineSpec pipeline = parse_pipeline(read_file(file), tol);
    GaussianState gaussian = run_pipeline(pipeline, tol);
    FockState fock = run_pipeline_fock(pipeline, dim, leak_bound);
    CompareTolerances tolerances{compare_tol, compare_tol, compare_tol, compare_tol};
    ComparisonReport report = compare(gaussian, fock, tolerances);

    Json doc = to_json(report);
    doc["dim"] = dim;
    doc["truncation"] = to_json(truncation_report(fock));
    write_text(out, doc.dump(2) + "\n");
    return report.passed ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum light through lossy and amplifying multiport devices"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags like --tol may follow the subcommand

    double tol = global_tolerance();
    app.add_option("--tol", tol, "numerical tolerance (default QGLS_TOL or 1e-10)")
        ->capture_default_str();

    auto* validate = app.add_subcommand("validate", "check pipeline admissibility");
    std::string v_file, v_pt;
    validate->add_option("file", v_file, "pipeline JSON file")->required();
    validate->add_option("--pt-profile", v_pt, "refractive-index profile JSON to test");

    auto* simulate = app.add_subcommand("simulate", "run a pipeline, report the output state");
    std::string s_file, s_out = "-";
    bool s_literal = false, s_si = false;
    double s_omega_hz = 0.0;
    simulate->add_option("file", s_file, "pipeline JSON file")->required();
    simulate->add_option("-o,--output", s_out, "report path ('-' = stdout)");
    simulate->add_flag("--literal-paper-formula", s_literal,
                       "also report the variant T_eff with ln as a factor");
    auto* si_flag = simulate->add_flag("--si", s_si, "report T_eff in kelvin");
    auto* omega_opt =
        simulate->add_option("--omega-hz", s_omega_hz, "optical frequency in Hz (with --si)");
    si_flag->needs(omega_opt);
    omega_opt->needs(si_flag);

    auto* wigner_cmd = app.add_subcommand("wigner", "sample Wigner functions along the pipeline");
    std::string w_file, w_stage = "all", w_xrange, w_prange, w_format = "csv", w_out;
    Index w_mode = 0;
    wigner_cmd->add_option("file", w_file, "pipeline JSON file")->required();
    wigner_cmd->add_option("--stage", w_stage, "'all' or a stage index (0 = input)");
    wigner_cmd->add_option("--xrange", w_xrange, "x grid as lo:hi:n")->required();
    wigner_cmd->add_option("--prange", w_prange, "p grid as lo:hi:n")->required();
    wigner_cmd->add_option("--mode", w_mode, "field mode to sample");
    wigner_cmd->add_option("--format", w_format, "csv (one file per stage) or json");
    wigner_cmd->add_option("-o,--output", w_out, "output path")->required();

    auto* oracle = app.add_subcommand("oracle", "cross-check against the truncated Fock engine");
    std::string o_file, o_out = "-";
    Index o_dim = 0;
    double o_compare_tol = 1e-5, o_leak = kDefaultLeakBound;
    oracle->add_option("file", o_file, "pipeline JSON file")->required();
    oracle->add_option("--dim", o_dim, "Fock truncation dimension")->required();
    oracle->add_option("-o,--output", o_out, "report path ('-' = stdout)");
    oracle->add_option("--compare-tol", o_compare_tol, "comparison tolerance")
        ->capture_default_str();
    oracle->add_option("--leak-bound", o_leak, "truncation leak bound")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(v_file, v_pt, tol);
        if (app.got_subcommand(simulate))
            return cmd_simulate(s_file, s_out, s_literal, s_si, s_omega_hz, tol);
        if (app.got_subcommand(wigner_cmd))
            return cmd_wigner(w_file, w_stage, w_xrange, w_prange, w_mode, w_format, w_out, tol);
        if (app.got_subcommand(oracle))
            return cmd_oracle(o_file, o_dim, o_out, o_compare_tol, o_leak, tol);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
