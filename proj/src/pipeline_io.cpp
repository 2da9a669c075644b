#include "qgls/pipeline_io.hpp"

#include <set>
#include <string>

namespace qgls {

namespace {

[[noreturn]] void semantic(const std::string& message) {
    throw Error(ErrorCode::SemanticError, message);
}

void check_keys(const Json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            semantic("unknown key '" + item.key() + "' in " + where);
}

const Json& require_key(const Json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) semantic(where + " is missing required key '" + key + "'");
    return obj.at(key);
}

std::string require_string(const Json& value, const std::string& where) {
    if (!value.is_string()) semantic(where + " must be a string");
    return value.get<std::string>();
}

double require_number(const Json& value, const std::string& where) {
    if (!value.is_number()) semantic(where + " must be a number");
    return value.get<double>();
}

Complex parse_complex(const Json& value, const std::string& where) {
    if (!value.is_array() || value.size() != 2)
        semantic(where + " must be a [re, im] pair");
    return Complex(require_number(value[0], where), require_number(value[1], where));
}

Matrix parse_matrix(const Json& value, const std::string& where) {
    if (!value.is_array() || value.empty()) semantic(where + " must be a non-empty array of rows");
    const Index rows = static_cast<Index>(value.size());
    Index cols = -1;
    Matrix m;
    for (Index r = 0; r < rows; ++r) {
        const Json& row = value[static_cast<size_t>(r)];
        if (!row.is_array()) semantic(where + " row " + std::to_string(r) + " must be an array");
        if (cols < 0) {
            cols = static_cast<Index>(row.size());
            m.resize(rows, cols);
        }
        if (static_cast<Index>(row.size()) != cols)
            semantic(where + " rows have inconsistent lengths");
        for (Index c = 0; c < cols; ++c)
            m(r, c) = parse_complex(row[static_cast<size_t>(c)],
                                    where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    if (rows != cols) semantic(where + " must be square");
    return m;
}

InputSpec parse_input(const Json& obj, Index modes) {
    if (!obj.is_object()) semantic("'input' must be an object");
    std::string kind = require_string(require_key(obj, "'input'", "kind"), "'input.kind'");
    InputSpec input;
    if (kind == "coherent") {
        check_keys(obj, "'input'", {"kind", "alpha"});
        input.kind = InputSpec::Kind::Coherent;
    } else if (kind == "displaced_thermal") {
        check_keys(obj, "'input'", {"kind", "alpha", "nbar"});
        input.kind = InputSpec::Kind::DisplacedThermal;
    } else {
        semantic("unknown input kind '" + kind + "'");
    }

    const Json& alpha = require_key(obj, "'input'", "alpha");
    if (!alpha.is_array() || static_cast<Index>(alpha.size()) != modes)
        semantic("'input.alpha' must list one [re, im] pair per mode");
    input.alpha.resize(modes);
    for (Index k = 0; k < modes; ++k)
        input.alpha(k) = parse_complex(alpha[static_cast<size_t>(k)], "'input.alpha'");

    if (input.kind == InputSpec::Kind::DisplacedThermal) {
        const Json& nbar = require_key(obj, "'input'", "nbar");
        if (!nbar.is_array() || static_cast<Index>(nbar.size()) != modes)
            semantic("'input.nbar' must list one occupation per mode");
        input.nbar.resize(modes);
        for (Index k = 0; k < modes; ++k) {
            input.nbar(k) = require_number(nbar[static_cast<size_t>(k)], "'input.nbar'");
            if (input.nbar(k) < 0.0) semantic("'input.nbar' entries must be >= 0");
        }
    }
    return input;
}

ElementSpec parse_element(const Json& obj, size_t index, Index modes, double tol) {
    const std::string where = "element " + std::to_string(index);
    if (!obj.is_object()) semantic(where + " must be an object");
    std::string kind = require_string(require_key(obj, where, "kind"), where + ".kind");

    ElementSpec element;
    if (kind == "loss") {
        element.kind = ElementSpec::Kind::Loss;
        check_keys(obj, where, {"kind", "t", "matrix", "modes"});
        if (obj.contains("t") == obj.contains("matrix"))
            semantic(where + " (loss) needs exactly one of 't' or 'matrix'");
        if (obj.contains("t")) {
            element.scalar = true;
            element.value = require_number(obj.at("t"), where + ".t");
        } else {
            element.matrix = parse_matrix(obj.at("matrix"), where + ".matrix");
        }
    } else if (kind == "gain") {
        element.kind = ElementSpec::Kind::Gain;
        check_keys(obj, where, {"kind", "g", "matrix", "modes"});
        if (obj.contains("g") == obj.contains("matrix"))
            semantic(where + " (gain) needs exactly one of 'g' or 'matrix'");
        if (obj.contains("g")) {
            element.scalar = true;
            element.value = require_number(obj.at("g"), where + ".g");
        } else {
            element.matrix = parse_matrix(obj.at("matrix"), where + ".matrix");
        }
    } else if (kind == "unitary") {
        element.kind = ElementSpec::Kind::Unitary;
        check_keys(obj, where, {"kind", "matrix", "modes"});
        element.matrix = parse_matrix(require_key(obj, where, "matrix"), where + ".matrix");
    } else {
        semantic(where + " has unknown kind '" + kind + "'");
    }

    const Index dim = element.dimension();
    if (obj.contains("modes")) {
        const Json& binding = obj.at("modes");
        if (!binding.is_array() || static_cast<Index>(binding.size()) != dim)
            semantic(where + ".modes must list one field mode per device port");
        for (const Json& entry : binding) {
            if (!entry.is_number_integer()) semantic(where + ".modes entries must be integers");
            element.modes.push_back(entry.get<Index>());
        }
    } else {
        for (Index k = 0; k < dim; ++k) element.modes.push_back(k);
    }
    std::set<Index> distinct(element.modes.begin(), element.modes.end());
    if (static_cast<Index>(distinct.size()) != dim || *distinct.begin() < 0 ||
        *distinct.rbegin() >= modes)
        semantic(where + ".modes must be distinct and within [0, " + std::to_string(modes) + ")");

    try {
        element.to_device(tol); // admissibility gate
    } catch (const Error& e) {
        semantic(where + " (" + kind + "): " + e.what());
    }
    return element;
}

} // namespace

PipelineSpec parse_pipeline(const std::string& text, double tol) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, e.what());
    }
    if (!root.is_object())
        throw Error(ErrorCode::SemanticError, "pipeline document must be a JSON object");
    check_keys(root, "pipeline", {"modes", "omega", "input", "elements"});

    PipelineSpec pipeline;
    const Json& modes = require_key(root, "pipeline", "modes");
    if (!modes.is_number_integer() || modes.get<Index>() < 1)
        semantic("'modes' must be a positive integer");
    pipeline.modes = modes.get<Index>();

    if (root.contains("omega")) {
        pipeline.omega = require_number(root.at("omega"), "'omega'");
        if (!(pipeline.omega > 0.0)) semantic("'omega' must be positive");
    }

    pipeline.input = parse_input(require_key(root, "pipeline", "input"), pipeline.modes);

    if (root.contains("elements")) {
        const Json& elements = root.at("elements");
        if (!elements.is_array()) semantic("'elements' must be an array");
        for (size_t i = 0; i < elements.size(); ++i)
            pipeline.elements.push_back(parse_element(elements[i], i, pipeline.modes, tol));
    }
    return pipeline;
}

IndexProfile parse_index_profile(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, e.what());
    }
    if (!root.is_object()) semantic("profile document must be a JSON object");
    check_keys(root, "profile", {"samples"});
    const Json& samples = require_key(root, "profile", "samples");
    if (!samples.is_array()) semantic("'samples' must be an array");

    IndexProfile profile;
    for (size_t i = 0; i < samples.size(); ++i) {
        const Json& sample = samples[i];
        const std::string where = "sample " + std::to_string(i);
        if (!sample.is_object()) semantic(where + " must be an object");
        check_keys(sample, where, {"x", "n"});
        double x = require_number(require_key(sample, where, "x"), where + ".x");
        Complex n = parse_complex(require_key(sample, where, "n"), where + ".n");
        profile.samples.emplace_back(x, n);
    }
    return profile;
}

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json real_matrix_to_json(const RealMatrix& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Json to_json(const ValidationReport& report) {
    return Json{{"constraint_residual", report.constraint_residual},
                {"singular_min", report.singular_min},
                {"singular_max", report.singular_max},
                {"sigma_consistent", report.sigma_consistent},
                {"passed", report.passed},
                {"tolerance", report.tolerance}};
}

Json to_json(const PTReport& report) {
    return Json{{"max_pt_residual", report.max_pt_residual},
                {"max_real_asymmetry", report.max_real_asymmetry},
                {"max_imag_symmetry", report.max_imag_symmetry},
                {"real_symmetric", report.real_symmetric},
                {"imag_antisymmetric", report.imag_antisymmetric},
                {"pt_symmetric", report.pt_symmetric},
                {"tolerance", report.tolerance}};
}

Json to_json(const ComparisonReport& report) {
    Json points = Json::array();
    for (const auto& [point, diff] : report.wigner_points)
        points.push_back(Json{{"point", complex_to_json(point)}, {"diff", diff}});
    return Json{{"mean_diff", report.mean_diff},
                {"covariance_diff", report.covariance_diff},
                {"purity_diff", report.purity_diff},
                {"wigner_diff", report.wigner_diff},
                {"wigner_points", std::move(points)},
                {"passed", report.passed},
                {"tolerances", Json{{"mean", report.tolerances.mean},
                                    {"covariance", report.tolerances.covariance},
                                    {"purity", report.tolerances.purity},
                                    {"wigner", report.tolerances.wigner}}}};
}

Json to_json(const WignerGrid& grid) {
    return Json{{"mode", grid.mode},
                {"x_min", grid.window.x_min},
                {"x_max", grid.window.x_max},
                {"nx", grid.window.nx},
                {"p_min", grid.window.p_min},
                {"p_max", grid.window.p_max},
                {"np", grid.window.np},
                {"values", grid.values}};
}

Json to_json(const TruncationReport& report) {
    return Json{{"trace_deficit", report.trace_deficit},
                {"boundary_mass", report.boundary_mass},
                {"max_occupied", report.max_occupied}};
}

Json simulate_report(const PipelineSpec& pipeline, SimulateOptions options, double tol) {
    GaussianState final_state = run_pipeline(pipeline, tol);

    Json mean = Json::array();
    for (Index k = 0; k < final_state.modes(); ++k)
        mean.push_back(complex_to_json(final_state.mean()(k)));

    Json photons = Json::array(), inferred = Json::array();
    for (Index k = 0; k < final_state.modes(); ++k) {
        photons.push_back(mean_photon(final_state, k));
        inferred.push_back((4.0 * final_state.covariance()(2 * k, 2 * k) - 1.0) / 2.0);
    }

    Json report{{"modes", pipeline.modes},
                {"omega", pipeline.omega},
                {"units", options.si_units ? "si" : "natural"},
                {"mean", std::move(mean)},
                {"covariance", real_matrix_to_json(final_state.covariance())},
                {"purity", purity(final_state)},
                {"mean_photon", std::move(photons)},
                {"inferred_nbar", std::move(inferred)}};

    Json gains = Json::array();
    for (size_t i = 0; i < pipeline.elements.size(); ++i) {
        const ElementSpec& element = pipeline.elements[i];
        if (element.kind != ElementSpec::Kind::Gain || !element.scalar) continue;
        double g = element.value;
        Json entry{{"element", i}, {"g", g}, {"n_th", thermal_occupation(g)}};
        double omega = options.si_units ? options.omega_si : pipeline.omega;
        if (g > 1.0) {
            TemperatureOptions temperature{false, options.si_units};
            entry["T_eff"] = effective_temperature(1.0 / g, omega, temperature);
            if (options.literal_paper_formula) {
                temperature.literal_paper_formula = true;
                entry["T_eff_literal_paper"] = effective_temperature(1.0 / g, omega, temperature);
            }
        } else {
            entry["T_eff"] = 0.0;
            if (options.literal_paper_formula) entry["T_eff_literal_paper"] = 0.0;
        }
        gains.push_back(std::move(entry));
    }
    if (!gains.empty()) report["gain_elements"] = std::move(gains);
    return report;
}

} // namespace qgls
