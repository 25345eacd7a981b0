// command line front end: classify germs, generate them, run the involutivity
// test and regenerate the classification tables as machine-checked artifacts

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pea/pipeline.hpp"

namespace {

using namespace pea;

void write_out(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        os << j.dump(2) << "\n";
    }
}

Json read_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidGerm("cannot open input file: " + path);
    Json j;
    try {
        j = Json::parse(is);
    } catch (const std::exception& ex) {
        throw InvalidGerm(std::string("malformed JSON: ") + ex.what());
    }
    return j;
}

std::pair<int, int> parse_signature(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--signature expects p,q");
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

MatrixSpan span_from_json(const Json& j, Mat& gram) {
    gram = mat_from_json(j.at("gram"));
    MatrixSpan span;
    span.d = gram.rows();
    for (const auto& b : j.at("basis")) span.basis.push_back(mat_from_json(b));
    return span;
}

int run_classify(const std::string& input, const PipelineConfig& cfg, const std::string& out_path,
                 bool verification_only) {
    Json j = read_json(input);
    PipelineResult res;
    if (j.contains("basis") && j.contains("gram")) {
        Mat gram;
        MatrixSpan span = span_from_json(j, gram);
        res = classify_span(span, gram, cfg);
    } else {
        MetricGerm germ = germ_from_json(j);
        res = classify_germ(germ, cfg);
    }
    res.report["exit_code"] = res.exit_code;
    write_out(verification_only && res.report.contains("verification") ? res.report["verification"]
                                                                       : res.report,
              out_path);
    return res.exit_code;
}

int run_generate(const std::string& label_code_str, std::pair<int, int> sig, std::uint64_t seed,
                 int jet_order, const std::string& spec_path, const std::string& out_path) {
    MetricGerm germ;
    if (!spec_path.empty()) {
        Json spec = read_json(spec_path);
        std::string cas = spec.at("case").get<std::string>();
        if (cas == "kaehler") {
            germ = germ_from_kaehler_potential(jet_from_json(spec.at("potential")));
        } else if (cas == "parakaehler") {
            germ = germ_from_parakaehler_potential(jet_from_json(spec.at("potential")));
        } else if (cas == "omega_h") {
            auto oh = germ_omega_h(spec.at("delta").get<int>(),
                                   spec.value("epsilon", -1),
                                   spec.value("p", spec.at("delta").get<int>()),
                                   spec.value("q", 0),
                                   spec.value("complex", false),
                                   spec.value("jet_order", 3),
                                   spec.value("seed", 1));
            germ = std::move(oh.germ);
        } else {
            throw InvalidGerm("spec case must be kaehler, parakaehler or omega_h");
        }
        write_out(germ_to_json(germ), out_path);
        return 0;
    }
    if (label_code_str == "H+H") {
        NegativeControl nc = hh_negative_control();
        Json j;
        j["gram"] = mat_to_json(nc.gram);
        Json basis = Json::array();
        for (const auto& m : nc.span.basis) basis.push_back(mat_to_json(m));
        j["basis"] = basis;
        j["meta"] = Json{{"generator", "quaternionic_pair_span"},
                         {"note", "span input, not a germ"}};
        write_out(j, out_path);
        return 0;
    }
    if (label_code_str == "plane_wave") {
        germ = germ_plane_wave(jet_order);
        write_out(germ_to_json(germ), out_path);
        return 0;
    }
    if (label_code_str == "einstein") {
        germ = germ_constant_curvature(sig.first + sig.second ? sig.first + sig.second : 3,
                                       Rational(1), jet_order);
        write_out(germ_to_json(germ), out_path);
        return 0;
    }
    auto label = label_from_code(label_code_str);
    if (!label) throw InvalidGerm("unknown label code: " + label_code_str);
    germ = generate_generic(*label, sig.first, sig.second, seed);
    write_out(germ_to_json(germ), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parallel endomorphism algebras of pseudo-Riemannian metric germs"};
    app.require_subcommand(1);

    std::string input, out_path, label, spec_path, signature = "0,0";
    std::uint64_t seed = 1;
    int deriv_order = 2, jet_order = 4, samples = 8, delta = 1, epsilon = -1, which = 0;
    bool complex_case = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "deterministic seed recorded in the report");
        cmd->add_option("--out", out_path, "output file (stdout when absent)");
    };

    auto* c_classify = app.add_subcommand("classify", "classify a germ (or span) JSON file");
    c_classify->add_option("input", input, "germ JSON file")->required();
    c_classify->add_option("--deriv-order", deriv_order, "covariant derivative cap");
    c_classify->add_option("--samples", samples, "randomized samples per check");
    add_common(c_classify);

    auto* c_verify = app.add_subcommand("verify", "run the identity suites on a germ");
    c_verify->add_option("input", input, "germ JSON file")->required();
    c_verify->add_option("--deriv-order", deriv_order, "covariant derivative cap");
    c_verify->add_option("--samples", samples, "randomized samples per check");
    add_common(c_verify);

    auto* c_generate = app.add_subcommand("generate", "emit a germ of a requested type");
    c_generate->add_option("--label", label, "type code: 1, 1C, 2, 2', 2C, 3, 3', 3C, H+H");
    c_generate->add_option("--signature", signature, "signature p,q of the metric");
    c_generate->add_option("--jet-order", jet_order, "truncation order of the produced jets");
    c_generate->add_option("--spec", spec_path, "potential / moment spec JSON");
    add_common(c_generate);

    auto* c_cartan = app.add_subcommand("cartan", "characters and integral-element dimension");
    c_cartan->add_option("--delta", delta, "half quaternionic dimension (<= 3)");
    c_cartan->add_option("--epsilon", epsilon, "-1 or +1");
    c_cartan->add_flag("--complex", complex_case, "complexified case");
    c_cartan->add_option("--signature", signature, "p,q for the eps=-1 base point");
    add_common(c_cartan);

    auto* c_table = app.add_subcommand("table", "regenerate checked classification tables");
    c_table->add_option("--which", which, "1|2: normal forms, 3: tensor catalog, 4: types row");
    add_common(c_table);

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig cfg;
        cfg.deriv_order = deriv_order;
        cfg.seed = seed;
        cfg.samples = samples;
        if (c_classify->parsed()) return run_classify(input, cfg, out_path, false);
        if (c_verify->parsed()) return run_classify(input, cfg, out_path, true);
        if (c_generate->parsed()) {
            auto sig = parse_signature(signature);
            return run_generate(label, sig, seed, jet_order, spec_path, out_path);
        }
        if (c_cartan->parsed()) {
            if (delta < 1 || delta > 3) {
                std::cerr << "usage error: delta must be between 1 and 3\n";
                return 4;
            }
            auto sig = parse_signature(signature);
            if (sig.first + sig.second == 0) sig = {delta, 0};
            FlagReport rep = cartan_test(delta, epsilon, sig.first, sig.second, complex_case);
            write_out(flag_report_to_json(rep), out_path);
            return rep.involutive && rep.relations_hold ? 0 : 1;
        }
        if (c_table->parsed()) {
            Json j;
            if (which == 0) {
                j["normal_forms"] = table_artifact(1)["normal_forms"];
                j["catalog"] = table_artifact(3)["catalog"];
                j["types_row"] = table_artifact(4)["types_row"];
            } else {
                j = table_artifact(which);
            }
            write_out(j, out_path);
            return 0;
        }
    } catch (const pea::InvalidGerm& ex) {
        std::cerr << "invalid input: " << ex.what() << "\n";
        return 4;
    } catch (const pea::LiftError& ex) {
        std::cerr << "classification inconsistency: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
