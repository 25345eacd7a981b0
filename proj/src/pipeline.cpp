#include "pea/pipeline.hpp"

#include <sstream>

namespace pea {

namespace {

Json fingerprint_to_json(const Fingerprint& fp) {
    Json j;
    j["dim_s"] = fp.dim_s;
    j["dim_s_plus"] = fp.dim_s_plus;
    j["sig_s"] = Json::array({fp.sig_s.first, fp.sig_s.second});
    j["sig_s_plus"] = Json::array({fp.sig_s_plus.first, fp.sig_s_plus.second});
    return j;
}

Json catalog_to_json(const std::vector<CatalogEntry>& entries) {
    Json arr = Json::array();
    for (const auto& ce : entries) {
        Json j;
        j["kind"] = ce.kind;
        j["parameter"] = ce.parameter;
        j["symmetry_ok"] = ce.symmetry_ok;
        j["nondegenerate"] = ce.nondegenerate;
        arr.push_back(j);
    }
    return arr;
}

Json manifolds_to_json(const std::vector<ManifoldCheck>& checks) {
    Json arr = Json::array();
    for (const auto& mc : checks) {
        Json j;
        j["description"] = mc.description;
        j["passed"] = mc.passed;
        j["samples"] = mc.samples;
        arr.push_back(j);
    }
    return arr;
}

std::vector<Mat> witness_hints(const MetricGerm& germ) {
    std::vector<Mat> hints;
    if (germ.Jbar) hints.push_back(*germ.Jbar);
    if (germ.meta.contains("witnesses"))
        for (const auto& [key, val] : germ.meta.at("witnesses").items()) {
            (void)key;
            hints.push_back(mat_from_json(val));
        }
    return hints;
}

// shared tail of both classification paths, starting from the holonomy span
void classify_core(PipelineResult& out, const MatrixSpan& span, const Mat& gram,
                   const PipelineConfig& cfg, bool germ_derived, const std::vector<Mat>& hints) {
    FixedSpace e0 = fixed_space(span, gram);
    out.e0 = e0;

    EndoAlgebra e = commutant(span, gram);
    out.algebra = e;
    out.report["commutant_dim"] = e.dim();
    out.report["fixed_space"] = Json{{"dim", e0.dim()},
                                     {"isotropic", e0.isotropic},
                                     {"decomposable_warning", e0.decomposable_warning}};

    out.n0 = n0_ideal(e, span, e0);
    bool n0_square_zero = true;
    for (const auto& a : out.n0)
        for (const auto& b : out.n0) n0_square_zero &= (a * b).is_zero();
    out.report["n0"] = Json{{"dim", static_cast<int>(out.n0.size())}, {"square_zero", n0_square_zero}};

    out.rad = radical(e);
    out.report["radical_dim"] = static_cast<int>(out.rad.size());

    Rng probe_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    bool decomposable = decomposability_probe(e, probe_rng, cfg.samples) || e0.decomposable_warning;
    out.report["decomposability_probe"] = decomposable;

    Fingerprint fp = fingerprint(e, out.rad);
    out.fp = fp;
    out.report["fingerprint"] = fingerprint_to_json(fp);

    TypeLabel label = classify(fp);
    if (decomposable) {
        out.label = TypeLabel::Unclassified;
        out.label_text = "decomposable - out of classification scope";
        out.report["label"] = out.label_text;
        out.exit_code = 3;
        return;
    }
    if (label == TypeLabel::QuaternionicPair && germ_derived)
        throw std::logic_error(
            "pipeline error: a germ-derived commutant classified as the quaternionic pair, "
            "which the curvature identities forbid");
    out.label = label;
    out.label_text = label_code(label);
    out.report["label"] = out.label_text;
    out.report["label_name"] = label_name(label);
    if (label == TypeLabel::Unclassified) {
        out.exit_code = 3;
        return;
    }

    if (label != TypeLabel::QuaternionicPair) {
        Rng lift_rng(cfg.seed);
        out.structures = lift_structures(e, out.rad, label, lift_rng, hints);
        Json sj;
        for (const auto& [name, m] : out.structures.mats) sj[name] = mat_to_json(m);
        out.report["structures"] = sj;
        out.report["structure_manifolds"] = manifolds_to_json(structure_manifolds(e, out.structures, label));
        out.catalog = parallel_tensor_catalog(e, out.rad, out.structures, label);
        out.report["catalog"] = catalog_to_json(out.catalog);
    } else {
        out.report["structures"] = Json::object();
        out.report["note"] =
            "quaternionic pair: commutant of a non-holonomy span; no germ realizes it";
    }
}

}  // namespace

Json verification_to_json(const VerificationReport& rep) {
    Json j;
    j["seed"] = rep.seed;
    j["samples"] = rep.samples;
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["passed"] = c.passed;
        cj["skipped"] = c.skipped;
        if (!c.note.empty()) cj["note"] = c.note;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["all_passed"] = rep.all_passed();
    return j;
}

PipelineResult classify_germ(const MetricGerm& germ, const PipelineConfig& cfg) {
    PipelineResult out;
    out.report["config"] =
        Json{{"deriv_order", cfg.deriv_order}, {"seed", cfg.seed}, {"samples", cfg.samples}};
    out.report["input"] = Json{{"d", germ.d},
                               {"signature", Json::array({germ.signature.first, germ.signature.second})},
                               {"kind", germ.kind == MetricGerm::Kind::Real ? "real" : "complex"},
                               {"K", germ.K}};

    int cap = std::min(cfg.deriv_order, germ.K - 2);
    if (germ.meta.contains("certified_deriv_order"))
        cap = std::min(cap, germ.meta.at("certified_deriv_order").get<int>());
    if (cap < 0) throw InvalidGerm("jet order too small for curvature");
    out.report["config"]["deriv_order_used"] = cap;

    CurvatureAtOrigin curv = curvature(germ, cap);
    HolonomyResult hol = holonomy_span(curv);
    out.holonomy = hol;
    out.report["holonomy"] = Json{{"dim", hol.span.dim()},
                                  {"dims_by_order", hol.dims_by_order},
                                  {"order_probed", hol.order_probed},
                                  {"stabilization_order", hol.stabilization_order},
                                  {"stabilized", hol.stabilized}};

    if (hol.span.dim() == 0) {
        out.label = TypeLabel::Unclassified;
        out.label_text = "flat - out of classification scope";
        out.report["label"] = out.label_text;
        out.exit_code = 3;
        return out;
    }

    classify_core(out, hol.span, germ.g0(), cfg, /*germ_derived=*/true, witness_hints(germ));
    if (out.exit_code == 3) return out;

    if (cfg.with_verification) {
        VerificationReport vr = run_verification(germ, curv, *out.algebra, out.rad, *out.e0,
                                                 out.structures, cfg.seed, cfg.samples);
        out.verification = vr;
        out.report["verification"] = verification_to_json(vr);
        if (!vr.all_passed())
            throw std::logic_error("verification suite failed: " + out.report["verification"].dump());
        if (vr.any_skipped() && out.exit_code == 0) out.exit_code = 2;
    }
    return out;
}

PipelineResult classify_span(const MatrixSpan& span, const Mat& gram, const PipelineConfig& cfg) {
    PipelineResult out;
    out.report["config"] =
        Json{{"deriv_order", cfg.deriv_order}, {"seed", cfg.seed}, {"samples", cfg.samples}};
    out.report["input"] = Json{{"d", gram.rows()}, {"span_dim", span.dim()}};

    // close the span under brackets before taking commutants
    MatrixSpan closed;
    closed.d = span.d;
    SpanBuilder sb(span.d * span.d);
    for (const auto& m : span.basis) sb.insert_mat(m);
    bool grew = true;
    while (grew) {
        grew = false;
        auto mats = sb.basis_mats();
        for (size_t i = 0; i < mats.size() && !grew; ++i)
            for (size_t j = i + 1; j < mats.size() && !grew; ++j)
                if (sb.insert_mat(commutator(mats[i], mats[j]))) grew = true;
    }
    closed.basis = sb.basis_mats();
    closed.bracket_closed = true;
    out.report["holonomy"] = Json{{"dim", closed.dim()}, {"bracket_closure_added", closed.dim() - span.dim()}};

    classify_core(out, closed, gram, cfg, /*germ_derived=*/false, {});
    return out;
}

Json flag_report_to_json(const FlagReport& rep) {
    Json j;
    j["delta"] = rep.delta;
    j["case"] = rep.complex_case ? "complex" : (rep.eps == -1 ? "eps=-1" : "eps=+1");
    if (rep.eps == -1 && !rep.complex_case) j["pq"] = Json::array({rep.p, rep.q});
    j["dim_W"] = rep.dim_W;
    j["characters"] = rep.characters;
    j["dim_V"] = rep.dim_V;
    j["cartan_bound"] = rep.cartan_bound;
    j["involutive"] = rep.involutive;
    j["last_nonzero_character"] = Json::array({rep.last_nonzero_index, rep.last_nonzero_value});
    j["horizontal_integral"] = rep.horizontal_integral_ok;
    j["relations_hold"] = rep.relations_hold;
    j["relations_independent"] = rep.relations_independent;
    j["relation_count"] = rep.relation_count;
    j["field_note"] = rep.complex_case ? "dimensions over the complexified scalars" : "real dimensions";
    return j;
}

namespace {

EndoAlgebra algebra_from_structures(const Mat& g, const StructureSet& s) {
    std::vector<Mat> gens;
    for (const auto& [k, m] : s.mats) gens.push_back(m);
    return algebra_generated_by(g, gens);
}

}  // namespace

Json table_artifact(int which) {
    Json out;
    std::vector<std::pair<TypeLabel, std::pair<int, int>>> rows = {
        {TypeLabel::Generic, {2, 1}},
        {TypeLabel::ComplexRiemannian, {2, 2}},
        {TypeLabel::Kaehler, {2, 2}},
        {TypeLabel::ParaKaehler, {2, 2}},
        {TypeLabel::ComplexKaehler, {2, 2}},
        {TypeLabel::HyperKaehler, {4, 4}},
        {TypeLabel::ParaHyperKaehler, {2, 2}},
        {TypeLabel::ComplexHyperKaehler, {4, 4}},
    };
    if (which == 1 || which == 2) {
        // generator relations of every type verified on the normal-form
        // matrices, plus the fingerprint of the algebra they span
        Json arr = Json::array();
        for (const auto& [label, sig] : rows) {
            NormalFormFrame f = normal_form_frame(label, sig.first, sig.second);
            EndoAlgebra e = algebra_from_structures(f.g, f.structures);
            verify_structure_relations(e, label, f.structures);
            auto rad = radical(e);
            Fingerprint fp = fingerprint(e, rad);
            if (!(fp == expected_fingerprint(label)))
                throw std::logic_error("table: normal-form fingerprint mismatch for " + label_code(label));
            Json row;
            row["label"] = label_code(label);
            row["signature"] = Json::array({sig.first, sig.second});
            row["d"] = f.g.rows();
            row["dim_s"] = fp.dim_s;
            row["fingerprint"] = fingerprint_to_json(fp);
            row["relations_verified"] = true;
            Json structs = Json::array();
            for (const auto& [k, m] : f.structures.mats) structs.push_back(k);
            row["structures"] = structs;
            arr.push_back(row);
        }
        // alternate paraKaehler gauge related by an explicit basis change
        {
            int p = 2;
            Mat Q = parakaehler_gauge_change(p);
            Mat ipp = Mat(2 * p, 2 * p);
            for (int i = 0; i < p; ++i) ipp.at(i, i) = Scalar(1);
            for (int i = p; i < 2 * p; ++i) ipp.at(i, i) = Scalar(-1);
            Mat lp(2 * p, 2 * p);
            for (int i = 0; i < p; ++i) {
                lp.at(i, p + i) = Scalar(1);
                lp.at(p + i, i) = Scalar(1);
            }
            auto qinv = inverse(Q);
            bool gauge_ok = qinv && (*qinv * lp * Q == ipp) && (Q.transpose() * ipp * Q == Scalar(2) * lp);
            if (!gauge_ok) throw std::logic_error("table: paraKaehler gauge change failed");
            Json row;
            row["label"] = "2' (alternate gauge)";
            row["note"] = "Q^{-1} L_p Q = I_{p,p} and Q^T I_{p,p} Q = 2 L_p";
            row["verified"] = true;
            arr.push_back(row);
        }
        out["normal_forms"] = arr;
    }
    if (which == 3) {
        // catalog rows instantiated on the normal forms
        Json arr = Json::array();
        for (const auto& [label, sig] : rows) {
            if (label == TypeLabel::Generic) continue;
            NormalFormFrame f = normal_form_frame(label, sig.first, sig.second);
            EndoAlgebra e = algebra_from_structures(f.g, f.structures);
            auto rad = radical(e);
            auto catalog = parallel_tensor_catalog(e, rad, f.structures, label);
            Json row;
            row["label"] = label_code(label);
            row["entries"] = catalog_to_json(catalog);
            arr.push_back(row);
        }
        out["catalog"] = arr;
    }
    if (which == 4) {
        // holonomy-group dimensions of the types row
        Json arr = Json::array();
        auto add = [&](const std::string& label, const std::string& group, int dim) {
            arr.push_back(Json{{"label", label}, {"group", group}, {"dim", dim}});
        };
        add("1", "SO0(p,q), dim d(d-1)/2 at d=4", 6);
        add("1C", "SO(p,C), real dim p(p-1) at p=3", 6);
        add("2", "U(p,q), dim (p+q)^2 at d=4", 4);
        add("2'", "GL0(p,R), dim p^2 at d=4", 4);
        add("2C", "GL(p,C), real dim 2p^2 at d=8", 8);
        add("3", "Sp(p,q), dim (p+q)(2(p+q)+1) at d=4", 3);
        add("3'", "Sp(2p,R), dim p(2p+1) at d=4", 3);
        add("3C", "Sp(2p,C), real dim 2p(2p+1) at d=8", 6);
        out["types_row"] = arr;
    }
    return out;
}

}  // namespace pea
