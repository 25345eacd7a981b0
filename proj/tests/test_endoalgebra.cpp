#include "doctest.h"
#include "pea/generators.hpp"
#include "pea/pipeline.hpp"
#include "pea/poly.hpp"

using namespace pea;

TEST_CASE("adjoint examples") {
    // symmetric U with euclidean g: U* = U
    Mat g = Mat::identity(2);
    Mat ginv = g;
    Mat u(2, 2);
    u.at(0, 1) = Scalar(1);
    u.at(1, 0) = Scalar(1);
    CHECK(adjoint_of(u, g, ginv) == u);

    // g = I_{1,1}, U = e1 (x) e2*: sign flip into -e2 (x) e1*
    Mat g11 = Mat::diag({Scalar(1), Scalar(-1)});
    Mat e12(2, 2);
    e12.at(0, 1) = Scalar(1);
    Mat expect(2, 2);
    expect.at(1, 0) = Scalar(-1);
    CHECK(adjoint_of(e12, g11, g11) == expect);

    // paracomplex L with g = I_{p,p}: skewadjoint
    NormalFormFrame f = normal_form_frame(TypeLabel::ParaKaehler, 2, 2);
    Mat gi = *inverse(f.g);
    CHECK(adjoint_of(f.structures.get("L"), f.g, gi) == -f.structures.get("L"));

    // involution squares to the identity
    Mat r(2, 2);
    r.at(0, 0) = Scalar(2);
    r.at(0, 1) = Scalar(3);
    r.at(1, 0) = Scalar(Rational(1, 2));
    CHECK(adjoint_of(adjoint_of(r, g11, g11), g11, g11) == r);
}

TEST_CASE("radical: scalars, nilpotent line, two independent routes") {
    // e = span(Id): radical 0
    EndoAlgebra scalars({Mat::identity(2)}, Mat::identity(2));
    CHECK(radical(scalars).empty());

    // e = span(Id, N), N^2 = 0, sigma-stable for the neutral Gram L_1
    Mat gr(2, 2);
    gr.at(0, 1) = Scalar(1);
    gr.at(1, 0) = Scalar(1);
    Mat n(2, 2);
    n.at(0, 1) = Scalar(1);
    // N* = gr^{-1} N^T gr = N for this Gram
    EndoAlgebra line({Mat::identity(2), n}, gr);
    auto rad = radical(line);
    REQUIRE(rad.size() == 1);
    CHECK(rad[0] == n);

    // kaehler commutant: radical trivial, dim s = 2
    MetricGerm k = generate_generic(TypeLabel::Kaehler, 4, 0, 1);
    auto hol = holonomy_span(curvature(k, 2));
    EndoAlgebra e = commutant(hol.span, k.g0());
    CHECK(radical(e).empty());
    CHECK(e.dim() == 2);
}

TEST_CASE("fingerprint rows match the table on normal-form algebras") {
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
    for (const auto& [label, sig] : rows) {
        CAPTURE(label_code(label));
        NormalFormFrame f = normal_form_frame(label, sig.first, sig.second);
        std::vector<Mat> gens;
        for (const auto& [k, m] : f.structures.mats) gens.push_back(m);
        EndoAlgebra e = algebra_generated_by(f.g, gens);
        auto rad = radical(e);
        CHECK(rad.empty());
        Fingerprint fp = fingerprint(e, rad);
        CHECK(fp == expected_fingerprint(label));
        CHECK(classify(fp) == label);
    }
}

TEST_CASE("classify: explicit rows and the unclassified fallback") {
    Fingerprint fp;
    fp.dim_s = 1; fp.dim_s_plus = 1; fp.sig_s = {1, 0}; fp.sig_s_plus = {1, 0};
    CHECK(classify(fp) == TypeLabel::Generic);
    fp.dim_s = 4; fp.dim_s_plus = 1; fp.sig_s = {4, 0};
    CHECK(classify(fp) == TypeLabel::HyperKaehler);
    fp.sig_s = {2, 2};
    CHECK(classify(fp) == TypeLabel::ParaHyperKaehler);
    fp.dim_s = 3;
    CHECK(classify(fp) == TypeLabel::Unclassified);
}

TEST_CASE("quaternionic pair fingerprint: brute-force oracle fixes the table row") {
    NegativeControl nc = hh_negative_control();
    EndoAlgebra e = commutant(nc.span, nc.gram);
    auto rad = radical(e);
    CHECK(rad.empty());
    Fingerprint fp = fingerprint(e, rad);
    // the derived row: dim 8, selfadjoint part 4, signatures (4,4) and (1,3)
    CHECK(fp == expected_fingerprint(TypeLabel::QuaternionicPair));
    CHECK(classify(fp) == TypeLabel::QuaternionicPair);
}

TEST_CASE("inv_sqrt_one_minus: exact on nilpotents") {
    Mat n(3, 3);
    n.at(0, 1) = Scalar(Rational(2, 3));
    n.at(1, 2) = Scalar(-3);
    Mat s = inv_sqrt_one_minus(n);
    Mat id = Mat::identity(3);
    CHECK(s * s * (id - n) == id);
    CHECK_THROWS_AS(inv_sqrt_one_minus(id), std::invalid_argument);
}

TEST_CASE("lift_structures recovers structures from bare normal-form algebras") {
    std::vector<std::pair<TypeLabel, std::pair<int, int>>> rows = {
        {TypeLabel::ComplexRiemannian, {2, 2}},
        {TypeLabel::Kaehler, {2, 2}},
        {TypeLabel::ParaKaehler, {2, 2}},
        {TypeLabel::ComplexKaehler, {2, 2}},
        {TypeLabel::HyperKaehler, {4, 4}},
        {TypeLabel::ParaHyperKaehler, {2, 2}},
        {TypeLabel::ComplexHyperKaehler, {4, 4}},
    };
    for (const auto& [label, sig] : rows) {
        CAPTURE(label_code(label));
        NormalFormFrame f = normal_form_frame(label, sig.first, sig.second);
        std::vector<Mat> gens;
        for (const auto& [k, m] : f.structures.mats) gens.push_back(m);
        EndoAlgebra e = algebra_generated_by(f.g, gens);
        auto rad = radical(e);
        Rng rng(3);
        // no hints: the lifter searches the sigma eigenspaces itself
        StructureSet s = lift_structures(e, rad, label, rng, {});
        verify_structure_relations(e, label, s);
    }
}

TEST_CASE("radical cross-orthogonality: tr(S* N) = 0 on a radical example") {
    MetricGerm pw = germ_plane_wave();
    auto hol = holonomy_span(curvature(pw, 2));
    EndoAlgebra e = commutant(hol.span, pw.g0());
    auto rad = radical(e);
    REQUIRE(!rad.empty());
    for (const auto& b : e.basis())
        for (const auto& n : rad) CHECK(e.trace_form(b, n) == Scalar(0));
}

TEST_CASE("structure manifolds: spheres, hyperboloids, finite sets") {
    {
        NormalFormFrame f = normal_form_frame(TypeLabel::HyperKaehler, 4, 0);
        std::vector<Mat> gens;
        for (const auto& [k, m] : f.structures.mats) gens.push_back(m);
        EndoAlgebra e = algebra_generated_by(f.g, gens);
        auto checks = structure_manifolds(e, f.structures, TypeLabel::HyperKaehler);
        REQUIRE(!checks.empty());
        for (const auto& c : checks) {
            CAPTURE(c.description);
            CHECK(c.passed);
        }
    }
    {
        NormalFormFrame f = normal_form_frame(TypeLabel::ParaHyperKaehler, 2, 2);
        std::vector<Mat> gens;
        for (const auto& [k, m] : f.structures.mats) gens.push_back(m);
        EndoAlgebra e = algebra_generated_by(f.g, gens);
        auto checks = structure_manifolds(e, f.structures, TypeLabel::ParaHyperKaehler);
        for (const auto& c : checks) {
            CAPTURE(c.description);
            CHECK(c.passed);
        }
    }
    {
        NormalFormFrame f = normal_form_frame(TypeLabel::ComplexHyperKaehler, 4, 4);
        std::vector<Mat> gens;
        for (const auto& [k, m] : f.structures.mats) gens.push_back(m);
        EndoAlgebra e = algebra_generated_by(f.g, gens);
        auto checks = structure_manifolds(e, f.structures, TypeLabel::ComplexHyperKaehler);
        for (const auto& c : checks) {
            CAPTURE(c.description);
            CHECK(c.passed);
        }
    }
    {
        NormalFormFrame f = normal_form_frame(TypeLabel::ComplexKaehler, 2, 2);
        std::vector<Mat> gens;
        for (const auto& [k, m] : f.structures.mats) gens.push_back(m);
        EndoAlgebra e = algebra_generated_by(f.g, gens);
        auto checks = structure_manifolds(e, f.structures, TypeLabel::ComplexKaehler);
        for (const auto& c : checks) {
            CAPTURE(c.description);
            CHECK(c.passed);
        }
    }
}

TEST_CASE("parallel tensor catalog instantiates every applicable row") {
    std::vector<std::pair<TypeLabel, std::pair<int, int>>> rows = {
        {TypeLabel::ComplexRiemannian, {2, 2}},
        {TypeLabel::Kaehler, {2, 2}},
        {TypeLabel::ParaKaehler, {2, 2}},
        {TypeLabel::ComplexKaehler, {2, 2}},
        {TypeLabel::HyperKaehler, {4, 4}},
        {TypeLabel::ParaHyperKaehler, {2, 2}},
        {TypeLabel::ComplexHyperKaehler, {4, 4}},
    };
    for (const auto& [label, sig] : rows) {
        CAPTURE(label_code(label));
        NormalFormFrame f = normal_form_frame(label, sig.first, sig.second);
        std::vector<Mat> gens;
        for (const auto& [k, m] : f.structures.mats) gens.push_back(m);
        EndoAlgebra e = algebra_generated_by(f.g, gens);
        auto rad = radical(e);
        auto catalog = parallel_tensor_catalog(e, rad, f.structures, label);
        CHECK(!catalog.empty());
        bool has_metric = false, has_symplectic = false;
        for (const auto& ce : catalog) {
            CHECK(ce.symmetry_ok);
            CHECK(ce.nondegenerate);
            has_metric |= ce.kind == "metric";
            has_symplectic |= ce.kind == "symplectic";
        }
        CHECK(has_metric);
        if (label != TypeLabel::ComplexRiemannian) CHECK(has_symplectic);
        else CHECK(!has_symplectic);
        if (label == TypeLabel::HyperKaehler || label == TypeLabel::ParaHyperKaehler ||
            label == TypeLabel::ComplexHyperKaehler) {
            bool has_volume = false;
            for (const auto& ce : catalog) has_volume |= ce.kind == "complex_volume_skew";
            CHECK(has_volume);
        }
    }
}
