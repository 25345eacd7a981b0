#include "doctest.h"
#include "pea/pipeline.hpp"

using namespace pea;

namespace {

PipelineResult classify_full(const MetricGerm& germ, std::uint64_t seed = 1) {
    PipelineConfig cfg;
    cfg.seed = seed;
    return classify_germ(germ, cfg);
}

}  // namespace

TEST_CASE("kaehler generator: label, dims, too-symmetric potential detected") {
    MetricGerm k = generate_generic(TypeLabel::Kaehler, 4, 0, 1);
    auto res = classify_full(k);
    CHECK(res.label == TypeLabel::Kaehler);
    CHECK(res.holonomy->span.dim() == 4);
    CHECK(res.fp->dim_s == 2);

    // rotation-symmetric quartic: u = base + (z1 zbar1)^2 at n=2 misses the
    // generic count
    Jet u = kaehler_base_potential(2, 2, 0, 4);
    MultiIndex e{2, 0, 2, 0};
    u.set_coeff(e, u.coeff(e) + Scalar(1));
    MetricGerm sym = germ_from_kaehler_potential(u);
    auto hol = holonomy_span(curvature(sym, 2));
    CHECK(hol.span.dim() < 4);
}

TEST_CASE("kaehler generator with split signature") {
    MetricGerm k = generate_generic(TypeLabel::Kaehler, 2, 2, 1);
    auto res = classify_full(k);
    CHECK(res.label == TypeLabel::Kaehler);
    CHECK(res.holonomy->span.dim() == 4);
}

TEST_CASE("parakaehler generator classifies as 2'") {
    MetricGerm p = generate_generic(TypeLabel::ParaKaehler, 2, 2, 1);
    auto res = classify_full(p);
    CHECK(res.label == TypeLabel::ParaKaehler);
    CHECK(res.holonomy->span.dim() == 4);
    CHECK(res.fp == expected_fingerprint(TypeLabel::ParaKaehler));
}

TEST_CASE("complex riemannian generator: d=6 classifies as 1C") {
    MetricGerm c = generate_generic(TypeLabel::ComplexRiemannian, 3, 3, 1);
    auto res = classify_full(c);
    CHECK(res.label == TypeLabel::ComplexRiemannian);
    CHECK(res.holonomy->span.dim() == 6);  // so(3,C) as a real algebra
}

TEST_CASE("holomorphic surface germ (real dim 4) upgrades to complex Kaehler") {
    // at one complex dimension pair the holonomy is abelian so(2,C) and the
    // commutant is forced up to the complex Kaehler algebra: no germ of real
    // dimension 4 stays of type 1C
    MetricGerm c = germ_complex_riemannian(2, 3);
    auto hol = holonomy_span(curvature(c, 2));
    CHECK(hol.span.dim() == 2);
    auto res = classify_full(c);
    CHECK(res.label == TypeLabel::ComplexKaehler);
}

TEST_CASE("complex kaehler generator: d=8 classifies as 2C") {
    MetricGerm c = generate_generic(TypeLabel::ComplexKaehler, 4, 4, 1);
    auto res = classify_full(c);
    CHECK(res.label == TypeLabel::ComplexKaehler);
    CHECK(res.holonomy->span.dim() == 8);  // gl(2,C) real dimension
}

TEST_CASE("omega_h eps=-1: hyperkaehler germ at delta=1") {
    MetricGerm g3 = generate_generic(TypeLabel::HyperKaehler, 4, 0, 1);
    CHECK(g3.signature == std::make_pair(4, 0));
    auto res = classify_full(g3);
    CHECK(res.label == TypeLabel::HyperKaehler);
    CHECK(res.holonomy->span.dim() == 3);  // sp(1)
    CHECK(ricci(g3).is_zero());

    // witnesses anticommute and square correctly
    Mat J = mat_from_json(g3.meta.at("witnesses").at("J"));
    Mat U = mat_from_json(g3.meta.at("witnesses").at("U"));
    CHECK(J * J == -Mat::identity(4));
    CHECK(U * U == -Mat::identity(4));  // eps U^2 = Id with eps = -1
    CHECK(J * U == -(U * J));
}

TEST_CASE("omega_h eps=+1: para-hyperkaehler germ at delta=1") {
    MetricGerm g3p = generate_generic(TypeLabel::ParaHyperKaehler, 2, 2, 1);
    CHECK(g3p.signature == std::make_pair(2, 2));
    auto res = classify_full(g3p);
    CHECK(res.label == TypeLabel::ParaHyperKaehler);
    CHECK(res.holonomy->span.dim() == 3);  // sp(2,R)
    CHECK(ricci(g3p).is_zero());

    Mat U = mat_from_json(g3p.meta.at("witnesses").at("U"));
    CHECK(U * U == Mat::identity(4));  // eps U^2 = Id with eps = +1
}

TEST_CASE("omega_h complex: complex hyperkaehler germ at delta=1, d=8") {
    MetricGerm g3c = generate_generic(TypeLabel::ComplexHyperKaehler, 4, 4, 1);
    CHECK(g3c.d == 8);
    CHECK(g3c.signature == std::make_pair(4, 4));
    auto res = classify_full(g3c);
    CHECK(res.label == TypeLabel::ComplexHyperKaehler);
    CHECK(res.holonomy->span.dim() == 6);  // sp(2,C) real dimension
    CHECK(ricci(g3c).is_zero());
}

TEST_CASE("omega_h germs satisfy the moment constraints to jet order") {
    auto oh = germ_omega_h(1, -1, 1, 0, false, 3, 2);
    // U as a field: check g-skewness of the witness at 0 and JU = -UJ
    const MetricGerm& germ = oh.germ;
    Mat g0 = germ.g0();
    Mat gi = *inverse(g0);
    CHECK(adjoint_of(oh.U, g0, gi) == -oh.U);
    CHECK(adjoint_of(oh.J, g0, gi) == -oh.J);
    CHECK(oh.J * oh.U == -(oh.U * oh.J));
    CHECK(oh.certified_deriv_order == 1);
}

TEST_CASE("type1 generator at d=2 is kaehler or parakaehler, never generic") {
    // surfaces always carry a parallel (para)complex structure
    MetricGerm s = germ_type1(2, 2, 0, 4);
    auto res = classify_full(s);
    CHECK(res.label == TypeLabel::Kaehler);
    MetricGerm l = germ_type1(2, 1, 1, 4);
    auto res2 = classify_full(l);
    CHECK((res2.label == TypeLabel::ParaKaehler || res2.label == TypeLabel::Kaehler));
}

TEST_CASE("normal form frames: inadmissible signatures rejected") {
    CHECK_THROWS_AS(normal_form_frame(TypeLabel::ComplexKaehler, 3, 3), InvalidGerm);
    CHECK_THROWS_AS(normal_form_frame(TypeLabel::HyperKaehler, 2, 2), InvalidGerm);
    CHECK_THROWS_AS(normal_form_frame(TypeLabel::ParaKaehler, 2, 1), InvalidGerm);
    CHECK_THROWS_AS(generate_generic(TypeLabel::Kaehler, 3, 1, 1), InvalidGerm);
    CHECK(signature_admissible(TypeLabel::HyperKaehler, 4, 4));
    CHECK(!signature_admissible(TypeLabel::ComplexHyperKaehler, 4, 8));
}

TEST_CASE("every generated germ round-trips through JSON") {
    for (TypeLabel label : {TypeLabel::Kaehler, TypeLabel::ParaHyperKaehler}) {
        std::pair<int, int> sig = label == TypeLabel::Kaehler ? std::make_pair(4, 0)
                                                              : std::make_pair(2, 2);
        MetricGerm g = generate_generic(label, sig.first, sig.second, 1);
        Json j = germ_to_json(g);
        MetricGerm back = germ_from_json(j);
        CHECK(back.d == g.d);
        CHECK(back.signature == g.signature);
        CHECK(germ_to_json(back).dump() == j.dump());
        auto res = classify_full(back);
        CHECK(res.label == label);
    }
    // complex kind round-trip keeps the holomorphic data
    MetricGerm c = germ_complex_riemannian(3, 1);
    MetricGerm back = germ_from_json(germ_to_json(c));
    CHECK(back.kind == MetricGerm::Kind::Complex);
    CHECK(germ_to_json(back).dump() == germ_to_json(c).dump());
}
