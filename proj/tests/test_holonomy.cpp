#include "doctest.h"
#include "pea/generators.hpp"
#include "pea/holonomy.hpp"

using namespace pea;

namespace {

MetricGerm flat_germ(int d) {
    std::vector<std::vector<Jet>> g(d, std::vector<Jet>(d, Jet(d, 4)));
    for (int i = 0; i < d; ++i) g[i][i] = Jet::constant(d, 4, Scalar(1));
    return make_real_germ(std::move(g), {d, 0});
}

// skewadjoint matrices for a Gram matrix, optionally commuting with extra
// structures: so/u/sp bases by nullspace
std::vector<Mat> skew_algebra(const Mat& g, const std::vector<Mat>& commuting_with) {
    int d = g.rows();
    int rows = d * d * (1 + static_cast<int>(commuting_with.size()));
    Mat sys(rows, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                // (W^T g + g W)_{ij}
                sys.at(i * d + j, k * d + i) += g.at(k, j);
                sys.at(i * d + j, k * d + j) += g.at(i, k);
            }
    int base = d * d;
    for (const auto& x : commuting_with) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                for (int k = 0; k < d; ++k) {
                    sys.at(base + i * d + j, i * d + k) += x.at(k, j);
                    sys.at(base + i * d + j, k * d + j) -= x.at(i, k);
                }
            }
        base += d * d;
    }
    std::vector<Mat> out;
    for (const auto& v : nullspace(sys)) out.push_back(Mat::unflatten(v, d, d));
    return out;
}

}  // namespace

TEST_CASE("holonomy span: flat empty, generic d=4 full, kaehler d=4 unitary") {
    auto curv_flat = curvature(flat_germ(4), 2);
    auto hol_flat = holonomy_span(curv_flat);
    CHECK(hol_flat.span.dim() == 0);
    CHECK(hol_flat.stabilized);

    MetricGerm t1 = generate_generic(TypeLabel::Generic, 4, 0, 1);
    auto hol1 = holonomy_span(curvature(t1, 2));
    CHECK(hol1.span.dim() == 6);  // d(d-1)/2

    MetricGerm t3 = generate_generic(TypeLabel::Generic, 3, 0, 1);
    auto hol3 = holonomy_span(curvature(t3, 2));
    CHECK(hol3.span.dim() == 3);

    MetricGerm k = generate_generic(TypeLabel::Kaehler, 4, 0, 1);
    auto holk = holonomy_span(curvature(k, 2));
    CHECK(holk.span.dim() == 4);  // (d/2)^2

    for (const auto& w : holk.span.basis)
        CHECK((w.transpose() * k.g0() + k.g0() * w).is_zero());
}

TEST_CASE("monotonicity: higher derivative order never shrinks h nor grows e") {
    MetricGerm germ = germ_type1(3, 2, 1, 17);
    auto h0 = holonomy_span(curvature(germ, 0));
    auto h2 = holonomy_span(curvature(germ, 2));
    CHECK(h2.span.dim() >= h0.span.dim());
    auto e0 = commutant(h0.span, germ.g0());
    auto e2 = commutant(h2.span, germ.g0());
    CHECK(e2.dim() <= e0.dim());
    SpanBuilder big(3 * 3);
    for (const auto& m : h2.span.basis) big.insert_mat(m);
    for (const auto& m : h0.span.basis) CHECK(big.contains_mat(m));
}

TEST_CASE("fixed space: flat full, generic trivial, nilpotent example") {
    Mat g2 = Mat::identity(2);
    MatrixSpan empty;
    empty.d = 2;
    auto fs = fixed_space(empty, g2);
    CHECK(fs.dim() == 2);

    MetricGerm t1 = generate_generic(TypeLabel::Generic, 4, 0, 1);
    auto hol = holonomy_span(curvature(t1, 2));
    auto e0 = fixed_space(hol.span, t1.g0());
    CHECK(e0.dim() == 0);

    Mat n(2, 2);
    n.at(0, 1) = Scalar(1);
    MatrixSpan sn;
    sn.d = 2;
    sn.basis.push_back(n);
    auto e0n = fixed_space(sn, g2);
    REQUIRE(e0n.dim() == 1);
    CHECK(e0n.basis[0][0] == Scalar(1));
    CHECK(e0n.basis[0][1] == Scalar(0));
}

TEST_CASE("commutant: so(d) gives scalars, empty span gives everything") {
    int d = 4;
    Mat g = Mat::identity(d);
    MatrixSpan so;
    so.d = d;
    so.basis = skew_algebra(g, {});
    REQUIRE(static_cast<int>(so.basis.size()) == d * (d - 1) / 2);
    EndoAlgebra e = commutant(so, g);
    CHECK(e.dim() == 1);

    MatrixSpan none;
    none.d = 3;
    EndoAlgebra all = commutant(none, Mat::identity(3));
    CHECK(all.dim() == 9);
}

TEST_CASE("quaternionic pair: commutant of the control span has dimension 8") {
    NegativeControl nc = hh_negative_control();
    SpanBuilder sb(64);
    for (const auto& m : nc.span.basis) sb.insert_mat(m);
    for (const auto& a : nc.span.basis)
        for (const auto& b : nc.span.basis) CHECK(sb.contains_mat(commutator(a, b)));

    EndoAlgebra e = commutant(nc.span, nc.gram);
    CHECK(e.dim() == 8);
    auto e0 = fixed_space(nc.span, nc.gram);
    CHECK(e0.dim() == 0);
}

TEST_CASE("n0 ideal: trivial for generic, square-zero for the plane wave") {
    MetricGerm t1 = generate_generic(TypeLabel::Generic, 4, 0, 1);
    auto hol = holonomy_span(curvature(t1, 2));
    auto e0 = fixed_space(hol.span, t1.g0());
    EndoAlgebra e = commutant(hol.span, t1.g0());
    CHECK(n0_ideal(e, hol.span, e0).empty());

    MetricGerm pw = germ_plane_wave();
    auto holw = holonomy_span(curvature(pw, 2));
    auto e0w = fixed_space(holw.span, pw.g0());
    CHECK(e0w.dim() == 1);
    CHECK(e0w.isotropic);
    EndoAlgebra ew = commutant(holw.span, pw.g0());
    auto n0 = n0_ideal(ew, holw.span, e0w);
    CHECK(!n0.empty());
    for (const auto& a : n0)
        for (const auto& b : n0) CHECK((a * b).is_zero());
    SpanBuilder span_n0(16);
    for (const auto& m : n0) span_n0.insert_mat(m);
    for (const auto& m : n0) CHECK(span_n0.contains_mat(ew.adjoint(m)));
}

TEST_CASE("decomposability probe flags split spans and passes generic germs") {
    Mat g = Mat::identity(4);
    Mat a(4, 4), b(4, 4);
    a.at(0, 1) = Scalar(1);
    a.at(1, 0) = Scalar(-1);
    b.at(2, 3) = Scalar(1);
    b.at(3, 2) = Scalar(-1);
    MatrixSpan split;
    split.d = 4;
    split.basis = {a, b};
    EndoAlgebra e = commutant(split, g);
    Rng rng(5);
    CHECK(decomposability_probe(e, rng));

    MetricGerm t1 = generate_generic(TypeLabel::Generic, 4, 0, 1);
    auto hol = holonomy_span(curvature(t1, 2));
    EndoAlgebra eg = commutant(hol.span, t1.g0());
    Rng rng2(5);
    CHECK(!decomposability_probe(eg, rng2));
}

TEST_CASE("unitary algebra built by nullspace matches the kaehler holonomy") {
    NormalFormFrame f = normal_form_frame(TypeLabel::Kaehler, 4, 0);
    auto u2 = skew_algebra(f.g, {f.structures.get("J")});
    CHECK(static_cast<int>(u2.size()) == 4);
    MatrixSpan span;
    span.d = 4;
    span.basis = u2;
    EndoAlgebra e = commutant(span, f.g);
    CHECK(e.dim() == 2);
    CHECK(e.contains(f.structures.get("J")));
}
