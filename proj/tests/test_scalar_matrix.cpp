#include "doctest.h"
#include "pea/matrix.hpp"
#include "pea/poly.hpp"

using namespace pea;

TEST_CASE("scalar arithmetic and exact square roots") {
    Scalar a(Rational(1, 3)), b(Rational(2, 5));
    CHECK((a + b) == Scalar(Rational(11, 15)));
    Scalar z(Rational(1), Rational(2));
    CHECK((z * z.conj()).re == Rational(5));
    CHECK((z / z) == Scalar(1));

    CHECK(rational_sqrt(Rational(49, 9)).value() == Rational(7, 3));
    CHECK(!rational_sqrt(Rational(2)).has_value());
    CHECK(!rational_sqrt(Rational(-4)).has_value());
    CHECK(rational_sqrt(Rational(0)).value() == Rational(0));
}

TEST_CASE("rref, rank, nullspace, solve, det, inverse") {
    Mat m(3, 3);
    int vals[3][3] = {{2, 1, 1}, {1, 3, 2}, {1, 0, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = Scalar(vals[i][j]);
    CHECK(rank(m) == 3);
    CHECK(det(m) == Scalar(-1));
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK((*inv * m) == Mat::identity(3));

    // singular case with a 1-dim kernel
    Mat s(2, 3);
    s.at(0, 0) = Scalar(1);
    s.at(0, 1) = Scalar(2);
    s.at(1, 2) = Scalar(1);
    auto ns = nullspace(s);
    REQUIRE(ns.size() == 1);
    CHECK(s.apply(ns[0]) == Vec{Scalar(0), Scalar(0)});

    Vec b{Scalar(3), Scalar(1)};
    auto x = solve(s, b);
    REQUIRE(x.has_value());
    CHECK(s.apply(*x) == b);

    // inconsistent system
    Mat t(2, 1);
    t.at(0, 0) = Scalar(1);
    t.at(1, 0) = Scalar(1);
    CHECK(!solve(t, Vec{Scalar(0), Scalar(1)}).has_value());
}

TEST_CASE("congruence signature is exact, including zero-diagonal pivots") {
    Mat g(2, 2);
    g.at(0, 1) = Scalar(1);
    g.at(1, 0) = Scalar(1);
    Signature s = congruence_signature(g);
    CHECK(s.pos == 1);
    CHECK(s.neg == 1);
    CHECK(s.null == 0);

    Mat h(3, 3);
    h.at(0, 0) = Scalar(Rational(1, 4));
    h.at(1, 1) = Scalar(-2);
    Signature t = congruence_signature(h);
    CHECK(t.pos == 1);
    CHECK(t.neg == 1);
    CHECK(t.null == 1);
}

TEST_CASE("span builder tracks membership and dimension") {
    SpanBuilder sb(3);
    CHECK(sb.insert(Vec{Scalar(1), Scalar(1), Scalar(0)}));
    CHECK(sb.insert(Vec{Scalar(0), Scalar(1), Scalar(1)}));
    CHECK(!sb.insert(Vec{Scalar(1), Scalar(2), Scalar(1)}));
    CHECK(sb.dim() == 2);
    CHECK(sb.contains(Vec{Scalar(2), Scalar(3), Scalar(1)}));
    CHECK(!sb.contains(Vec{Scalar(0), Scalar(0), Scalar(1)}));
}

TEST_CASE("minimal polynomial and nilpotency") {
    Mat j(2, 2);
    j.at(0, 1) = Scalar(-1);
    j.at(1, 0) = Scalar(1);
    Poly mp = minimal_polynomial(j);  // X^2 + 1
    REQUIRE(poly_deg(mp) == 2);
    CHECK(mp[0] == Rational(1));
    CHECK(mp[1] == Rational(0));
    CHECK(!splits_over_reals(poly_squarefree_part(mp)));

    Mat n(3, 3);
    n.at(0, 1) = Scalar(1);
    n.at(1, 2) = Scalar(1);
    CHECK(is_nilpotent(n));
    Poly mn = minimal_polynomial(n);  // X^3
    CHECK(poly_deg(mn) == 3);
    CHECK(poly_deg(poly_squarefree_part(mn)) == 1);

    // diag(1,2) splits over R
    Mat d2 = Mat::diag({Scalar(1), Scalar(2)});
    CHECK(splits_over_reals(poly_squarefree_part(minimal_polynomial(d2))));
    // X^2 - 2 also splits over R though irreducible over Q
    Mat r2(2, 2);
    r2.at(0, 1) = Scalar(2);
    r2.at(1, 0) = Scalar(1);
    Poly pr = minimal_polynomial(r2);
    CHECK(irreducible_over_Q(pr).value());
    CHECK(splits_over_reals(pr));
}

TEST_CASE("rational root search") {
    // (X - 1/2)(X + 3) = X^2 + 5/2 X - 3/2
    Poly p{Rational(-3, 2), Rational(5, 2), Rational(1)};
    auto roots = poly_rational_roots(p);
    REQUIRE(roots.size() == 2);
    bool has_half = false, has_m3 = false;
    for (const auto& r : roots) {
        has_half |= (r == Rational(1, 2));
        has_m3 |= (r == Rational(-3));
    }
    CHECK(has_half);
    CHECK(has_m3);
}
