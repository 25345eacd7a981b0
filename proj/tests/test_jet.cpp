#include "doctest.h"
#include "pea/metric.hpp"
#include "pea/rng.hpp"

using namespace pea;

namespace {

Jet sparse_random_jet(Rng& rng, int n, int K, int terms) {
    Jet j(n, K);
    for (int t = 0; t < terms; ++t) {
        MultiIndex e(n, 0);
        int deg = static_cast<int>(rng.range(0, K));
        for (int k = 0; k < deg; ++k) e[rng.range(0, n - 1)] += 1;
        j.set_coeff(e, j.coeff(e) + Scalar(Rational(rng.small_nonzero(5), 1 + rng.range(0, 3))));
    }
    return j;
}

}  // namespace

TEST_CASE("jet multiplication truncates exactly") {
    // (1 + x)(1 - x) at K=2 -> 1 - x^2
    Jet one_px = Jet::constant(1, 2, Scalar(1)) + Jet::variable(1, 2, 0);
    Jet one_mx = Jet::constant(1, 2, Scalar(1)) - Jet::variable(1, 2, 0);
    Jet prod = one_px * one_mx;
    CHECK(prod.coeff({0}) == Scalar(1));
    CHECK(prod.coeff({1}) == Scalar(0));
    CHECK(prod.coeff({2}) == Scalar(-1));

    // same product at K=1 drops the square
    Jet a1 = Jet::constant(1, 1, Scalar(1)) + Jet::variable(1, 1, 0);
    Jet b1 = Jet::constant(1, 1, Scalar(1)) - Jet::variable(1, 1, 0);
    CHECK((a1 * b1) == Jet::constant(1, 1, Scalar(1)));

    // binomial oracle: coefficients of (x+y)^3 are binom(3,k)
    Jet xpy = Jet::variable(2, 3, 0) + Jet::variable(2, 3, 1);
    Jet cube = xpy * xpy * xpy;
    auto binom = [](int n, int k) {
        long b = 1;
        for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
        return b;
    };
    for (int k = 0; k <= 3; ++k) {
        MultiIndex e{3 - k, k};
        CHECK(cube.coeff(e) == Scalar(Rational(binom(3, k))));
    }

    CHECK_THROWS_AS(Jet::variable(1, 2, 0) * Jet::variable(2, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Jet::variable(1, 2, 0) * Jet::variable(1, 3, 0), std::invalid_argument);
}

TEST_CASE("jet inversion via the finite Neumann series") {
    // invert(1 + x) at K=3 -> 1 - x + x^2 - x^3
    Jet a = Jet::constant(1, 3, Scalar(1)) + Jet::variable(1, 3, 0);
    Jet inv = a.inverse();
    CHECK(inv.coeff({0}) == Scalar(1));
    CHECK(inv.coeff({1}) == Scalar(-1));
    CHECK(inv.coeff({2}) == Scalar(1));
    CHECK(inv.coeff({3}) == Scalar(-1));

    CHECK(Jet::constant(1, 2, Scalar(2)).inverse() ==
          Jet::constant(1, 2, Scalar(Rational(1, 2))));

    // invert(1 + x + y) at K=2, checked by multiplying back
    Jet b = Jet::constant(2, 2, Scalar(1)) + Jet::variable(2, 2, 0) + Jet::variable(2, 2, 1);
    Jet binv = b.inverse();
    CHECK((b * binv) == Jet::constant(2, 2, Scalar(1)));
    CHECK(binv.coeff({1, 1}) == Scalar(2));

    CHECK_THROWS_AS(Jet::variable(1, 2, 0).inverse(), std::domain_error);
}

TEST_CASE("partial derivatives") {
    // d/dx (x^2 y) = 2 x y
    Jet x = Jet::variable(2, 3, 0), y = Jet::variable(2, 3, 1);
    Jet f = x * x * y;
    Jet fx = f.partial(0);
    CHECK(fx.order() == 2);
    CHECK(fx.coeff({1, 1}) == Scalar(2));

    CHECK(Jet::constant(2, 3, Scalar(5)).partial(0).is_zero());

    // d_x d_y (xy + x^2 y^2) at 0 -> 1
    Jet x4 = Jet::variable(2, 4, 0), y4 = Jet::variable(2, 4, 1);
    Jet g = x4 * y4 + x4 * x4 * y4 * y4;
    CHECK(g.partial(0).partial(1).value_at_origin() == Scalar(1));

    CHECK_THROWS_AS(f.partial(2), std::out_of_range);
}

TEST_CASE("jet algebra properties on random sparse jets") {
    Rng rng(42);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 1 + static_cast<int>(rng.range(0, 3));
        int K = 1 + static_cast<int>(rng.range(0, 3));
        Jet a = sparse_random_jet(rng, n, K, 4);
        Jet b = sparse_random_jet(rng, n, K, 4);
        Jet c = sparse_random_jet(rng, n, K, 3);
        CHECK((a * b) == (b * a));
        CHECK(((a * b) * c) == (a * (b * c)));
        // mixed partials commute
        if (n >= 2) CHECK(a.partial(0).partial(1) == a.partial(1).partial(0));
        // units invert exactly
        Jet u = a + Jet::constant(n, K, Scalar(1) - a.value_at_origin());
        CHECK((u * u.inverse()) == Jet::constant(n, K, Scalar(1)));
    }
}

TEST_CASE("serialization round-trips bit for bit") {
    Rng rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        Jet a = sparse_random_jet(rng, 3, 3, 5);
        // plant a complex coefficient and a large numerator
        a.set_coeff({1, 1, 0}, Scalar(Rational(3), Rational(-2, 7)));
        a.set_coeff({0, 0, 1}, Scalar(Rational(Integer("123456789012345678901234567"), Integer(5))));
        Jet back = jet_from_json(jet_to_json(a));
        CHECK(back == a);
        CHECK(jet_to_json(back).dump() == jet_to_json(a).dump());
    }
}
