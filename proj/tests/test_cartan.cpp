#include "doctest.h"
#include "pea/cartan.hpp"

using namespace pea;

TEST_CASE("tangent model: dimension, hermitian block structure, flag vectors") {
    for (int delta : {1, 2}) {
        for (int eps : {-1, 1}) {
            TangentModel tm = build_tangent_model(delta, eps, delta, 0, false);
            CHECK(static_cast<int>(tm.W.size()) == 2 * delta * delta + delta);
            int n2 = 2 * delta;
            for (const auto& t : tm.W) {
                // hermitian: T_ba = formal conj of T_ab
                for (int a = 0; a < n2; ++a)
                    for (int b = 0; b < n2; ++b) CHECK(t[b][a] == t[a][b].conj());
            }
            if (eps == 1) {
                // displayed block structure: t22 = conj(t11), t21 = conj(t12),
                // t12 symmetric
                for (const auto& t : tm.W)
                    for (int a = 0; a < delta; ++a)
                        for (int b = 0; b < delta; ++b) {
                            CHECK(t[delta + a][delta + b] == t[a][b].conj());
                            CHECK(t[delta + a][b] == t[a][delta + b].conj());
                            CHECK(t[a][delta + b] == t[b][delta + a]);
                        }
            }
        }
    }
    // flag coefficients: e_{delta+j} carries (j-1)/delta on the y part
    TangentModel tm = build_tangent_model(2, -1, 2, 0, false);
    CHECK(tm.flag[2][2] == FC(Scalar(1), Scalar(0)));                    // e_3 = dx_3
    CHECK(tm.flag[3][3] == FC(Scalar(1), Scalar(Rational(1, 2))));       // e_4: coefficient 1/2
    CHECK(tm.flag[4][0] == FC(Scalar(0), Scalar(1)));                    // e_{2delta+1} = dy_1
    TangentModel t1 = build_tangent_model(1, -1, 1, 0, false);
    CHECK(t1.flag[1][1] == FC(Scalar(1), Scalar(0)));                    // e_2 at delta=1: no y part
}

TEST_CASE("characters at delta=1: s = (0,1,2,0) for both eps and complex") {
    for (int eps : {-1, 1}) {
        TangentModel tm = build_tangent_model(1, eps, 1, 0, false);
        auto s = polar_characters(tm);
        REQUIRE(s.size() == 4);
        CHECK(s[0] == 0);
        CHECK(s[1] == 1);
        CHECK(s[2] == 2);
        CHECK(s[3] == 0);
    }
    TangentModel tc = build_tangent_model(1, -1, 1, 0, true);
    auto sc = polar_characters(tc);
    CHECK(sc == std::vector<int>{0, 1, 2, 0});
}

TEST_CASE("characters at delta=2: s_k = k-1 up to 2delta+1, zero beyond") {
    for (int eps : {-1, 1}) {
        CAPTURE(eps);
        TangentModel tm = build_tangent_model(2, eps, 2, 0, false);
        auto s = polar_characters(tm);
        REQUIRE(s.size() == 8);
        for (int k = 1; k <= 8; ++k) CHECK(s[k - 1] == (k <= 5 ? k - 1 : 0));
    }
    // split signature base point for eps=-1
    TangentModel tpq = build_tangent_model(2, -1, 1, 1, false);
    auto spq = polar_characters(tpq);
    for (int k = 1; k <= 8; ++k) CHECK(spq[k - 1] == (k <= 5 ? k - 1 : 0));
}

TEST_CASE("integral variety dimension: 2 C^3_{2delta+2}") {
    for (int eps : {-1, 1}) {
        CHECK(integral_variety_dim(build_tangent_model(1, eps, 1, 0, false)) == 8);
    }
    CHECK(integral_variety_dim(build_tangent_model(1, -1, 1, 0, true)) == 8);
    CHECK(integral_variety_dim(build_tangent_model(2, -1, 2, 0, false)) == 40);
}

TEST_CASE("full cartan test: equality, ordinary flag, last character") {
    for (int eps : {-1, 1}) {
        FlagReport rep = cartan_test(1, eps, 1, 0, false);
        CHECK(rep.involutive);
        CHECK(rep.dim_V == 8);
        CHECK(rep.cartan_bound == 8);
        CHECK(rep.last_nonzero_index == 3);   // 2 delta + 1
        CHECK(rep.last_nonzero_value == 2);   // 2 delta
        CHECK(rep.horizontal_integral_ok);
        CHECK(rep.relations_hold);
        CHECK(rep.relations_independent);
        CHECK(rep.relation_count == 0);  // 4 C^3_2 = 0 at delta=1
    }
}

TEST_CASE("cartan test at delta=2: relations hold and are independent") {
    FlagReport rep = cartan_test(2, -1, 2, 0, false);
    CHECK(rep.involutive);
    CHECK(rep.dim_V == 40);
    CHECK(rep.cartan_bound == 40);
    CHECK(rep.last_nonzero_index == 5);
    CHECK(rep.last_nonzero_value == 4);
    CHECK(rep.relations_hold);
    CHECK(rep.relation_count == 16);  // 4 C^3_4
    CHECK(rep.relations_independent);

    FlagReport repp = cartan_test(2, 1, 0, 0, false);
    CHECK(repp.involutive);
    CHECK(repp.dim_V == 40);
    CHECK(repp.relations_hold);
    CHECK(repp.relations_independent);
}

TEST_CASE("complex case at delta=1: same dimensions over the complexified scalars") {
    FlagReport rep = cartan_test(1, -1, 1, 0, true);
    CHECK(rep.involutive);
    CHECK(rep.dim_V == 8);
    CHECK(rep.characters == std::vector<int>{0, 1, 2, 0});
    CHECK(rep.complex_case);
}

TEST_CASE("epsilon independence of the full report data") {
    FlagReport a = cartan_test(1, -1, 1, 0, false);
    FlagReport b = cartan_test(1, 1, 0, 0, false);
    CHECK(a.characters == b.characters);
    CHECK(a.dim_V == b.dim_V);
}
