#include "pea/verify.hpp"

#include <sstream>

#include "pea/poly.hpp"

namespace pea {

namespace {

std::vector<Mat> sample_combos(const std::vector<Mat>& basis, Rng& rng, int count, int d) {
    std::vector<Mat> out = basis;
    for (int s = 0; s < count && !basis.empty(); ++s) {
        Mat m(d, d);
        for (const auto& b : basis) {
            long c = rng.range(-2, 2);
            if (c != 0) m += Scalar(Rational(c)) * b;
        }
        if (!m.is_zero()) out.push_back(m);
    }
    return out;
}

// matrix of v -> R(e_a, v) e_b
Mat transposed_curvature_map(const CurvatureAtOrigin& curv, int a, int b) {
    int d = curv.d;
    Mat m(d, d);
    auto R_of = [&](int i, int j) -> Mat {
        if (i == j) return Mat::zero(d);
        if (i < j) return curv.R(i, j);
        return -curv.R(j, i);
    };
    for (int u = 0; u < d; ++u) {
        Mat r = R_of(a, u);
        for (int l = 0; l < d; ++l) m.at(l, u) = r.at(l, b);
    }
    return m;
}

}  // namespace

bool pseudocommutation_holds(const CurvatureAtOrigin& curv, const EndoAlgebra& e,
                             const FixedSpace& e0, Rng& rng, int samples, std::string* witness) {
    int d = e.d();
    SpanBuilder e0span(d);
    for (const auto& v : e0.basis) e0span.insert(v);
    auto us = sample_combos(e.plus_basis(), rng, samples, d);
    auto vs = sample_combos(e.basis(), rng, samples, d);
    for (const auto& u : us)
        for (const auto& v : vs) {
            Mat c = commutator(u, v);
            if (c.is_zero()) continue;
            if (e0.basis.empty()) {
                if (witness) *witness = "selfadjoint element not central although E0 = 0";
                return false;
            }
            for (const auto& r : curv.level(0))
                if (!(r * c).is_zero()) {
                    if (witness) *witness = "R(x,y)(UV-VU) != 0";
                    return false;
                }
            // Im(UV - VU) inside E0
            for (int col = 0; col < d; ++col) {
                Vec w(d);
                for (int row = 0; row < d; ++row) w[row] = c.at(row, col);
                if (!e0span.contains(w)) {
                    if (witness) *witness = "Im(UV-VU) escapes E0";
                    return false;
                }
            }
        }
    return true;
}

VerificationReport run_verification(const MetricGerm& germ, const CurvatureAtOrigin& curv,
                                    const EndoAlgebra& e, const std::vector<Mat>& rad,
                                    const FixedSpace& e0, const StructureSet& s,
                                    std::uint64_t seed, int samples) {
    VerificationReport rep;
    rep.seed = seed;
    rep.samples = samples;
    int d = e.d();
    Mat ric = ricci(germ);
    Mat id = Mat::identity(d);

    {
        Rng rng(seed);
        CheckResult c;
        c.name = "pseudocommutation";
        std::string note;
        c.passed = pseudocommutation_holds(curv, e, e0, rng, samples, &note);
        c.note = note;
        rep.checks.push_back(c);
    }

    {
        // R(Ux,y) = R(x,Uy) = R(x,y)U for selfadjoint parallel U
        CheckResult c;
        c.name = "curvature_commutation_selfadjoint";
        c.passed = true;
        auto R_of = [&](int i, int j) -> Mat {
            if (i == j) return Mat::zero(d);
            if (i < j) return curv.R(i, j);
            return -curv.R(j, i);
        };
        for (const auto& u : e.plus_basis()) {
            for (int a = 0; a < d && c.passed; ++a)
                for (int b = 0; b < d && c.passed; ++b) {
                    Mat lhs(d, d), mid(d, d);
                    for (int k = 0; k < d; ++k) {
                        if (!u.at(k, a).is_zero()) lhs += u.at(k, a) * R_of(k, b);
                        if (!u.at(k, b).is_zero()) mid += u.at(k, b) * R_of(a, k);
                    }
                    Mat rhs = R_of(a, b) * u;
                    if (lhs != mid || mid != rhs) {
                        c.passed = false;
                        c.note = "R(U.,.) identity failed";
                    }
                }
        }
        rep.checks.push_back(c);
    }

    {
        // ric(a,Ub) = ric(Ua,b) = tr(U (R(a,.)b)) for selfadjoint U, plus the
        // nilpotent kernel statement
        Rng rng(seed + 1);
        CheckResult c;
        c.name = "ricci_selfadjoint";
        c.passed = true;
        auto us = sample_combos(e.plus_basis(), rng, samples, d);
        for (const auto& u : us) {
            Mat ru = ric * u;
            if (ru != u.transpose() * ric) {
                c.passed = false;
                c.note = "ric(a,Ub) != ric(Ua,b)";
                break;
            }
            bool trace_ok = true;
            for (int a = 0; a < d && trace_ok; ++a)
                for (int b = 0; b < d && trace_ok; ++b) {
                    Mat m = transposed_curvature_map(curv, a, b);
                    if (!commutator(u, m).is_zero()) trace_ok = false;
                    if (ru.at(a, b) != (u * m).trace()) trace_ok = false;
                }
            if (!trace_ok) {
                c.passed = false;
                c.note = "ric(a,Ub) != tr(U R(a,.)b) or U does not commute with R(a,.)b";
                break;
            }
            if (is_nilpotent(u) && !u.is_zero() && !(ric * u).is_zero()) {
                c.passed = false;
                c.note = "Im N not inside ker ric for selfadjoint nilpotent N";
                break;
            }
        }
        rep.checks.push_back(c);
    }

    {
        // skewadjoint suite
        Rng rng(seed + 2);
        CheckResult c;
        c.name = "ricci_skewadjoint";
        c.passed = true;
        auto us = sample_combos(e.minus_basis(), rng, samples, d);
        Scalar half(Rational(1, 2));
        auto R_of = [&](int i, int j) -> Mat {
            if (i == j) return Mat::zero(d);
            if (i < j) return curv.R(i, j);
            return -curv.R(j, i);
        };
        for (const auto& u : us) {
            Mat ru = ric * u;
            if (ru != -(u.transpose() * ric)) {
                c.passed = false;
                c.note = "ric(a,Ub) != -ric(Ua,b)";
                break;
            }
            bool trace_ok = true;
            for (int a = 0; a < d && trace_ok; ++a)
                for (int b = 0; b < d && trace_ok; ++b)
                    if (ru.at(a, b) != half * (u * R_of(a, b)).trace()) trace_ok = false;
            if (!trace_ok) {
                c.passed = false;
                c.note = "ric(a,Ub) != (1/2) tr(U R(a,b))";
                break;
            }
            if (is_nilpotent(u) && !u.is_zero() && !(ric * u).is_zero()) {
                c.passed = false;
                c.note = "Im N not inside ker ric for skewadjoint nilpotent N";
                break;
            }
        }
        // commutator kernel and the anticommuting-invertible consequence
        for (size_t i = 0; i < us.size() && c.passed; ++i)
            for (size_t j = i + 1; j < us.size() && c.passed; ++j) {
                Mat cm = commutator(us[i], us[j]);
                if (!(ric * cm).is_zero()) {
                    c.passed = false;
                    c.note = "Im(UV-VU) not inside ker ric";
                }
                bool anticommute = (us[i] * us[j] + us[j] * us[i]).is_zero();
                bool invertible = !det(us[i]).is_zero() && !det(us[j]).is_zero();
                if (anticommute && invertible && !ric.is_zero()) {
                    c.passed = false;
                    c.note = "anticommuting invertible skew pair but ric != 0";
                }
            }
        rep.checks.push_back(c);
    }

    {
        // parallel-Ricci operator dichotomy
        CheckResult c;
        c.name = "ricci_operator";
        bool parallel = true;
        if (germ.K >= 3) {
            for (const auto& m : covariant_dricci_at_origin(germ))
                if (!m.is_zero()) parallel = false;
        } else {
            parallel = false;
        }
        if (!parallel) {
            c.skipped = true;
            c.note = "D ric != 0 at the visible order: hypothesis unmet";
        } else {
            Mat ric_op = e.g0_inv() * ric;
            Poly mp = minimal_polynomial(ric_op);
            Poly sq = poly_squarefree_part(mp);
            bool semisimple = (poly_deg(mp) == poly_deg(sq));
            bool two_step = (ric_op * ric_op).is_zero();
            c.passed = semisimple || two_step;
            auto irr = irreducible_over_Q(sq);
            std::ostringstream os;
            os << (semisimple ? "semisimple" : two_step ? "2-step nilpotent" : "neither");
            if (irr) os << "; squarefree part " << (*irr ? "irreducible" : "reducible") << " over Q";
            c.note = os.str();
        }
        rep.checks.push_back(c);
    }

    if (germ.kind == MetricGerm::Kind::Complex && germ.holo) {
        // complex Ricci decomposition against the holomorphic computation:
        // ric(.,.) - i ric(., Jbar .) = 2 ric_holo on the holomorphic frame
        CheckResult c;
        c.name = "ricci_complex_decomposition";
        c.passed = true;
        int n = d / 2;
        Mat ric_holo = ricci_from_jets(*germ.holo);
        for (int i = 0; i < n && c.passed; ++i)
            for (int j = 0; j < n && c.passed; ++j) {
                Scalar lhs = ric.at(i, j) - Scalar::i() * ric.at(i, n + j);
                if (lhs != Scalar(2) * ric_holo.at(i, j)) {
                    c.passed = false;
                    c.note = "real/holomorphic Ricci mismatch";
                }
            }
        rep.checks.push_back(c);
    }

    {
        // lifted structures commute with the curvature span at every computed
        // derivative order
        CheckResult c;
        c.name = "structures_commute_with_curvature";
        c.passed = true;
        for (const auto& [name, m] : s.mats) {
            for (int r = 0; r <= curv.max_deriv && c.passed; ++r)
                for (const auto& w : curv.level(r))
                    if (!commutator(w, m).is_zero()) {
                        c.passed = false;
                        c.note = name + " fails to commute with the holonomy span";
                        break;
                    }
        }
        rep.checks.push_back(c);
    }

    {
        // every selfadjoint element outside the radical is invertible
        Rng rng(seed + 3);
        CheckResult c;
        c.name = "selfadjoint_invertibility";
        c.passed = true;
        SpanBuilder rs(d * d);
        for (const auto& n : rad) rs.insert_mat(n);
        auto us = sample_combos(e.plus_basis(), rng, samples, d);
        us.push_back(id);
        for (const auto& u : us) {
            if (rs.contains_mat(u)) continue;
            if (det(u).is_zero()) {
                c.passed = false;
                c.note = "selfadjoint element outside rad is singular";
                break;
            }
        }
        rep.checks.push_back(c);
    }

    {
        // squarefree parts of min-polys agree along the radical
        Rng rng(seed + 4);
        CheckResult c;
        c.name = "minimal_polynomial_stability";
        c.passed = true;
        if (!rad.empty()) {
            auto us = sample_combos(e.plus_basis(), rng, 2, d);
            for (const auto& u : us)
                for (const auto& n : rad) {
                    Poly a = poly_squarefree_part(minimal_polynomial(u));
                    Poly b = poly_squarefree_part(minimal_polynomial(u + n));
                    if (a != b) {
                        c.passed = false;
                        c.note = "squarefree minimal polynomial changed along the radical";
                    }
                }
        }
        rep.checks.push_back(c);
    }

    return rep;
}

}  // namespace pea
