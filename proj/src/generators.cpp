#include "pea/generators.hpp"

#include <sstream>

#include "pea/geometry.hpp"

namespace pea {

namespace {

Mat block_Ipq(int p, int q) {
    std::vector<Scalar> d;
    for (int i = 0; i < p; ++i) d.push_back(Scalar(1));
    for (int i = 0; i < q; ++i) d.push_back(Scalar(-1));
    return Mat::diag(d);
}

Mat block_J(int p) {
    Mat m(2 * p, 2 * p);
    for (int i = 0; i < p; ++i) {
        m.at(i, p + i) = Scalar(-1);
        m.at(p + i, i) = Scalar(1);
    }
    return m;
}

Mat block_L(int p) {
    Mat m(2 * p, 2 * p);
    for (int i = 0; i < p; ++i) {
        m.at(i, p + i) = Scalar(1);
        m.at(p + i, i) = Scalar(1);
    }
    return m;
}

Mat block_diag(const Mat& a, const Mat& b) {
    Mat m(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

Mat block_offdiag(const Mat& upper, const Mat& lower) {
    int n = upper.rows();
    Mat m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m.at(i, n + j) = upper.at(i, j);
            m.at(n + i, j) = lower.at(i, j);
        }
    return m;
}

Json witness_meta(const std::map<std::string, Mat>& witnesses) {
    Json w;
    for (const auto& [k, m] : witnesses) w[k] = mat_to_json(m);
    return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// potential-driven germs

Jet kaehler_base_potential(int n, int p, int q, int order) {
    Jet u(2 * n, order);
    for (int i = 0; i < n; ++i) {
        MultiIndex e(2 * n, 0);
        e[i] = 1;
        e[n + i] = 1;
        u.set_coeff(e, Scalar(Rational(p > i ? 1 : -1, 2)));
    }
    return u;
}

MetricGerm germ_from_kaehler_potential(const Jet& u) {
    int two_n = u.nvars();
    if (two_n % 2 != 0) throw InvalidGerm("Kaehler potential needs paired variables (z, zbar)");
    int n = two_n / 2;
    int K = u.order();
    // reality: coeff(alpha, beta) = conj(coeff(beta, alpha))
    for (const auto& [e, c] : u.terms()) {
        MultiIndex swapped(two_n);
        for (int i = 0; i < n; ++i) {
            swapped[i] = e[n + i];
            swapped[n + i] = e[i];
        }
        if (u.coeff(swapped) != c.conj()) throw InvalidGerm("Kaehler potential is not real-valued");
    }
    // Hermitian Hessian h_ij = d^2 u / dz_i dzbar_j, then substitute
    // z = x + iy, zbar = x - iy
    std::vector<Jet> images;
    for (int k = 0; k < n; ++k)
        images.push_back(Jet::variable(two_n, K, k) + Scalar::i() * Jet::variable(two_n, K, n + k));
    for (int k = 0; k < n; ++k)
        images.push_back(Jet::variable(two_n, K, k) - Scalar::i() * Jet::variable(two_n, K, n + k));

    int d = 2 * n;
    std::vector<std::vector<Jet>> g(d, std::vector<Jet>(d, Jet(d, K)));
    Mat h0(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet h = u.partial(i).partial(n + j).truncated(K).substitute(images);
            h0.at(i, j) += h.value_at_origin();
            Jet re = Scalar(Rational(1, 2)) * (h + h.conj());
            Jet im = Scalar(Rational(0), Rational(-1, 2)) * (h - h.conj());
            g[i][j] += Scalar(2) * re;          // g(X_i, X_j)
            g[n + i][n + j] += Scalar(2) * re;  // g(Y_i, Y_j)
            g[i][n + j] += Scalar(2) * im;      // g(X_i, Y_j)
            g[n + j][i] += Scalar(2) * im;
        }
    if (det(h0).is_zero()) throw InvalidGerm("invalid potential: degenerate Hessian at 0");

    Signature sig = congruence_signature([&] {
        Mat m(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m.at(i, j) = g[i][j].value_at_origin();
        return m;
    }());
    if (sig.null != 0) throw InvalidGerm("invalid potential: degenerate metric at 0");
    MetricGerm germ = make_real_germ(std::move(g), {sig.pos, sig.neg});
    germ.meta["generator"] = "kaehler_potential";
    germ.meta["witnesses"] = witness_meta({{"J", block_J(n)}});
    return germ;
}

MetricGerm germ_from_parakaehler_potential(const Jet& u) {
    int two_n = u.nvars();
    if (two_n % 2 != 0) throw InvalidGerm("paraKaehler potential needs paired variables (x, y)");
    int n = two_n / 2;
    int K = u.order();
    for (const auto& [e, c] : u.terms())
        if (!c.is_real()) throw InvalidGerm("paraKaehler potential must have real coefficients");
    int d = 2 * n;
    std::vector<std::vector<Jet>> g(d, std::vector<Jet>(d, Jet(d, K)));
    Mat c0(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet c = u.partial(i).partial(n + j).truncated(K);
            c0.at(i, j) = c.value_at_origin();
            g[i][n + j] += c;
            g[n + j][i] += c;
        }
    if (det(c0).is_zero()) throw InvalidGerm("invalid potential: degenerate mixed Hessian at 0");
    MetricGerm germ = make_real_germ(std::move(g), {n, n});
    germ.meta["generator"] = "parakaehler_potential";
    germ.meta["witnesses"] = witness_meta({{"L", block_diag(Mat::identity(n), -Mat::identity(n))}});
    return germ;
}

// ---------------------------------------------------------------------------
// seeded generators

MetricGerm germ_type1(int d, int p, int q, std::uint64_t seed, int K) {
    if (p + q != d) throw InvalidGerm("germ_type1: p + q must equal d");
    Rng rng(seed);
    std::vector<std::vector<Jet>> g(d, std::vector<Jet>(d, Jet(d, K)));
    for (int i = 0; i < d; ++i) g[i][i] += Jet::constant(d, K, Scalar(i < p ? 1 : -1));
    // homogeneous degree-2 perturbation: second derivatives at 0 are free
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Jet h(d, K);
            for (int k = 0; k < d; ++k)
                for (int l = k; l < d; ++l) {
                    long c = rng.range(-2, 2);
                    if (c == 0) continue;
                    MultiIndex e(d, 0);
                    e[k] += 1;
                    e[l] += 1;
                    h.set_coeff(e, h.coeff(e) + Scalar(Rational(c)));
                }
            g[i][j] += h;
            if (j != i) g[j][i] += h;
        }
    MetricGerm germ = make_real_germ(std::move(g), {p, q});
    germ.meta["generator"] = "type1";
    germ.meta["seed"] = seed;
    return germ;
}

MetricGerm germ_kaehler(int n, int p, int q, std::uint64_t seed, int K) {
    if (p + q != n) throw InvalidGerm("germ_kaehler: p + q must equal n");
    Rng rng(seed);
    Jet u = kaehler_base_potential(n, p, q, K);
    // random real quartic: c z_i z_j zbar_k zbar_l + conj
    int terms = std::max(4, 2 * n * n);
    for (int t = 0; t < terms; ++t) {
        int i = static_cast<int>(rng.range(0, n - 1)), j = static_cast<int>(rng.range(0, n - 1));
        int k = static_cast<int>(rng.range(0, n - 1)), l = static_cast<int>(rng.range(0, n - 1));
        Scalar c(Rational(rng.range(-2, 2)), Rational(rng.range(-2, 2)));
        if (c.is_zero()) continue;
        MultiIndex e(2 * n, 0);
        e[i] += 1;
        e[j] += 1;
        e[n + k] += 1;
        e[n + l] += 1;
        u.set_coeff(e, u.coeff(e) + c);
        MultiIndex es(2 * n, 0);
        es[k] += 1;
        es[l] += 1;
        es[n + i] += 1;
        es[n + j] += 1;
        u.set_coeff(es, u.coeff(es) + c.conj());
    }
    MetricGerm germ = germ_from_kaehler_potential(u);
    germ.meta["generator"] = "kaehler";
    germ.meta["seed"] = seed;
    return germ;
}

MetricGerm germ_parakaehler(int n, std::uint64_t seed, int K) {
    Rng rng(seed);
    Jet u(2 * n, K);
    for (int i = 0; i < n; ++i) {
        MultiIndex e(2 * n, 0);
        e[i] = 1;
        e[n + i] = 1;
        u.set_coeff(e, Scalar(1));
    }
    int terms = std::max(4, 2 * n * n);
    for (int t = 0; t < terms; ++t) {
        // quartic with at least one x and one y factor
        MultiIndex e(2 * n, 0);
        e[rng.range(0, n - 1)] += 1;
        e[n + rng.range(0, n - 1)] += 1;
        e[rng.range(0, 2 * n - 1)] += 1;
        e[rng.range(0, 2 * n - 1)] += 1;
        long c = rng.small_nonzero(2);
        u.set_coeff(e, u.coeff(e) + Scalar(Rational(c)));
    }
    MetricGerm germ = germ_from_parakaehler_potential(u);
    germ.meta["generator"] = "parakaehler";
    germ.meta["seed"] = seed;
    return germ;
}

MetricGerm germ_complex_riemannian(int n, std::uint64_t seed, int K) {
    Rng rng(seed);
    std::vector<std::vector<Jet>> holo(n, std::vector<Jet>(n, Jet(n, K)));
    for (int i = 0; i < n; ++i) holo[i][i] += Jet::constant(n, K, Scalar(1));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Jet h(n, K);
            for (int k = 0; k < n; ++k)
                for (int l = k; l < n; ++l) {
                    Scalar c(Rational(rng.range(-2, 2)), Rational(rng.range(-2, 2)));
                    if (c.is_zero()) continue;
                    MultiIndex e(n, 0);
                    e[k] += 1;
                    e[l] += 1;
                    h.set_coeff(e, h.coeff(e) + c);
                }
            holo[i][j] += h;
            if (j != i) holo[j][i] += h;
        }
    MetricGerm germ = make_complex_germ(std::move(holo));
    germ.meta["generator"] = "complex_riemannian";
    germ.meta["seed"] = seed;
    germ.meta["witnesses"] = witness_meta({{"Jbar", *germ.Jbar}});
    return germ;
}

MetricGerm germ_complex_kaehler(int n, std::uint64_t seed, int K) {
    Rng rng(seed);
    // holomorphic potential on C^{2n} with variables (w_1..w_n, v_1..v_n)
    int nc = 2 * n;
    Jet u(nc, K);
    for (int i = 0; i < n; ++i) {
        MultiIndex e(nc, 0);
        e[i] = 1;
        e[n + i] = 1;
        u.set_coeff(e, Scalar(1));
    }
    int terms = std::max(4, 2 * n * n);
    for (int t = 0; t < terms; ++t) {
        MultiIndex e(nc, 0);
        e[rng.range(0, n - 1)] += 1;
        e[n + rng.range(0, n - 1)] += 1;
        e[rng.range(0, nc - 1)] += 1;
        e[rng.range(0, nc - 1)] += 1;
        Scalar c(Rational(rng.range(-2, 2)), Rational(rng.range(-2, 2)));
        if (c.is_zero()) continue;
        u.set_coeff(e, u.coeff(e) + c);
    }
    // holomorphic metric ghat(d/dw_i, d/dv_j) = d^2 u / dw_i dv_j
    std::vector<std::vector<Jet>> holo(nc, std::vector<Jet>(nc, Jet(nc, K)));
    Mat c0(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet c = u.partial(i).partial(n + j).truncated(K);
            c0.at(i, j) = c.value_at_origin();
            holo[i][n + j] += c;
            holo[n + j][i] += c;
        }
    if (det(c0).is_zero()) throw InvalidGerm("invalid potential: degenerate mixed Hessian at 0");
    MetricGerm germ = make_complex_germ(std::move(holo));
    germ.meta["generator"] = "complex_kaehler";
    germ.meta["seed"] = seed;
    // paracomplex structure: +1 on the w-block, -1 on the v-block, realified
    Mat lhat = block_diag(Mat::identity(n), -Mat::identity(n));
    Mat L = block_diag(lhat, lhat);
    std::map<std::string, Mat> w = {{"Jbar", *germ.Jbar}, {"L", L}, {"J", L * *germ.Jbar}};
    germ.meta["witnesses"] = witness_meta(w);
    return germ;
}

MetricGerm germ_plane_wave(int K) {
    int d = 4;
    std::vector<std::vector<Jet>> g(d, std::vector<Jet>(d, Jet(d, K)));
    // coordinates (u, v, x, y): 2 du dv + (x^2 + 2 y^2) du^2 + dx^2 + dy^2
    g[0][1] = Jet::constant(d, K, Scalar(1));
    g[1][0] = g[0][1];
    g[2][2] = Jet::constant(d, K, Scalar(1));
    g[3][3] = Jet::constant(d, K, Scalar(1));
    Jet h(d, K);
    MultiIndex ex(d, 0);
    ex[2] = 2;
    h.set_coeff(ex, Scalar(1));
    MultiIndex ey(d, 0);
    ey[3] = 2;
    h.set_coeff(ey, Scalar(2));
    g[0][0] = h;
    MetricGerm germ = make_real_germ(std::move(g), {3, 1});
    germ.meta["generator"] = "plane_wave";
    return germ;
}

MetricGerm germ_constant_curvature(int d, const Rational& c, int K) {
    Jet r2(d, K);
    for (int i = 0; i < d; ++i) {
        MultiIndex e(d, 0);
        e[i] = 2;
        r2.set_coeff(e, Scalar(1));
    }
    Jet base = Jet::constant(d, K, Scalar(1)) + Scalar(c) * r2;
    Jet f = (base * base).inverse();
    std::vector<std::vector<Jet>> g(d, std::vector<Jet>(d, Jet(d, K)));
    for (int i = 0; i < d; ++i) g[i][i] = f;
    MetricGerm germ = make_real_germ(std::move(g), {d, 0});
    germ.meta["generator"] = "constant_curvature";
    return germ;
}

// ---------------------------------------------------------------------------
// omega_H solver

namespace {

// Formal-complex jet matrix: value = re + i_formal * im, machine coefficients
// stay rational in the real construction and Gaussian-rational in the complex
// one. The formal unit is the complex structure of the base C^{2 delta}.
struct FormalJetMat {
    std::vector<std::vector<Jet>> re, im;

    static FormalJetMat zero(int n, int nvars, int order) {
        FormalJetMat m;
        m.re.assign(n, std::vector<Jet>(n, Jet(nvars, order)));
        m.im.assign(n, std::vector<Jet>(n, Jet(nvars, order)));
        return m;
    }
    int size() const { return static_cast<int>(re.size()); }
};

FormalJetMat fm_mul(const FormalJetMat& a, const FormalJetMat& b) {
    int n = a.size();
    int nv = a.re[0][0].nvars();
    int K = a.re[0][0].order();
    FormalJetMat out = FormalJetMat::zero(n, nv, K);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Jet &ar = a.re[i][k], &ai = a.im[i][k];
            if (ar.is_zero() && ai.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                const Jet &br = b.re[k][j], &bi = b.im[k][j];
                if (br.is_zero() && bi.is_zero()) continue;
                out.re[i][j] += ar * br - ai * bi;
                out.im[i][j] += ar * bi + ai * br;
            }
        }
    return out;
}

FormalJetMat fm_conj(const FormalJetMat& a) {
    FormalJetMat out = a;
    for (auto& row : out.im)
        for (auto& e : row) e = -e;
    return out;
}

// hermitian parameter basis for the degree coefficients: (a<=b, re) and
// (a<b, im)
struct HermParam {
    int a, b;
    bool imag;
};

std::vector<HermParam> herm_params(int n) {
    std::vector<HermParam> ps;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) ps.push_back({a, b, false});
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) ps.push_back({a, b, true});
    return ps;
}

// unit contribution of a parameter as a constant formal matrix
std::pair<Mat, Mat> herm_unit(const HermParam& p, int n) {
    Mat re(n, n), im(n, n);
    if (!p.imag) {
        re.at(p.a, p.b) = Scalar(1);
        re.at(p.b, p.a) = Scalar(1);
        if (p.a == p.b) re.at(p.a, p.a) = Scalar(1);
    } else {
        im.at(p.a, p.b) = Scalar(1);
        im.at(p.b, p.a) = Scalar(-1);
    }
    return {re, im};
}

std::vector<MultiIndex> monomials_of_degree(int nvars, int deg) {
    std::vector<MultiIndex> out;
    MultiIndex e(nvars, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars - 1) {
            e[pos] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    if (nvars > 0) rec(0, deg);
    return out;
}

}  // namespace

OmegaHGerm germ_omega_h(int delta, int eps, int p, int q, bool complex_case, int jet_order,
                        std::uint64_t seed) {
    if (delta < 1 || delta > 2) throw InvalidGerm("omega_h: delta must be 1 or 2");
    if (eps != 1 && eps != -1) throw InvalidGerm("omega_h: eps must be +1 or -1");
    if (eps == -1 && p + q != delta) throw InvalidGerm("omega_h: p + q must equal delta");
    if (jet_order < 2) throw InvalidGerm("omega_h: jet order must be at least 2");
    int n2 = 2 * delta;   // H is n2 x n2
    int nv = 4 * delta;   // real coordinates of C^{2 delta}
    int m = jet_order;
    Rng rng(seed);

    // base point: eps=-1 -> diag(I_p, -I_q, I_p, -I_q); eps=+1 -> diag(I_d, -I_d).
    // (Both are Hermitian and satisfy Hbar Omega0 H = -eps Omega0.)
    Mat H0(n2, n2);
    if (eps == -1) {
        Mat blk = block_Ipq(p, q);
        H0 = block_diag(blk, blk);
    } else {
        H0 = block_Ipq(delta, delta);
    }
    Mat Omega0(n2, n2);
    for (int i = 0; i < delta; ++i) {
        Omega0.at(i, delta + i) = Scalar(1);
        Omega0.at(delta + i, i) = Scalar(-1);
    }

    FormalJetMat H = FormalJetMat::zero(n2, nv, m);
    for (int a = 0; a < n2; ++a)
        for (int b = 0; b < n2; ++b) H.re[a][b] = Jet::constant(nv, m, H0.at(a, b));

    FormalJetMat OmegaF = FormalJetMat::zero(n2, nv, m);
    for (int a = 0; a < n2; ++a)
        for (int b = 0; b < n2; ++b) OmegaF.re[a][b] = Jet::constant(nv, m, Omega0.at(a, b));

    auto params = herm_params(n2);
    int nparams = static_cast<int>(params.size());
    Mat A = Omega0 * H0;  // conj(E) A + B E with B = H0 Omega0
    Mat B = H0 * Omega0;

    // omega entry of a parameter unit at a coordinate pair (alpha < beta)
    auto omega_entry = [&](const std::pair<Mat, Mat>& unit, int alpha, int beta) -> Scalar {
        int tl = 2 * delta;
        if (alpha < tl && beta < tl) return -unit.second.at(alpha, beta);
        if (alpha < tl && beta >= tl) return unit.first.at(alpha, beta - tl);
        return -unit.second.at(alpha - tl, beta - tl);
    };

    std::vector<std::pair<Mat, Mat>> units;
    for (const auto& pr : params) units.push_back(herm_unit(pr, n2));

    for (int r = 1; r <= m; ++r) {
        auto mons = monomials_of_degree(nv, r);
        auto prev = monomials_of_degree(nv, r - 1);
        std::map<MultiIndex, int> prev_index;
        for (size_t i = 0; i < prev.size(); ++i) prev_index[prev[i]] = static_cast<int>(i);
        std::map<MultiIndex, int> mon_index;
        for (size_t i = 0; i < mons.size(); ++i) mon_index[mons[i]] = static_cast<int>(i);

        int nunk = static_cast<int>(mons.size()) * nparams;
        // rows: constraint (2 per entry per monomial) + closedness
        int ntriples = nv * (nv - 1) * (nv - 2) / 6;
        int nrows_con = static_cast<int>(mons.size()) * 2 * n2 * n2;
        int nrows_clo = ntriples * static_cast<int>(prev.size());
        Mat sys(nrows_con + nrows_clo, nunk);
        Vec rhs(static_cast<size_t>(nrows_con + nrows_clo));

        // RHS of the constraint: -(Hbar Omega0 H + eps Omega0) at degree r
        FormalJetMat F = fm_mul(fm_conj(H), fm_mul(OmegaF, H));
        for (int a = 0; a < n2; ++a) {
            F.re[a][a] += Jet::constant(nv, m, Scalar(eps) * Omega0.at(a, a));
        }
        for (int a = 0; a < n2; ++a)
            for (int b = 0; b < n2; ++b)
                if (a != b) F.re[a][b] += Jet::constant(nv, m, Scalar(eps) * Omega0.at(a, b));

        for (size_t mi = 0; mi < mons.size(); ++mi) {
            const MultiIndex& mu = mons[mi];
            for (int a = 0; a < n2; ++a)
                for (int b = 0; b < n2; ++b) {
                    int row_re = (static_cast<int>(mi) * n2 * n2 + a * n2 + b) * 2;
                    int row_im = row_re + 1;
                    for (int pi = 0; pi < nparams; ++pi) {
                        // conj(E) A + B E, formal parts
                        const auto& [ure, uim] = units[pi];
                        Scalar mre, mim;
                        for (int k = 0; k < n2; ++k) {
                            mre += ure.at(a, k) * A.at(k, b) + B.at(a, k) * ure.at(k, b);
                            mim += -uim.at(a, k) * A.at(k, b) + B.at(a, k) * uim.at(k, b);
                        }
                        int col = static_cast<int>(mi) * nparams + pi;
                        sys.at(row_re, col) = mre;
                        sys.at(row_im, col) = mim;
                    }
                    rhs[row_re] = -F.re[a][b].coeff(mu);
                    rhs[row_im] = -F.im[a][b].coeff(mu);
                }
        }

        // closedness rows: (d omega)_{t1<t2<t3} coefficients at degree r-1
        int row0 = nrows_con;
        int trip = 0;
        for (int t1 = 0; t1 < nv; ++t1)
            for (int t2 = t1 + 1; t2 < nv; ++t2)
                for (int t3 = t2 + 1; t3 < nv; ++t3, ++trip)
                    for (size_t vi = 0; vi < prev.size(); ++vi) {
                        int row = row0 + trip * static_cast<int>(prev.size()) + static_cast<int>(vi);
                        const MultiIndex& nu = prev[vi];
                        struct Term {
                            int dir, pa, pb, sign;
                        };
                        Term terms[3] = {{t1, t2, t3, +1}, {t2, t1, t3, -1}, {t3, t1, t2, +1}};
                        for (const auto& tm : terms) {
                            MultiIndex mu = nu;
                            mu[tm.dir] += 1;
                            auto it = mon_index.find(mu);
                            if (it == mon_index.end()) continue;
                            Scalar factor(Rational(tm.sign * (nu[tm.dir] + 1)));
                            for (int pi = 0; pi < nparams; ++pi) {
                                Scalar w = omega_entry(units[pi], tm.pa, tm.pb);
                                if (w.is_zero()) continue;
                                int col = it->second * nparams + pi;
                                sys.at(row, col) += factor * w;
                            }
                        }
                        rhs[row] = Scalar(0);
                    }

        auto part = solve(sys, rhs);
        if (!part) {
            std::ostringstream os;
            os << "omega_h: constraints inconsistent at degree " << r;
            throw InvalidGerm(os.str());
        }
        Vec x = *part;
        auto free_dirs = nullspace(sys);
        bool any = false;
        for (const auto& dir : free_dirs) {
            long t = rng.range(-2, 2);
            long t2c = complex_case ? rng.range(-1, 1) : 0;
            if (t == 0 && t2c == 0) continue;
            any = true;
            Scalar c{Rational(t), Rational(t2c)};
            for (size_t i = 0; i < x.size(); ++i) x[i] += c * dir[i];
        }
        if (!any && !free_dirs.empty() && r == 1) {
            for (size_t i = 0; i < x.size(); ++i) x[i] += free_dirs[0][i];
        }

        // write the solved degree-r part into H
        for (size_t mi = 0; mi < mons.size(); ++mi)
            for (int pi = 0; pi < nparams; ++pi) {
                Scalar v = x[mi * nparams + pi];
                if (v.is_zero()) continue;
                const auto& [ure, uim] = units[pi];
                for (int a = 0; a < n2; ++a)
                    for (int b = 0; b < n2; ++b) {
                        if (!ure.at(a, b).is_zero())
                            H.re[a][b].set_coeff(mons[mi], H.re[a][b].coeff(mons[mi]) + v * ure.at(a, b));
                        if (!uim.at(a, b).is_zero())
                            H.im[a][b].set_coeff(mons[mi], H.im[a][b].coeff(mons[mi]) + v * uim.at(a, b));
                    }
            }
    }

    // verification: constraint to order m, closedness identically
    {
        FormalJetMat F = fm_mul(fm_conj(H), fm_mul(OmegaF, H));
        for (int a = 0; a < n2; ++a)
            for (int b = 0; b < n2; ++b) {
                Jet expect = Jet::constant(nv, m, Scalar(-eps) * Omega0.at(a, b));
                if (F.re[a][b] != expect || !F.im[a][b].is_zero())
                    throw std::logic_error("omega_h: H-space constraint failed after solve");
            }
        // omega components and d omega == 0
        auto comp = [&](int alpha, int beta) -> Jet {
            int tl = 2 * delta;
            if (alpha < tl && beta < tl) return -H.im[alpha][beta];
            if (alpha < tl && beta >= tl) return H.re[alpha][beta - tl];
            return -H.im[alpha - tl][beta - tl];
        };
        for (int t1 = 0; t1 < nv; ++t1)
            for (int t2 = t1 + 1; t2 < nv; ++t2)
                for (int t3 = t2 + 1; t3 < nv; ++t3) {
                    Jet dcomp = comp(t2, t3).partial(t1) - comp(t1, t3).partial(t2) + comp(t1, t2).partial(t3);
                    if (!dcomp.is_zero()) throw std::logic_error("omega_h: omega is not closed");
                }
    }

    // the metric: g(X_a, X_b) = -eps Re H_ab, g(X_a, Y_b) = -eps Im H_ab,
    // g(Y_a, Y_b) = -eps Re H_ab
    Scalar me(-eps);
    std::vector<std::vector<Jet>> gj(nv, std::vector<Jet>(nv, Jet(nv, m)));
    for (int a = 0; a < n2; ++a)
        for (int b = 0; b < n2; ++b) {
            gj[a][b] = me * H.re[a][b];
            gj[n2 + a][n2 + b] = me * H.re[a][b];
            gj[a][n2 + b] = me * H.im[a][b];
            gj[n2 + b][a] = me * H.im[a][b];
        }

    // witnesses at the origin
    Mat Jw(nv, nv);
    for (int a = 0; a < n2; ++a) {
        Jw.at(n2 + a, a) = Scalar(1);
        Jw.at(a, n2 + a) = Scalar(-1);
    }
    Mat V0 = Omega0 * H0;  // U(z) = V zbar
    Mat Uw(nv, nv);
    for (int a = 0; a < n2; ++a)
        for (int b = 0; b < n2; ++b) {
            Uw.at(a, b) = V0.at(a, b);       // P block (V0 is real here)
            Uw.at(n2 + a, n2 + b) = -V0.at(a, b);
        }

    OmegaHGerm out;
    out.certified_deriv_order = m - 2;
    if (!complex_case) {
        Mat g0(nv, nv);
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) g0.at(i, j) = gj[i][j].value_at_origin();
        Signature sig = congruence_signature(g0);
        MetricGerm germ = make_real_germ(std::move(gj), {sig.pos, sig.neg});
        germ.meta["generator"] = eps == -1 ? "omega_h(eps=-1)" : "omega_h(eps=+1)";
        germ.meta["seed"] = seed;
        germ.meta["jet_order"] = m;
        germ.meta["certified_deriv_order"] = out.certified_deriv_order;
        germ.meta["witnesses"] = witness_meta({{"J", Jw}, {"U", Uw}, {"JU", Jw * Uw}});
        out.germ = std::move(germ);
        out.J = Jw;
        out.U = Uw;
    } else {
        // holomorphic germ on C^{4 delta}; realification doubles everything
        MetricGerm germ = make_complex_germ(gj);
        germ.meta["generator"] = "omega_h(complex)";
        germ.meta["seed"] = seed;
        germ.meta["jet_order"] = m;
        germ.meta["certified_deriv_order"] = out.certified_deriv_order;
        auto realify = [&](const Mat& mcx) {
            Mat re(nv, nv), im(nv, nv);
            for (int i = 0; i < nv; ++i)
                for (int j = 0; j < nv; ++j) {
                    re.at(i, j) = Scalar(mcx.at(i, j).re);
                    im.at(i, j) = Scalar(mcx.at(i, j).im);
                }
            Mat out2(2 * nv, 2 * nv);
            for (int i = 0; i < nv; ++i)
                for (int j = 0; j < nv; ++j) {
                    out2.at(i, j) = re.at(i, j);
                    out2.at(i, nv + j) = -im.at(i, j);
                    out2.at(nv + i, j) = im.at(i, j);
                    out2.at(nv + i, nv + j) = re.at(i, j);
                }
            return out2;
        };
        Mat Jr = realify(Jw), Ur = realify(Uw);
        germ.meta["witnesses"] = witness_meta({{"J", Jr}, {"U", Ur}, {"JU", Jr * Ur}});
        out.J = Jr;
        out.U = Ur;
        out.germ = std::move(germ);
    }
    return out;
}

// ---------------------------------------------------------------------------
// normal forms, gauge change, negative control

bool signature_admissible(TypeLabel label, int p, int q) {
    switch (label) {
        case TypeLabel::Generic: return p + q >= 1;
        case TypeLabel::ComplexRiemannian: return p == q && p >= 1;
        case TypeLabel::Kaehler: return p % 2 == 0 && q % 2 == 0 && p + q >= 2;
        case TypeLabel::ParaKaehler: return p == q && p >= 1;
        case TypeLabel::ComplexKaehler: return p == q && p % 2 == 0 && p >= 2;
        case TypeLabel::HyperKaehler: return p % 4 == 0 && q % 4 == 0 && p + q >= 4;
        case TypeLabel::ParaHyperKaehler: return p == q && p % 2 == 0 && p >= 2;
        case TypeLabel::ComplexHyperKaehler: return p == q && p % 4 == 0 && p >= 4;
        default: return false;
    }
}

NormalFormFrame normal_form_frame(TypeLabel label, int p, int q) {
    if (!signature_admissible(label, p, q)) {
        std::ostringstream os;
        os << "signature (" << p << "," << q << ") is not admissible for type " << label_code(label);
        throw InvalidGerm(os.str());
    }
    NormalFormFrame f;
    switch (label) {
        case TypeLabel::Generic: {
            f.g = block_Ipq(p, q);
            break;
        }
        case TypeLabel::ComplexRiemannian: {
            f.g = block_Ipq(p, p);
            f.structures.mats["Jbar"] = block_J(p);
            break;
        }
        case TypeLabel::Kaehler: {
            int a = p / 2, b = q / 2;  // signature (2a, 2b), d = 2(a+b)
            Mat ipq = block_Ipq(a, b);
            f.g = block_diag(ipq, ipq);
            f.structures.mats["J"] = block_J(a + b);
            break;
        }
        case TypeLabel::ParaKaehler: {
            f.g = block_Ipq(p, p);
            f.structures.mats["L"] = block_L(p);
            break;
        }
        case TypeLabel::ComplexKaehler: {
            int pp = p / 2;  // signature (2p, 2p), d = 4p
            f.g = block_L(2 * pp);
            Mat L = block_Ipq(2 * pp, 2 * pp);
            Mat Jb = block_diag(block_J(pp), -block_J(pp));
            f.structures.mats["L"] = L;
            f.structures.mats["Jbar"] = Jb;
            f.structures.mats["J"] = L * Jb;
            break;
        }
        case TypeLabel::HyperKaehler: {
            int a = p / 4, b = q / 4;  // signature (4a,4b), d = 4(a+b)
            int n = a + b;             // d/4
            Mat ipq = block_Ipq(a, b);
            f.g = block_diag(block_diag(ipq, ipq), block_diag(ipq, ipq));
            f.structures.mats["J2"] = block_J(2 * n);
            f.structures.mats["J1"] = block_diag(-block_J(n), block_J(n));
            f.structures.mats["J3"] = block_offdiag(block_J(n), block_J(n));
            break;
        }
        case TypeLabel::ParaHyperKaehler: {
            int pp = p / 2;  // signature (2p,2p), d = 4p
            f.g = block_Ipq(2 * pp, 2 * pp);
            f.structures.mats["L1"] = block_L(2 * pp);
            f.structures.mats["J"] = block_diag(-block_J(pp), block_J(pp));
            f.structures.mats["L2"] = block_offdiag(-block_J(pp), block_J(pp));
            break;
        }
        case TypeLabel::ComplexHyperKaehler: {
            int pp = p / 4;  // signature (4p,4p), d = 8p
            f.g = block_diag(block_Ipq(2 * pp, 2 * pp), -block_Ipq(2 * pp, 2 * pp));
            f.structures.mats["Jbar"] = block_diag(block_J(2 * pp), block_J(2 * pp));
            Mat jp = block_J(pp);
            f.structures.mats["J"] = block_diag(block_diag(jp, jp), block_diag(-jp, -jp));
            f.structures.mats["L1"] = block_L(4 * pp);
            Mat djp = block_diag(jp, jp);
            f.structures.mats["L2"] = block_offdiag(djp, -djp);
            break;
        }
        default:
            throw InvalidGerm("no normal form for this label");
    }
    return f;
}

Mat parakaehler_gauge_change(int p) {
    Mat q(2 * p, 2 * p);
    for (int i = 0; i < p; ++i) {
        q.at(i, i) = Scalar(1);
        q.at(i, p + i) = Scalar(1);
        q.at(p + i, i) = Scalar(1);
        q.at(p + i, p + i) = Scalar(-1);
    }
    return q;
}

NegativeControl hh_negative_control() {
    // left multiplications by i, j, k on H = R^4 in the basis (1, i, j, k)
    auto lmul = [&](int which) {
        Mat m(4, 4);
        auto set = [&](int row, int col, int v) { m.at(row, col) = Scalar(v); };
        if (which == 1) {  // i
            set(1, 0, 1); set(0, 1, -1); set(3, 2, 1); set(2, 3, -1);
        } else if (which == 2) {  // j
            set(2, 0, 1); set(3, 1, -1); set(0, 2, -1); set(1, 3, 1);
        } else {  // k
            set(3, 0, 1); set(2, 1, 1); set(1, 2, -1); set(0, 3, -1);
        }
        return m;
    };
    NegativeControl nc;
    nc.gram = block_L(4);
    nc.span.d = 8;
    nc.span.basis.push_back(block_diag(Mat::identity(4), -Mat::identity(4)));
    for (int w : {1, 2, 3}) nc.span.basis.push_back(block_diag(lmul(w), lmul(w)));
    nc.span.bracket_closed = true;  // re-checked in tests
    // invariance of the quadratic form: W^T G + G W = 0
    for (const auto& w : nc.span.basis)
        if (!(w.transpose() * nc.gram + nc.gram * w).is_zero())
            throw std::logic_error("negative control: span does not preserve the form");
    return nc;
}

// ---------------------------------------------------------------------------
// generation with retries

MetricGerm generate_generic(TypeLabel label, int p, int q, std::uint64_t seed, int max_retries) {
    auto expected_dim = [&]() -> int {
        switch (label) {
            case TypeLabel::Generic: {
                int d = p + q;
                return d * (d - 1) / 2;
            }
            case TypeLabel::ComplexRiemannian: return p * (p - 1);
            case TypeLabel::Kaehler: {
                int n = (p + q) / 2;
                return n * n;
            }
            case TypeLabel::ParaKaehler: return p * p;
            case TypeLabel::ComplexKaehler: {
                int n = p / 2;
                return 2 * n * n;
            }
            case TypeLabel::HyperKaehler: {
                int dl = (p + q) / 4;
                return dl * (2 * dl + 1);
            }
            case TypeLabel::ParaHyperKaehler: {
                int dl = p / 2;
                return dl * (2 * dl + 1);
            }
            case TypeLabel::ComplexHyperKaehler: {
                int dl = p / 4;
                return 2 * dl * (2 * dl + 1);
            }
            default: throw InvalidGerm("cannot generate this label");
        }
    }();
    if (!signature_admissible(label, p, q)) {
        std::ostringstream os;
        os << "signature (" << p << "," << q << ") is not admissible for type " << label_code(label);
        throw InvalidGerm(os.str());
    }

    Json seeds_tried = Json::array();
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
        seeds_tried.push_back(s);
        MetricGerm germ;
        int deriv_cap = 2;
        switch (label) {
            case TypeLabel::Generic: germ = germ_type1(p + q, p, q, s); break;
            case TypeLabel::ComplexRiemannian: germ = germ_complex_riemannian(p, s); break;
            case TypeLabel::Kaehler: germ = germ_kaehler((p + q) / 2, p / 2, q / 2, s); break;
            case TypeLabel::ParaKaehler: germ = germ_parakaehler(p, s); break;
            case TypeLabel::ComplexKaehler: germ = germ_complex_kaehler(p / 2, s); break;
            case TypeLabel::HyperKaehler: {
                auto oh = germ_omega_h((p + q) / 4, -1, p / 4, q / 4, false, 3, s);
                germ = std::move(oh.germ);
                deriv_cap = oh.certified_deriv_order;
                break;
            }
            case TypeLabel::ParaHyperKaehler: {
                auto oh = germ_omega_h(p / 2, +1, 0, 0, false, 3, s);
                germ = std::move(oh.germ);
                deriv_cap = oh.certified_deriv_order;
                break;
            }
            case TypeLabel::ComplexHyperKaehler: {
                auto oh = germ_omega_h(p / 4, -1, p / 4, 0, true, 3, s);
                germ = std::move(oh.germ);
                deriv_cap = oh.certified_deriv_order;
                break;
            }
            default: throw InvalidGerm("cannot generate this label");
        }
        int cap = std::min(deriv_cap, germ.K - 2);
        auto curv = curvature(germ, cap);
        auto hol = holonomy_span(curv);
        if (hol.span.dim() == expected_dim) {
            germ.meta["expected_label"] = label_code(label);
            germ.meta["expected_holonomy_dim"] = expected_dim;
            germ.meta["seeds_tried"] = seeds_tried;
            if (!germ.meta.contains("certified_deriv_order")) germ.meta["certified_deriv_order"] = cap;
            return germ;
        }
    }
    std::ostringstream os;
    os << "generate_generic: no generic germ for type " << label_code(label) << " after "
       << (max_retries + 1) << " seeds (tried " << seeds_tried.dump() << ")";
    throw InvalidGerm(os.str());
}

}  // namespace pea
