#include "pea/cartan.hpp"

#include <functional>
#include <stdexcept>

namespace pea {

namespace {

// hermitian parametrization of candidate tangent matrices (ᵗT = T̄)
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

FCMat herm_unit(const HermParam& p, int n) {
    FCMat m(n, FCVec(n));
    if (!p.imag) {
        m[p.a][p.b] = m[p.a][p.b] + FC(Scalar(1));
        if (p.a != p.b) m[p.b][p.a] = m[p.b][p.a] + FC(Scalar(1));
    } else {
        m[p.a][p.b] = m[p.a][p.b] + FC(Scalar(0), Scalar(1));
        m[p.b][p.a] = m[p.b][p.a] - FC(Scalar(0), Scalar(1));
    }
    return m;
}

FCMat fc_scale(const FC& c, const FCMat& m) {
    FCMat out = m;
    for (auto& row : out)
        for (auto& e : row) e = c * e;
    return out;
}

FCMat fc_add(const FCMat& a, const FCMat& b) {
    FCMat out = a;
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j < out[i].size(); ++j) out[i][j] = out[i][j] + b[i][j];
    return out;
}

// t(u) M conj(w) for formal vectors and matrix
FC sandwich(const FCVec& u, const FCMat& m, const FCVec& w) {
    FC acc;
    int n = static_cast<int>(u.size());
    for (int i = 0; i < n; ++i) {
        if (u[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (w[j].is_zero() || m[i][j].is_zero()) continue;
            acc = acc + u[i] * m[i][j] * w[j].conj();
        }
    }
    return acc;
}

FCVec unit_vec(int n, int i) {
    FCVec v(n);
    v[i] = FC(Scalar(1));
    return v;
}

FCVec j_times(const FCVec& v) {
    FCVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = FC::j() * v[i];
    return out;
}

}  // namespace

TangentModel build_tangent_model(int delta, int eps, int p, int q, bool complex_case) {
    if (delta < 1) throw std::invalid_argument("cartan: delta must be positive");
    if (!complex_case && eps != 1 && eps != -1)
        throw std::invalid_argument("cartan: eps must be +1 or -1");
    if (complex_case) eps = -1;  // conventional; immaterial over C
    if (eps == -1 && p + q != delta)
        throw std::invalid_argument("cartan: p + q must equal delta for eps = -1");

    TangentModel tm;
    tm.delta = delta;
    tm.eps = eps;
    tm.p = p;
    tm.q = q;
    tm.complex_case = complex_case;

    int n2 = 2 * delta;
    tm.H0 = Mat(n2, n2);
    if (eps == -1) {
        for (int i = 0; i < delta; ++i) {
            Scalar s(i < p ? 1 : -1);
            tm.H0.at(i, i) = s;
            tm.H0.at(delta + i, delta + i) = s;
        }
    } else {
        for (int i = 0; i < delta; ++i) {
            tm.H0.at(i, i) = Scalar(1);
            tm.H0.at(delta + i, delta + i) = Scalar(-1);
        }
    }
    tm.Omega0 = Mat(n2, n2);
    for (int i = 0; i < delta; ++i) {
        tm.Omega0.at(i, delta + i) = Scalar(1);
        tm.Omega0.at(delta + i, i) = Scalar(-1);
    }

    // W = {T hermitian : conj(T) Omega0 H0 + H0 Omega0 T = 0} as a nullspace
    auto params = herm_params(n2);
    Mat A = tm.Omega0 * tm.H0;
    Mat B = tm.H0 * tm.Omega0;
    Mat sys(2 * n2 * n2, static_cast<int>(params.size()));
    for (size_t pi = 0; pi < params.size(); ++pi) {
        FCMat e = herm_unit(params[pi], n2);
        for (int a = 0; a < n2; ++a)
            for (int b = 0; b < n2; ++b) {
                FC acc;
                for (int k = 0; k < n2; ++k) {
                    // conj(E) A + B E at (a,b)
                    acc = acc + e[a][k].conj() * FC(A.at(k, b)) + FC(B.at(a, k)) * e[k][b];
                }
                sys.at(2 * (a * n2 + b), static_cast<int>(pi)) = acc.re;
                sys.at(2 * (a * n2 + b) + 1, static_cast<int>(pi)) = acc.im;
            }
    }
    for (const auto& coords : nullspace(sys)) {
        FCMat t(n2, FCVec(n2));
        for (size_t pi = 0; pi < params.size(); ++pi)
            if (!coords[pi].is_zero()) t = fc_add(t, fc_scale(FC(coords[pi]), herm_unit(params[pi], n2)));
        tm.W.push_back(t);
    }
    if (static_cast<int>(tm.W.size()) != 2 * delta * delta + delta)
        throw std::logic_error("cartan: tangent space dimension is not 2 delta^2 + delta");

    // flag vectors: e_j = dx_j (j<=delta), e_{delta+j} = dx_{delta+j} + ((j-1)/delta) dy_{delta+j},
    // e_{2delta+j} = dy_j
    for (int j = 1; j <= delta; ++j) tm.flag.push_back(unit_vec(n2, j - 1));
    for (int j = 1; j <= delta; ++j) {
        FCVec v(n2);
        v[delta + j - 1] = FC(Scalar(1), Scalar(Rational(j - 1, delta)));
        tm.flag.push_back(v);
    }
    for (int j = 1; j <= 2 * delta; ++j) tm.flag.push_back(j_times(unit_vec(n2, j - 1)));
    return tm;
}

std::vector<int> polar_characters(const TangentModel& tm) {
    int nW = static_cast<int>(tm.W.size());
    int fourd = 4 * tm.delta;
    std::vector<int> nullity(fourd + 1, nW);
    for (int k = 1; k <= fourd; ++k) {
        // conditions lambda(v, e_i, e_j) = 0 for i < j <= k on the W-part of v
        std::vector<Vec> rows;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                Vec row_re(nW), row_im(nW);
                for (int b = 0; b < nW; ++b) {
                    FC val = sandwich(tm.flag[j], tm.W[b], tm.flag[i]) -
                             sandwich(tm.flag[i], tm.W[b], tm.flag[j]);
                    row_re[b] = val.re;
                    row_im[b] = val.im;
                }
                rows.push_back(row_re);
                rows.push_back(row_im);
            }
        if (rows.empty()) {
            nullity[k] = nW;
            continue;
        }
        Mat sys = Mat::from_rows(rows);
        nullity[k] = nW - rank(sys);
    }
    std::vector<int> s;
    for (int k = 1; k <= fourd; ++k) s.push_back(nullity[k - 1] - nullity[k]);
    return s;
}

namespace {

// row of the linear form H^(1) -> lambda_{H^(1)}(va, vb, vc) over the
// unknowns x_{m,B}, m a domain index (4 delta of them), B a W-basis index.
// Returns two Scalar rows (formal re and im).
struct LambdaRows {
    Vec re, im;
};

LambdaRows lambda_row(const TangentModel& tm, const std::vector<FCVec>& domain, int a, int b, int c) {
    int nW = static_cast<int>(tm.W.size());
    int nd = static_cast<int>(domain.size());
    LambdaRows out;
    out.re.assign(static_cast<size_t>(nd) * nW, Scalar(0));
    out.im.assign(static_cast<size_t>(nd) * nW, Scalar(0));
    const FCVec &va = domain[a], &vb = domain[b], &vc = domain[c];
    for (int bi = 0; bi < nW; ++bi) {
        const FCMat& w = tm.W[bi];
        // H-leg on slot a
        FC ca = sandwich(vc, w, vb) - sandwich(vb, w, vc);
        // H-leg on slot b
        FC cb = sandwich(va, w, vc) - sandwich(vc, w, va);
        // H-leg on slot c
        FC cc = sandwich(vb, w, va) - sandwich(va, w, vb);
        out.re[static_cast<size_t>(a) * nW + bi] += ca.re;
        out.im[static_cast<size_t>(a) * nW + bi] += ca.im;
        out.re[static_cast<size_t>(b) * nW + bi] += cb.re;
        out.im[static_cast<size_t>(b) * nW + bi] += cb.im;
        out.re[static_cast<size_t>(c) * nW + bi] += cc.re;
        out.im[static_cast<size_t>(c) * nW + bi] += cc.im;
    }
    return out;
}

std::vector<FCVec> standard_domain(const TangentModel& tm) {
    int n2 = 2 * tm.delta;
    std::vector<FCVec> domain;
    for (int i = 0; i < n2; ++i) domain.push_back(unit_vec(n2, i));
    for (int i = 0; i < n2; ++i) domain.push_back(j_times(unit_vec(n2, i)));
    return domain;
}

// generalized lambda row for arbitrary formal argument vectors
LambdaRows lambda_row_vectors(const TangentModel& tm, const std::vector<FCVec>& domain,
                              const FCVec& va, const FCVec& vb, const FCVec& vc) {
    // decompose each argument over the standard domain: arguments used by the
    // redundancy relations are +- domain vectors or j * domain vectors, so a
    // direct expansion against H^(1) coordinates needs the real-linear
    // decomposition of each argument.
    // Each formal vector v decomposes as sum_m coeff_m * domain_m with real
    // rational coefficients: v = sum_i (re_i + j im_i) e_i = sum_i re_i (e_i)
    // + im_i (j e_i).
    int n2 = 2 * tm.delta;
    int nd = static_cast<int>(domain.size());
    int nW = static_cast<int>(tm.W.size());
    auto coords = [&](const FCVec& v) {
        Vec c(nd);
        for (int i = 0; i < n2; ++i) {
            c[i] = v[i].re;
            c[n2 + i] = v[i].im;
        }
        return c;
    };
    Vec ca = coords(va), cb = coords(vb), cc = coords(vc);
    LambdaRows acc;
    acc.re.assign(static_cast<size_t>(nd) * nW, Scalar(0));
    acc.im.assign(static_cast<size_t>(nd) * nW, Scalar(0));
    for (int x = 0; x < nd; ++x) {
        if (ca[x].is_zero()) continue;
        for (int y = 0; y < nd; ++y) {
            if (cb[y].is_zero()) continue;
            for (int z = 0; z < nd; ++z) {
                if (cc[z].is_zero()) continue;
                if (x == y || y == z || x == z) continue;  // alternating form
                LambdaRows base = lambda_row(tm, domain, x, y, z);
                Scalar f = ca[x] * cb[y] * cc[z];
                for (size_t t = 0; t < acc.re.size(); ++t) {
                    acc.re[t] += f * base.re[t];
                    acc.im[t] += f * base.im[t];
                }
            }
        }
    }
    return acc;
}

}  // namespace

int integral_variety_dim(const TangentModel& tm) {
    auto domain = standard_domain(tm);
    int nd = static_cast<int>(domain.size());
    int nW = static_cast<int>(tm.W.size());
    std::vector<Vec> rows;
    for (int a = 0; a < nd; ++a)
        for (int b = a + 1; b < nd; ++b)
            for (int c = b + 1; c < nd; ++c) {
                LambdaRows lr = lambda_row(tm, domain, a, b, c);
                rows.push_back(lr.re);
                rows.push_back(lr.im);
            }
    Mat sys = Mat::from_rows(rows);
    return nd * nW - rank(sys);
}

FlagReport cartan_test(int delta, int eps, int p, int q, bool complex_case) {
    TangentModel tm = build_tangent_model(delta, eps, p, q, complex_case);
    FlagReport rep;
    rep.delta = delta;
    rep.eps = tm.eps;
    rep.complex_case = complex_case;
    rep.p = tm.p;
    rep.q = tm.q;
    rep.dim_W = static_cast<int>(tm.W.size());
    rep.characters = polar_characters(tm);
    rep.dim_V = integral_variety_dim(tm);
    rep.cartan_bound = 0;
    for (size_t k = 1; k <= rep.characters.size(); ++k)
        rep.cartan_bound += static_cast<long>(k) * rep.characters[k - 1];
    rep.involutive = (rep.cartan_bound == rep.dim_V);
    rep.last_nonzero_index = 0;
    rep.last_nonzero_value = 0;
    for (size_t k = 1; k <= rep.characters.size(); ++k)
        if (rep.characters[k - 1] != 0) {
            rep.last_nonzero_index = static_cast<int>(k);
            rep.last_nonzero_value = rep.characters[k - 1];
        }

    // horizontal triples are integral: every term of lambda carries exactly
    // one W-leg, so the full form vanishes on flag triples with zero W part
    rep.horizontal_integral_ok = true;
    {
        int n2loc = 2 * delta;
        FCMat zeroW(n2loc, FCVec(n2loc));
        auto lambda_full = [&](const FCVec& a_z, const FCMat& a_w, const FCVec& b_z,
                               const FCMat& b_w, const FCVec& c_z, const FCMat& c_w) {
            FC acc = sandwich(a_z, b_w, c_z) - sandwich(a_z, c_w, b_z) - sandwich(b_z, a_w, c_z) +
                     sandwich(b_z, c_w, a_z) + sandwich(c_z, a_w, b_z) - sandwich(c_z, b_w, a_z);
            return acc;
        };
        for (size_t a = 0; a < tm.flag.size() && rep.horizontal_integral_ok; ++a)
            for (size_t b = a + 1; b < tm.flag.size() && rep.horizontal_integral_ok; ++b)
                for (size_t c = b + 1; c < tm.flag.size() && rep.horizontal_integral_ok; ++c)
                    if (!lambda_full(tm.flag[a], zeroW, tm.flag[b], zeroW, tm.flag[c], zeroW).is_zero())
                        rep.horizontal_integral_ok = false;
    }

    // redundancy relations between the polar equations
    auto domain = standard_domain(tm);
    int nd = static_cast<int>(domain.size());
    int nW = static_cast<int>(tm.W.size());
    rep.relations_hold = true;
    std::vector<Vec> relation_coeff_rows;  // over the lambda-form basis (sorted triples)
    int n2 = 2 * delta;

    // ground vectors g_0..g_{2delta-1} = u_1..u_delta, J u_1..J u_delta
    struct Ground {
        int index;  // 1-based i
        int alpha;  // J power
    };
    std::vector<Ground> ground;
    for (int i = 1; i <= delta; ++i) ground.push_back({i, 0});
    for (int i = 1; i <= delta; ++i) ground.push_back({i, 1});

    // argument vector for (index, alpha, primed, extraJ)
    auto arg_vec = [&](const Ground& g, bool primed, int extraJ) {
        FCVec v = unit_vec(n2, (primed ? delta : 0) + g.index - 1);
        int jp = (g.alpha + extraJ) % 4;
        for (int t = 0; t < jp; ++t) v = j_times(v);
        return v;
    };
    // decompose an argument triple over sorted domain triples for the
    // independence count
    auto form_coords = [&](const FCVec& v1, const FCVec& v2, const FCVec& v3, const Scalar& coef,
                           std::map<std::array<int, 3>, Scalar>& into) {
        auto coords = [&](const FCVec& v) {
            Vec c(nd);
            for (int i = 0; i < n2; ++i) {
                c[i] = v[i].re;
                c[n2 + i] = v[i].im;
            }
            return c;
        };
        Vec c1 = coords(v1), c2 = coords(v2), c3 = coords(v3);
        for (int x = 0; x < nd; ++x) {
            if (c1[x].is_zero()) continue;
            for (int y = 0; y < nd; ++y) {
                if (c2[y].is_zero()) continue;
                for (int z = 0; z < nd; ++z) {
                    if (c3[z].is_zero() || x == y || y == z || x == z) continue;
                    std::array<int, 3> key{x, y, z};
                    int sign = 1;
                    // sort with permutation sign
                    if (key[0] > key[1]) { std::swap(key[0], key[1]); sign = -sign; }
                    if (key[1] > key[2]) { std::swap(key[1], key[2]); sign = -sign; }
                    if (key[0] > key[1]) { std::swap(key[0], key[1]); sign = -sign; }
                    into[key] += Scalar(Rational(sign)) * coef * c1[x] * c2[y] * c3[z];
                }
            }
        }
    };

    int ng = static_cast<int>(ground.size());
    for (int a = 0; a < ng; ++a)
        for (int b = a + 1; b < ng; ++b)
            for (int c = b + 1; c < ng; ++c) {
                const Ground &U = ground[a], &V = ground[b], &Wg = ground[c];
                auto chi = [&](int i) { return i <= tm.p ? 1 : 0; };
                long e1, e2, e3;
                if (tm.eps == 1) {
                    e1 = ((Wg.alpha - V.alpha) % 2 + 2) % 2 ? -1 : 1;
                    e2 = ((U.alpha - Wg.alpha) % 2 + 2) % 2 ? -1 : 1;
                    e3 = ((V.alpha - U.alpha) % 2 + 2) % 2 ? -1 : 1;
                } else {
                    auto sgnpow = [](long k) { return (k % 2 + 2) % 2 ? -1 : 1; };
                    e1 = sgnpow(Wg.alpha - V.alpha) * sgnpow(chi(Wg.index) + chi(V.index));
                    e2 = sgnpow(U.alpha - Wg.alpha) * sgnpow(chi(U.index) + chi(Wg.index));
                    e3 = sgnpow(V.alpha - U.alpha) * sgnpow(chi(V.index) + chi(U.index));
                }
                Scalar h1{Rational(e1)}, h2{Rational(e2)}, h3{Rational(e3)}, he{Rational(tm.eps)};

                // the four relation types: lists of (coef, primed flags, extra J)
                struct Term {
                    Scalar coef;
                    bool p1, p2, p3;
                    int j1, j2, j3;
                };
                std::vector<std::vector<Term>> relations;
                relations.push_back({Term{h1, true, false, false, 0, 0, 0},
                                     Term{h2, false, true, false, 0, 0, 0},
                                     Term{h3, false, false, true, 0, 0, 0},
                                     Term{he, true, true, true, 0, 0, 0}});
                relations.push_back({Term{h1, true, false, false, 1, 0, 0},
                                     Term{h2, false, true, false, 0, 1, 0},
                                     Term{h3, false, false, true, 0, 0, 1},
                                     Term{he, true, true, true, 1, 1, 1}});
                relations.push_back({Term{h1, false, true, true, 0, 0, 0},
                                     Term{h2, true, false, true, 0, 0, 0},
                                     Term{h3, true, true, false, 0, 0, 0},
                                     Term{he, false, false, false, 0, 0, 0}});
                relations.push_back({Term{h1, false, true, true, 0, 1, 1},
                                     Term{h2, true, false, true, 1, 0, 1},
                                     Term{h3, true, true, false, 1, 1, 0},
                                     Term{he, false, false, false, 0, 0, 0}});
                for (const auto& rel : relations) {
                    Vec acc_re(static_cast<size_t>(nd) * nW, Scalar(0));
                    Vec acc_im(static_cast<size_t>(nd) * nW, Scalar(0));
                    std::map<std::array<int, 3>, Scalar> form;
                    for (const auto& t : rel) {
                        FCVec v1 = arg_vec(U, t.p1, t.j1);
                        FCVec v2 = arg_vec(V, t.p2, t.j2);
                        FCVec v3 = arg_vec(Wg, t.p3, t.j3);
                        LambdaRows lr = lambda_row_vectors(tm, domain, v1, v2, v3);
                        for (size_t i = 0; i < acc_re.size(); ++i) {
                            acc_re[i] += t.coef * lr.re[i];
                            acc_im[i] += t.coef * lr.im[i];
                        }
                        form_coords(v1, v2, v3, t.coef, form);
                    }
                    for (const auto& x : acc_re)
                        if (!x.is_zero()) rep.relations_hold = false;
                    for (const auto& x : acc_im)
                        if (!x.is_zero()) rep.relations_hold = false;
                    // coefficient row over sorted-triple form basis
                    Vec row;
                    row.reserve(static_cast<size_t>(nd) * nd * nd);
                    for (int x = 0; x < nd; ++x)
                        for (int y = x + 1; y < nd; ++y)
                            for (int z = y + 1; z < nd; ++z) {
                                auto it = form.find({x, y, z});
                                row.push_back(it == form.end() ? Scalar(0) : it->second);
                            }
                    relation_coeff_rows.push_back(std::move(row));
                }
            }
    rep.relation_count = static_cast<int>(relation_coeff_rows.size());
    if (relation_coeff_rows.empty()) {
        rep.relations_independent = true;
    } else {
        Mat rel = Mat::from_rows(relation_coeff_rows);
        rep.relations_independent = (rank(rel) == rel.rows());
    }
    return rep;
}

}  // namespace pea
