#include "pea/geometry.hpp"

#include <sstream>
#include <stdexcept>

namespace pea {

namespace {

// inverse of a jet matrix with invertible constant term, at the entries' order
std::vector<std::vector<Jet>> invert_jet_matrix(const std::vector<std::vector<Jet>>& g, int order) {
    int d = static_cast<int>(g.size());
    int n = g[0][0].nvars();
    Mat g0(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g0.at(i, j) = g[i][j].value_at_origin();
    auto g0inv = inverse(g0);
    if (!g0inv) throw InvalidGerm("invalid germ: g(0) singular");

    // g = g0 (I + m) with m = g0^{-1} h of valuation >= 1; finite Neumann series
    std::vector<std::vector<Jet>> m(d, std::vector<Jet>(d, Jet(n, order)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Jet acc(n, order);
            for (int k = 0; k < d; ++k) {
                if (g0inv->at(i, k).is_zero()) continue;
                Jet h = g[k][j].truncated(order);
                h -= Jet::constant(n, order, g0.at(k, j));
                acc += g0inv->at(i, k) * h;
            }
            m[i][j] = acc;
        }

    auto matmul = [&](const std::vector<std::vector<Jet>>& a, const std::vector<std::vector<Jet>>& b) {
        std::vector<std::vector<Jet>> out(d, std::vector<Jet>(d, Jet(n, order)));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                if (a[i][k].is_zero()) continue;
                for (int j = 0; j < d; ++j) {
                    if (b[k][j].is_zero()) continue;
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        return out;
    };

    std::vector<std::vector<Jet>> series(d, std::vector<Jet>(d, Jet(n, order)));
    for (int i = 0; i < d; ++i) series[i][i] = Jet::constant(n, order, Scalar(1));
    std::vector<std::vector<Jet>> pw = series;
    for (int k = 1; k <= order; ++k) {
        pw = matmul(pw, m);
        bool zero = true;
        for (int i = 0; i < d && zero; ++i)
            for (int j = 0; j < d && zero; ++j) zero = pw[i][j].is_zero();
        if (zero) break;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (k % 2 == 1)
                    series[i][j] -= pw[i][j];
                else
                    series[i][j] += pw[i][j];
            }
    }
    // ginv = series * g0inv
    std::vector<std::vector<Jet>> ginv(d, std::vector<Jet>(d, Jet(n, order)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Jet acc(n, order);
            for (int k = 0; k < d; ++k)
                if (!g0inv->at(k, j).is_zero()) acc += g0inv->at(k, j) * series[i][k];
            ginv[i][j] = acc;
        }
    return ginv;
}

}  // namespace

ChristoffelJets christoffel_from_jets(const std::vector<std::vector<Jet>>& g, int order) {
    int d = static_cast<int>(g.size());
    int n = g[0][0].nvars();
    auto ginv = invert_jet_matrix(g, order);

    // partials of g truncated to `order`
    std::vector<std::vector<std::vector<Jet>>> dg(d, std::vector<std::vector<Jet>>(d, std::vector<Jet>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int l = 0; l < d; ++l) dg[l][i][j] = g[i][j].partial(l).truncated(order);

    ChristoffelJets gamma(d, std::vector<std::vector<Jet>>(d, std::vector<Jet>(d, Jet(n, order))));
    Scalar half(Rational(1, 2));
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                Jet acc(n, order);
                for (int l = 0; l < d; ++l) {
                    if (ginv[k][l].is_zero()) continue;
                    Jet s = dg[i][j][l] + dg[j][i][l] - dg[l][i][j];
                    acc += ginv[k][l] * s;
                }
                gamma[k][i][j] = half * acc;
                gamma[k][j][i] = gamma[k][i][j];
            }
    return gamma;
}

ChristoffelJets christoffel(const MetricGerm& germ) {
    if (germ.K < 1) throw InvalidGerm("christoffel needs K >= 1");
    return christoffel_from_jets(germ.g, germ.K - 1);
}

int CurvatureAtOrigin::pair_index(int i, int j, int d) {
    // pairs (i,j), i<j, ordered lexicographically
    return i * d - i * (i + 1) / 2 + (j - i - 1);
}

const Mat& CurvatureAtOrigin::R(int i, int j) const {
    return levels.at(0).at(pair_index(i, j, d));
}

std::vector<const Mat*> CurvatureAtOrigin::through_level(int r) const {
    std::vector<const Mat*> out;
    for (int t = 0; t <= r; ++t)
        for (const auto& m : levels.at(t)) out.push_back(&m);
    return out;
}

namespace {

// type (1,s) tensor with jet components, flat index (l, a_1..a_s)
struct JetTensor {
    int d;
    int nlower;
    std::vector<Jet> comp;

    JetTensor(int d_, int nlower_, int nvars, int order)
        : d(d_), nlower(nlower_), comp(pow_size(d_, nlower_ + 1), Jet(nvars, order)) {}

    static size_t pow_size(int d, int k) {
        size_t s = 1;
        for (int i = 0; i < k; ++i) s *= static_cast<size_t>(d);
        return s;
    }

    size_t idx(int l, const std::vector<int>& a) const {
        size_t f = static_cast<size_t>(l);
        for (int t = 0; t < nlower; ++t) f = f * d + a[t];
        return f;
    }
};

// covariant derivative: appends one lower slot (the direction, last)
JetTensor covariant_derivative(const JetTensor& t, const ChristoffelJets& gamma, int new_order) {
    int d = t.d;
    int nvars = t.comp[0].nvars();
    JetTensor out(d, t.nlower + 1, nvars, new_order);
    std::vector<int> a(t.nlower + 1, 0);
    size_t total = JetTensor::pow_size(d, t.nlower + 1);
    for (int l = 0; l < d; ++l) {
        for (size_t flat = 0; flat < total; ++flat) {
            size_t rest = flat;
            for (int tpos = t.nlower; tpos >= 0; --tpos) {
                a[tpos] = static_cast<int>(rest % d);
                rest /= d;
            }
            int m = a[t.nlower];
            std::vector<int> base(a.begin(), a.begin() + t.nlower);
            Jet acc = t.comp[t.idx(l, base)].partial(m).truncated(new_order);
            for (int u = 0; u < d; ++u) {
                const Jet& glu = gamma[l][m][u];
                if (!glu.is_zero()) acc += glu.truncated(new_order) * t.comp[t.idx(u, base)].truncated(new_order);
            }
            for (int tpos = 0; tpos < t.nlower; ++tpos) {
                std::vector<int> swapped = base;
                for (int u = 0; u < d; ++u) {
                    const Jet& gum = gamma[u][m][base[tpos]];
                    if (gum.is_zero()) continue;
                    swapped[tpos] = u;
                    acc -= gum.truncated(new_order) * t.comp[t.idx(l, swapped)].truncated(new_order);
                }
            }
            out.comp[out.idx(l, a)] = acc;
        }
    }
    return out;
}

// R^l_{kij} jets at the requested order from Christoffel symbols
JetTensor curvature_jets(const MetricGerm& germ, int order) {
    int d = germ.d;
    auto gamma = christoffel_from_jets(germ.g, order + 1);
    JetTensor R(d, 3, d, order);
    std::vector<int> a(3);
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    Jet acc = gamma[l][j][k].partial(i).truncated(order);
                    acc -= gamma[l][i][k].partial(j).truncated(order);
                    for (int u = 0; u < d; ++u) {
                        if (!gamma[l][i][u].is_zero() && !gamma[u][j][k].is_zero())
                            acc += gamma[l][i][u].truncated(order) * gamma[u][j][k].truncated(order);
                        if (!gamma[l][j][u].is_zero() && !gamma[u][i][k].is_zero())
                            acc -= gamma[l][j][u].truncated(order) * gamma[u][i][k].truncated(order);
                    }
                    a = {k, i, j};
                    R.comp[R.idx(l, a)] = acc;
                    a = {k, j, i};
                    R.comp[R.idx(l, a)] = -acc;
                }
    return R;
}

}  // namespace

CurvatureAtOrigin curvature(const MetricGerm& germ, int max_deriv) {
    if (germ.K < max_deriv + 2) {
        std::ostringstream os;
        os << "curvature to derivative order " << max_deriv << " needs K >= " << (max_deriv + 2)
           << " but the germ has K = " << germ.K << ": raise K";
        throw InvalidGerm(os.str());
    }
    int d = germ.d;
    CurvatureAtOrigin out;
    out.d = d;
    out.max_deriv = max_deriv;

    auto gamma = christoffel_from_jets(germ.g, max_deriv >= 1 ? max_deriv : 1);
    JetTensor tensor = curvature_jets(germ, max_deriv);

    int npairs = d * (d - 1) / 2;
    for (int r = 0; r <= max_deriv; ++r) {
        size_t utuples = JetTensor::pow_size(d, r);
        std::vector<Mat> level(static_cast<size_t>(npairs) * utuples, Mat(d, d));
        std::vector<int> slots(3 + r);
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                int pi = CurvatureAtOrigin::pair_index(i, j, d);
                for (size_t ut = 0; ut < utuples; ++ut) {
                    Mat m(d, d);
                    size_t rest = ut;
                    for (int tpos = r - 1; tpos >= 0; --tpos) {
                        slots[3 + tpos] = static_cast<int>(rest % d);
                        rest /= d;
                    }
                    slots[1] = i;
                    slots[2] = j;
                    for (int l = 0; l < d; ++l)
                        for (int k = 0; k < d; ++k) {
                            slots[0] = k;
                            m.at(l, k) = tensor.comp[tensor.idx(l, slots)].value_at_origin();
                        }
                    level[static_cast<size_t>(pi) * utuples + ut] = std::move(m);
                }
            }
        out.levels.push_back(std::move(level));
        if (r < max_deriv) tensor = covariant_derivative(tensor, gamma, max_deriv - r - 1);
    }

    verify_curvature_identities(out, germ.g0());
    return out;
}

void verify_curvature_identities(const CurvatureAtOrigin& curv, const Mat& g0) {
    int d = curv.d;
    auto R_of = [&](int i, int j) -> Mat {
        if (i == j) return Mat::zero(d);
        if (i < j) return curv.R(i, j);
        return -curv.R(j, i);
    };
    // first Bianchi: R(i,j)e_k + R(j,k)e_i + R(k,i)e_j = 0
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    Scalar s = R_of(i, j).at(l, k) + R_of(j, k).at(l, i) + R_of(k, i).at(l, j);
                    if (!s.is_zero()) throw std::logic_error("curvature: first Bianchi identity failed");
                }
            }
    // pair symmetry g(R(x,y)z,t) = g(R(z,t)x,y)
    auto R4 = [&](int i, int j, int k, int l) {
        Scalar s;
        Mat rij = R_of(i, j);
        for (int u = 0; u < d; ++u) s += g0.at(u, l) * rij.at(u, k);
        return s;
    };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = k + 1; l < d; ++l)
                    if (R4(i, j, k, l) != R4(k, l, i, j))
                        throw std::logic_error("curvature: pair symmetry failed");
}

Mat ricci_from_jets(const std::vector<std::vector<Jet>>& g) {
    int d = static_cast<int>(g.size());
    auto gamma = christoffel_from_jets(g, 1);
    // only the value at 0 is needed: R^l_{kij}(0)
    Mat ric(d, d);
    auto Rcomp = [&](int l, int k, int i, int j) {
        Jet acc = gamma[l][j][k].partial(i).truncated(0);
        acc -= gamma[l][i][k].partial(j).truncated(0);
        for (int u = 0; u < d; ++u) {
            acc += gamma[l][i][u].truncated(0) * gamma[u][j][k].truncated(0);
            acc -= gamma[l][j][u].truncated(0) * gamma[u][i][k].truncated(0);
        }
        return acc.value_at_origin();
    };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Scalar s;
            for (int u = 0; u < d; ++u) s += Rcomp(u, j, i, u);
            ric.at(i, j) = s;
        }
    return ric;
}

Mat ricci(const MetricGerm& germ) {
    if (germ.K < 2) throw InvalidGerm("ricci needs K >= 2");
    Mat ric = ricci_from_jets(germ.g);
    for (int i = 0; i < germ.d; ++i)
        for (int j = 0; j < germ.d; ++j)
            if (ric.at(i, j) != ric.at(j, i)) throw std::logic_error("ricci: not symmetric");
    return ric;
}

std::vector<std::vector<Jet>> ricci_jets(const MetricGerm& germ) {
    int d = germ.d;
    int order = germ.K - 2;
    auto gamma = christoffel_from_jets(germ.g, order + 1);
    std::vector<std::vector<Jet>> ric(d, std::vector<Jet>(d, Jet(d, order)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Jet acc(d, order);
            for (int u = 0; u < d; ++u) {
                // R^u_{j i u}
                Jet term = gamma[u][u][j].partial(i).truncated(order);
                term -= gamma[u][i][j].partial(u).truncated(order);
                for (int w = 0; w < d; ++w) {
                    if (!gamma[u][i][w].is_zero() && !gamma[w][u][j].is_zero())
                        term += gamma[u][i][w].truncated(order) * gamma[w][u][j].truncated(order);
                    if (!gamma[u][u][w].is_zero() && !gamma[w][i][j].is_zero())
                        term -= gamma[u][u][w].truncated(order) * gamma[w][i][j].truncated(order);
                }
                acc += term;
            }
            ric[i][j] = acc;
        }
    return ric;
}

std::vector<Mat> covariant_dricci_at_origin(const MetricGerm& germ) {
    if (germ.K < 3) throw InvalidGerm("D ric needs K >= 3");
    int d = germ.d;
    auto ric = ricci_jets(germ);
    auto gamma = christoffel_from_jets(germ.g, 1);
    std::vector<Mat> out(d, Mat(d, d));
    for (int m = 0; m < d; ++m)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Scalar s = ric[i][j].partial(m).value_at_origin();
                for (int u = 0; u < d; ++u) {
                    s -= gamma[u][m][i].value_at_origin() * ric[u][j].value_at_origin();
                    s -= gamma[u][m][j].value_at_origin() * ric[i][u].value_at_origin();
                }
                out[m].at(i, j) = s;
            }
    return out;
}

}  // namespace pea
