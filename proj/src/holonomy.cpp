#include "pea/holonomy.hpp"

#include <stdexcept>

#include "pea/poly.hpp"

namespace pea {

namespace {

void bracket_close(SpanBuilder& sb, int d) {
    bool grew = true;
    while (grew) {
        grew = false;
        auto mats = sb.basis_mats();  // copy: sb changes inside the loop
        int n = static_cast<int>(mats.size());
        for (int i = 0; i < n && !grew; ++i)
            for (int j = i + 1; j < n && !grew; ++j) {
                Mat br = commutator(mats[i], mats[j]);
                if (!br.is_zero() && sb.insert_mat(br)) grew = true;
            }
        (void)d;
    }
}

}  // namespace

HolonomyResult holonomy_span(const CurvatureAtOrigin& curv) {
    int d = curv.d;
    HolonomyResult out;
    out.span.d = d;
    SpanBuilder sb(d * d);
    for (int r = 0; r <= curv.max_deriv; ++r) {
        for (const auto& m : curv.level(r))
            if (!m.is_zero()) sb.insert_mat(m);
        bracket_close(sb, d);
        out.dims_by_order.push_back(sb.dim());
        out.order_probed = r;
        if (r > 0 && out.dims_by_order[r] == out.dims_by_order[r - 1]) {
            out.stabilized = true;  // first order adding nothing
            break;
        }
    }
    out.stabilization_order = 0;
    for (size_t r = 1; r < out.dims_by_order.size(); ++r)
        if (out.dims_by_order[r] != out.dims_by_order[r - 1]) out.stabilization_order = static_cast<int>(r);
    out.span.basis = sb.basis_mats();
    out.span.bracket_closed = true;
    return out;
}

FixedSpace fixed_space(const MatrixSpan& h, const Mat& g0) {
    int d = g0.rows();
    FixedSpace out;
    if (h.basis.empty()) {
        for (int i = 0; i < d; ++i) {
            Vec v(d);
            v[i] = Scalar(1);
            out.basis.push_back(v);
        }
    } else {
        Mat stacked(static_cast<int>(h.basis.size()) * d, d);
        for (size_t b = 0; b < h.basis.size(); ++b)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    stacked.at(static_cast<int>(b) * d + i, j) = h.basis[b].at(i, j);
        out.basis = nullspace(stacked);
    }
    for (const auto& v : out.basis)
        for (const auto& w : out.basis) {
            Scalar s;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) s += v[i] * g0.at(i, j) * w[j];
            if (!s.is_zero()) out.isotropic = false;
        }
    out.decomposable_warning = !out.basis.empty() && !out.isotropic && out.dim() < d;
    return out;
}

Mat adjoint_of(const Mat& u, const Mat& g0, const Mat& g0inv) {
    return g0inv * u.transpose() * g0;
}

EndoAlgebra::EndoAlgebra(std::vector<Mat> basis, Mat g0)
    : basis_(std::move(basis)), g0_(std::move(g0)), span_(g0_.rows() * g0_.rows()) {
    auto inv = inverse(g0_);
    if (!inv) throw std::invalid_argument("EndoAlgebra: singular Gram matrix");
    g0inv_ = *inv;
    for (const auto& b : basis_)
        if (!span_.insert_mat(b)) throw std::invalid_argument("EndoAlgebra: dependent basis");
    if (!span_.contains_mat(Mat::identity(d())))
        throw std::invalid_argument("EndoAlgebra: does not contain the identity");
    // closure under product and adjunction
    for (const auto& a : basis_) {
        if (!span_.contains_mat(adjoint(a)))
            throw std::invalid_argument("EndoAlgebra: not closed under adjunction");
        for (const auto& b : basis_)
            if (!span_.contains_mat(a * b))
                throw std::invalid_argument("EndoAlgebra: not closed under products");
    }
    // sigma eigenspace bases
    SpanBuilder sp(d() * d()), sm(d() * d());
    Scalar half(Rational(1, 2));
    for (const auto& b : basis_) {
        Mat ad = adjoint(b);
        Mat p = half * (b + ad);
        Mat m = half * (b - ad);
        if (!p.is_zero() && sp.insert_mat(p)) plus_.push_back(p);
        if (!m.is_zero() && sm.insert_mat(m)) minus_.push_back(m);
    }
}

Mat EndoAlgebra::adjoint(const Mat& u) const { return adjoint_of(u, g0_, g0inv_); }

std::optional<Vec> EndoAlgebra::coords(const Mat& u) const {
    std::vector<Vec> flat;
    for (const auto& b : basis_) flat.push_back(b.flatten());
    return coordinates_in(flat, u.flatten());
}

Scalar EndoAlgebra::trace_form(const Mat& u, const Mat& v) const {
    return Scalar(Rational(1, d())) * (adjoint(u) * v).trace();
}

Scalar EndoAlgebra::trace_pairing(const Mat& u, const Mat& v) const { return (u * v).trace(); }

EndoAlgebra commutant(const MatrixSpan& h, const Mat& g0) {
    int d = g0.rows();
    std::vector<Mat> basis;
    if (h.basis.empty()) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Mat e(d, d);
                e.at(i, j) = Scalar(1);
                basis.push_back(e);
            }
        return EndoAlgebra(std::move(basis), g0);
    }
    int nw = static_cast<int>(h.basis.size());
    Mat sys(nw * d * d, d * d);
    for (int b = 0; b < nw; ++b) {
        const Mat& w = h.basis[b];
        // (UW - WU)_{ij} = sum_k U_{ik} W_{kj} - W_{ik} U_{kj}
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                int row = (b * d + i) * d + j;
                for (int k = 0; k < d; ++k) {
                    sys.at(row, i * d + k) += w.at(k, j);
                    sys.at(row, k * d + j) -= w.at(i, k);
                }
            }
    }
    for (const auto& v : nullspace(sys)) basis.push_back(Mat::unflatten(v, d, d));
    EndoAlgebra e(std::move(basis), g0);
    // every basis element commutes with every span element
    for (const auto& u : e.basis())
        for (const auto& w : h.basis)
            if (!commutator(u, w).is_zero())
                throw std::logic_error("commutant: element fails to commute");
    return e;
}

std::vector<Mat> n0_ideal(const EndoAlgebra& e, const MatrixSpan& h, const FixedSpace& e0) {
    int d = e.d();
    // v in E0 iff A v = 0 for the stacked span matrix A
    Mat stacked(std::max(1, static_cast<int>(h.basis.size())) * d, d);
    for (size_t b = 0; b < h.basis.size(); ++b)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                stacked.at(static_cast<int>(b) * d + i, j) = h.basis[b].at(i, j);

    // Im N in E0, with N = sum c_k B_k: stacked * N = 0, linear in c
    int ne = e.dim();
    Mat sys(stacked.rows() * d, ne);
    for (int k = 0; k < ne; ++k) {
        Mat prod = stacked * e.basis()[k];
        for (int r = 0; r < prod.rows(); ++r)
            for (int c = 0; c < d; ++c) sys.at(r * d + c, k) = prod.at(r, c);
    }
    std::vector<Mat> n0;
    for (const auto& coords : nullspace(sys)) {
        Mat n(d, d);
        for (int k = 0; k < ne; ++k)
            if (!coords[k].is_zero()) n += coords[k] * e.basis()[k];
        n0.push_back(n);
    }
    (void)e0;
    // square-zero, sigma-stability and ideal property
    SpanBuilder sb(d * d);
    for (const auto& n : n0) sb.insert_mat(n);
    for (const auto& a : n0)
        for (const auto& b : n0)
            if (!(a * b).is_zero()) throw std::logic_error("n0 ideal: n0^2 != 0");
    for (const auto& n : n0) {
        if (!sb.contains_mat(e.adjoint(n))) throw std::logic_error("n0 ideal: not sigma-stable");
        for (const auto& b : e.basis()) {
            if (!sb.contains_mat(b * n) || !sb.contains_mat(n * b))
                throw std::logic_error("n0 ideal: not a two-sided ideal");
        }
    }
    return n0;
}

bool decomposability_probe(const EndoAlgebra& e, Rng& rng, int samples) {
    const auto& plus = e.plus_basis();
    if (plus.empty()) return false;
    auto check = [&](const Mat& u) {
        Poly mp = minimal_polynomial(u);
        return splits_over_reals(poly_squarefree_part(mp));
    };
    for (const auto& u : plus)
        if (check(u)) return true;
    int npl = static_cast<int>(plus.size());
    for (int s = 0; s < samples; ++s) {
        Mat u(e.d(), e.d());
        for (int k = 0; k < npl; ++k) u += Scalar(Rational(rng.small_nonzero(3))) * plus[k];
        if (!u.is_zero() && check(u)) return true;
    }
    return false;
}

}  // namespace pea
