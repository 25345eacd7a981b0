#include "pea/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace pea {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Mat Mat::diag(const std::vector<Scalar>& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Mat();
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (rows[i].size() != static_cast<size_t>(m.cols()))
            throw std::invalid_argument("from_rows: ragged rows");
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Mat Mat::transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Mat Mat::conj() const {
    Mat t(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t.at(i, j) = at(i, j).conj();
    return t;
}

Scalar Mat::trace() const {
    Scalar s;
    for (int i = 0; i < std::min(r_, c_); ++i) s += at(i, i);
    return s;
}

Mat Mat::operator-() const {
    Mat m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
    return m;
}

Mat& Mat::operator+=(const Mat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: size mismatch in +");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: size mismatch in -");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("Mat: size mismatch in *");
    Mat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Scalar& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j) {
                const Scalar& bkj = b.at(k, j);
                if (!bkj.is_zero()) m.at(i, j) += aik * bkj;
            }
        }
    return m;
}

Mat operator*(const Scalar& s, Mat a) {
    for (auto& x : a.a_) x *= s;
    return a;
}

Vec Mat::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("Mat: size mismatch in apply");
    Vec out(r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
    return out;
}

Mat Mat::unflatten(const Vec& v, int r, int c) {
    if (static_cast<int>(v.size()) != r * c) throw std::invalid_argument("unflatten: size mismatch");
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = v[static_cast<size_t>(i) * c + j];
    return m;
}

int Mat::lex_cmp(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("lex_cmp: size mismatch");
    for (size_t i = 0; i < a.a_.size(); ++i) {
        int c = Scalar::cmp(a.a_[i], b.a_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string Mat::str() const {
    std::ostringstream os;
    for (int i = 0; i < r_; ++i) {
        os << (i == 0 ? "[" : " ") << "[";
        for (int j = 0; j < c_; ++j) os << at(i, j).str() << (j + 1 < c_ ? ", " : "");
        os << "]" << (i + 1 < r_ ? "\n" : "]");
    }
    return os.str();
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

int rref(Mat& m, Mat* ops) {
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(rank, j));
            if (ops)
                for (int j = 0; j < ops->cols(); ++j) std::swap(ops->at(piv, j), ops->at(rank, j));
        }
        Scalar inv = m.at(rank, col).inverse();
        for (int j = col; j < m.cols(); ++j) m.at(rank, j) *= inv;
        if (ops)
            for (int j = 0; j < ops->cols(); ++j) ops->at(rank, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rank, j);
            if (ops)
                for (int j = 0; j < ops->cols(); ++j) ops->at(i, j) -= f * ops->at(rank, j);
        }
        ++rank;
    }
    return rank;
}

int rank(Mat m) { return rref(m); }

std::vector<Vec> nullspace(const Mat& m) {
    Mat r = m;
    rref(r);
    int n = m.cols();
    std::vector<int> lead_of_col(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < r.rows(); ++col) {
        if (!r.at(row, col).is_zero()) lead_of_col[col] = row++;
    }
    std::vector<Vec> basis;
    for (int col = 0; col < n; ++col) {
        if (lead_of_col[col] >= 0) continue;
        Vec v(n);
        v[col] = Scalar(1);
        for (int c2 = 0; c2 < col; ++c2) {
            int lr = lead_of_col[c2];
            if (lr >= 0) v[c2] = -r.at(lr, col);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: size mismatch");
    Mat aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    rref(aug);
    Vec x(m.cols());
    for (int i = 0; i < aug.rows(); ++i) {
        int lead = -1;
        for (int j = 0; j <= m.cols(); ++j)
            if (!aug.at(i, j).is_zero()) { lead = j; break; }
        if (lead < 0) continue;
        if (lead == m.cols()) return std::nullopt;  // pivot in rhs column: inconsistent
        x[lead] = aug.at(i, m.cols());
    }
    return x;
}

Scalar det(Mat m) {
    if (!m.is_square()) throw std::invalid_argument("det: not square");
    Scalar d(1);
    int n = m.rows();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) return Scalar(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        Scalar inv = m.at(col, col).inverse();
        for (int i = col + 1; i < n; ++i) {
            if (m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col) * inv;
            for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

std::optional<Mat> inverse(const Mat& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: not square");
    Mat work = m;
    Mat ops = Mat::identity(m.rows());
    int r = rref(work, &ops);
    if (r < m.rows()) return std::nullopt;
    return ops;
}

Signature congruence_signature(Mat m) {
    if (!m.is_square()) throw std::invalid_argument("signature: not square");
    int n = m.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!m.at(i, j).is_real()) throw std::invalid_argument("signature: complex entry");
            if (m.at(i, j) != m.at(j, i)) throw std::invalid_argument("signature: not symmetric");
        }
    Signature sig;
    for (int k = 0; k < n; ++k) {
        if (m.at(k, k).is_zero()) {
            int pd = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m.at(i, i).is_zero()) { pd = i; break; }
            if (pd >= 0) {
                // congruent swap of rows/cols k <-> pd
                for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pd, j));
                for (int i = 0; i < n; ++i) std::swap(m.at(i, k), m.at(i, pd));
            } else {
                int pi = -1, pj = -1;
                for (int i = k; i < n && pi < 0; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (!m.at(i, j).is_zero()) { pi = i; pj = j; break; }
                if (pi < 0) { sig.null += n - k; break; }
                // e_pi += e_pj makes the (pi,pi) entry 2*m(pi,pj) != 0
                for (int j = 0; j < n; ++j) m.at(pi, j) += m.at(pj, j);
                for (int i = 0; i < n; ++i) m.at(i, pi) += m.at(i, pj);
                if (pi != k) {
                    for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pi, j));
                    for (int i = 0; i < n; ++i) std::swap(m.at(i, k), m.at(i, pi));
                }
            }
        }
        const Scalar piv = m.at(k, k);
        if (piv.is_zero()) continue;
        if (piv.re > 0) ++sig.pos; else ++sig.neg;
        Scalar inv = piv.inverse();
        for (int i = k + 1; i < n; ++i) {
            if (m.at(i, k).is_zero()) continue;
            Scalar f = m.at(i, k) * inv;
            for (int j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
            for (int j = 0; j < n; ++j) m.at(j, i) = m.at(i, j);  // keep symmetric
        }
        for (int j = k + 1; j < n; ++j) { m.at(k, j) = Scalar(0); m.at(j, k) = Scalar(0); }
    }
    return sig;
}

bool SpanBuilder::insert(const Vec& v) {
    if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("SpanBuilder: bad vector size");
    Vec red = reduce(v);
    int lead = -1;
    for (int i = 0; i < ambient_; ++i)
        if (!red[i].is_zero()) { lead = i; break; }
    if (lead < 0) return false;
    Scalar inv = red[lead].inverse();
    for (auto& x : red) x *= inv;
    // eliminate the new lead from existing rows to keep full reduction
    for (auto& [lc, row] : rows_) {
        if (!row[lead].is_zero()) {
            Scalar f = row[lead];
            for (int i = 0; i < ambient_; ++i) row[i] -= f * red[i];
        }
    }
    auto pos = rows_.begin();
    while (pos != rows_.end() && pos->first < lead) ++pos;
    rows_.insert(pos, {lead, std::move(red)});
    originals_.push_back(v);
    return true;
}

bool SpanBuilder::contains(const Vec& v) const {
    Vec red = reduce(v);
    for (const auto& x : red)
        if (!x.is_zero()) return false;
    return true;
}

Vec SpanBuilder::reduce(Vec v) const {
    for (const auto& [lead, row] : rows_) {
        if (!v[lead].is_zero()) {
            Scalar f = v[lead];
            for (int i = 0; i < ambient_; ++i) v[i] -= f * row[i];
        }
    }
    return v;
}

std::optional<Vec> coordinates_in(const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty()) {
        for (const auto& x : v)
            if (!x.is_zero()) return std::nullopt;
        return Vec{};
    }
    int n = static_cast<int>(v.size());
    Mat m(n, static_cast<int>(basis.size()));
    for (int j = 0; j < m.cols(); ++j) {
        if (static_cast<int>(basis[j].size()) != n) throw std::invalid_argument("coordinates_in: size mismatch");
        for (int i = 0; i < n; ++i) m.at(i, j) = basis[j][i];
    }
    return solve(m, v);
}

}  // namespace pea
