#ifndef PEA_MATRIX_HPP
#define PEA_MATRIX_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pea/scalar.hpp"

namespace pea {

using Vec = std::vector<Scalar>;

// Dense matrix over Gaussian rationals. Sizes in this project stay small
// (d <= 8 for geometry, a few hundred columns for the Cartan test), so plain
// fraction arithmetic with deterministic pivoting is fine.
class Mat {
  public:
    Mat() : r_(0), c_(0) {}
    Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c) {}

    static Mat identity(int n);
    static Mat zero(int n) { return Mat(n, n); }
    static Mat diag(const std::vector<Scalar>& d);
    static Mat from_rows(const std::vector<Vec>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    bool is_zero() const;
    bool is_square() const { return r_ == c_; }

    Mat transpose() const;
    Mat conj() const;
    Scalar trace() const;

    Mat operator-() const;
    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    friend Mat operator+(Mat a, const Mat& b) { a += b; return a; }
    friend Mat operator-(Mat a, const Mat& b) { a -= b; return a; }
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator*(const Scalar& s, Mat a);
    friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Vec apply(const Vec& v) const;
    Vec flatten() const { return a_; }
    static Mat unflatten(const Vec& v, int r, int c);

    // Deterministic lexicographic comparison (row-major, Scalar::cmp).
    static int lex_cmp(const Mat& a, const Mat& b);

    std::string str() const;

  private:
    int r_, c_;
    std::vector<Scalar> a_;
};

Mat commutator(const Mat& a, const Mat& b);

// Row reduction in place; returns rank. Columns are processed left to right,
// pivot = first row with a nonzero entry. If `ops` is non-null every row
// operation is mirrored onto it (same row count required).
int rref(Mat& m, Mat* ops = nullptr);

int rank(Mat m);

// Basis of the right kernel {x : m x = 0}, as columns gathered in a Mat
// (cols = dim of kernel, may be 0). Deterministic ordering by free column.
std::vector<Vec> nullspace(const Mat& m);

// Solve m x = b; empty optional when inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& b);

Scalar det(Mat m);
std::optional<Mat> inverse(const Mat& m);

// Signature (p, q, rank deficiency) of a real symmetric matrix by exact
// symmetric congruence elimination. Throws if the matrix is not real
// symmetric.
struct Signature {
    int pos = 0;
    int neg = 0;
    int null = 0;
};
Signature congruence_signature(Mat m);

// Incremental row-space tracker: maintains a reduced echelon basis of the
// span of inserted vectors and remembers the originals that grew it.
class SpanBuilder {
  public:
    explicit SpanBuilder(int ambient) : ambient_(ambient) {}

    // Returns true when v enlarged the span.
    bool insert(const Vec& v);
    bool insert_mat(const Mat& m) { mats_.push_back(m); bool g = insert(m.flatten()); if (!g) mats_.pop_back(); return g; }

    bool contains(const Vec& v) const;
    bool contains_mat(const Mat& m) const { return contains(m.flatten()); }

    int dim() const { return static_cast<int>(rows_.size()); }
    int ambient() const { return ambient_; }

    // Original vectors/matrices that produced the current basis.
    const std::vector<Vec>& basis() const { return originals_; }
    const std::vector<Mat>& basis_mats() const { return mats_; }

    // Reduce v against the echelon rows; the remainder is returned.
    Vec reduce(Vec v) const;

  private:
    int ambient_;
    std::vector<std::pair<int, Vec>> rows_;  // (lead column, normalized row)
    std::vector<Vec> originals_;
    std::vector<Mat> mats_;
};

// Coordinates of v in the span of `basis` (each basis element one vector),
// or nullopt when v is outside.
std::optional<Vec> coordinates_in(const std::vector<Vec>& basis, const Vec& v);

inline Vec vec_sub(Vec a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

}  // namespace pea

#endif
