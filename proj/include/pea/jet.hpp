#ifndef PEA_JET_HPP
#define PEA_JET_HPP

#include <map>
#include <vector>

#include "pea/scalar.hpp"

namespace pea {

using MultiIndex = std::vector<int>;

int mi_degree(const MultiIndex& e);

// Truncated multivariate power series over Gaussian rationals: sparse map
// from exponent vector (total degree <= order) to nonzero coefficient.
// Binary operations insist on matching nvars and order; differentiation
// lowers the order, so callers re-truncate deliberately where orders mix.
class Jet {
  public:
    Jet() : nvars_(0), order_(0) {}
    Jet(int nvars, int order) : nvars_(nvars), order_(order) {}

    static Jet constant(int nvars, int order, const Scalar& c);
    static Jet variable(int nvars, int order, int i);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }

    const std::map<MultiIndex, Scalar>& terms() const { return terms_; }
    Scalar coeff(const MultiIndex& e) const;
    Scalar value_at_origin() const;

    void set_coeff(const MultiIndex& e, const Scalar& c);

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(const Scalar& s, Jet a);
    friend bool operator==(const Jet& a, const Jet& b);
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    // multiplicative inverse; requires a unit (nonzero constant term)
    Jet inverse() const;

    // formal partial derivative; result order is order()-1
    Jet partial(int i) const;

    Jet truncated(int new_order) const;
    Jet conj() const;

    // Substitute variable i -> images[i]; images live in a common target
    // jet space. Used to realify holomorphic data (z = x + iy).
    Jet substitute(const std::vector<Jet>& images) const;

    std::string str() const;

  private:
    void check_compatible(const Jet& o, const char* op) const;
    int nvars_, order_;
    std::map<MultiIndex, Scalar> terms_;
};

}  // namespace pea

#endif
