#include "pea/poly.hpp"

#include <stdexcept>

namespace pea {

Poly poly_normalize(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

Poly poly_monic(Poly p) {
    p = poly_normalize(std::move(p));
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return poly_normalize(out);
}

Poly poly_derivative(const Poly& p) {
    Poly d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(Rational(static_cast<long>(k)) * p[k]);
    return poly_normalize(d);
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.empty()) throw std::domain_error("poly_divmod: division by zero poly");
    Poly r = a, q;
    int db = poly_deg(b);
    if (poly_deg(r) >= db) q.assign(poly_deg(r) - db + 1, Rational(0));
    while (poly_deg(r) >= db) {
        int shift = poly_deg(r) - db;
        Rational f = r.back() / b.back();
        q[shift] = f;
        for (int i = 0; i <= db; ++i) r[shift + i] -= f * b[i];
        r = poly_normalize(r);
    }
    return {poly_normalize(q), r};
}

Poly poly_gcd(Poly a, Poly b) {
    a = poly_normalize(std::move(a));
    b = poly_normalize(std::move(b));
    while (!b.empty()) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

Poly poly_squarefree_part(const Poly& p) {
    Poly q = poly_monic(p);
    if (poly_deg(q) <= 1) return q;
    Poly g = poly_gcd(q, poly_derivative(q));
    return poly_monic(poly_divmod(q, g).first);
}

Mat poly_eval_matrix(const Poly& p, const Mat& a) {
    Mat acc = Mat::zero(a.rows());
    for (int k = poly_deg(p); k >= 0; --k) {
        acc = acc * a;
        acc += p[k] * Mat::identity(a.rows());
    }
    return acc;
}

Poly minimal_polynomial(const Mat& a) {
    if (!a.is_square()) throw std::invalid_argument("minimal_polynomial: not square");
    int n = a.rows();
    std::vector<Vec> powers;
    Mat pw = Mat::identity(n);
    for (int k = 0; k <= n; ++k) {
        powers.push_back(pw.flatten());
        // look for a dependence c_0 I + ... + c_k A^k = 0 with c_k = 1
        Mat sys(n * n, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n * n; ++i) sys.at(i, j) = powers[j][i];
        Vec rhs(static_cast<size_t>(n) * n);
        for (int i = 0; i < n * n; ++i) rhs[i] = -powers[k][i];
        if (auto c = solve(sys, rhs)) {
            Poly p;
            for (int j = 0; j < k; ++j) {
                if (!(*c)[j].is_real())
                    throw std::domain_error("minimal_polynomial: non-rational coefficients");
                p.push_back((*c)[j].re);
            }
            p.push_back(Rational(1));
            return p;
        }
        pw = pw * a;
    }
    throw std::logic_error("minimal_polynomial: no dependence up to degree n");
}

static std::vector<Integer> divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> out;
    if (n == 0) return out;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

std::vector<Rational> poly_rational_roots(const Poly& p0) {
    Poly p = poly_normalize(p0);
    std::vector<Rational> roots;
    if (p.empty()) return roots;
    // strip trailing zero roots
    size_t z = 0;
    while (z < p.size() && p[z] == 0) ++z;
    if (z > 0) {
        roots.push_back(Rational(0));
        p.erase(p.begin(), p.begin() + static_cast<long>(z));
    }
    if (poly_deg(p) < 1) return roots;
    // clear denominators -> integer polynomial
    Integer lcm = 1;
    for (const auto& c : p) {
        Integer den = boost::multiprecision::denominator(c);
        lcm = boost::multiprecision::lcm(lcm, den);
    }
    std::vector<Integer> ip;
    for (const auto& c : p) ip.push_back(boost::multiprecision::numerator(c * Rational(lcm)));
    auto ps = divisors(ip.front());
    auto qs = divisors(ip.back());
    auto eval_zero = [&](const Rational& x) {
        Rational acc(0);
        for (int k = poly_deg(p); k >= 0; --k) acc = acc * x + p[k];
        return acc == 0;
    };
    for (const auto& pn : ps)
        for (const auto& qn : qs) {
            Rational cand(pn, qn);
            for (int s = 0; s < 2; ++s) {
                Rational x = s ? -cand : cand;
                if (eval_zero(x)) {
                    bool seen = false;
                    for (const auto& r : roots) seen |= (r == x);
                    if (!seen) roots.push_back(x);
                }
            }
        }
    return roots;
}

bool splits_over_reals(const Poly& squarefree) {
    int d = poly_deg(squarefree);
    if (d <= 1) return false;
    if (d >= 3) return true;  // odd factor or two quadratics either way
    // quadratic: reducible over R iff discriminant >= 0
    Rational a = squarefree[2], b = squarefree[1], c = squarefree[0];
    return b * b - 4 * a * c >= 0;
}

std::optional<bool> irreducible_over_Q(const Poly& p0) {
    Poly p = poly_monic(p0);
    int d = poly_deg(p);
    if (d <= 0) return false;
    if (d == 1) return true;
    if (d <= 3) return poly_rational_roots(p).empty();
    return std::nullopt;
}

bool is_nilpotent(const Mat& a) {
    Mat pw = a;
    for (int k = 1; k <= a.rows(); k *= 2) {
        if (pw.is_zero()) return true;
        pw = pw * pw;
    }
    return pw.is_zero();
}

}  // namespace pea
