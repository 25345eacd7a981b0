#include "pea/scalar.hpp"

#include <sstream>

namespace pea {

std::string Scalar::str() const {
    std::ostringstream os;
    if (im == 0) {
        os << re;
    } else {
        os << "(" << re << (im < 0 ? "-" : "+") << boost::multiprecision::abs(im) << "i)";
    }
    return os.str();
}

Rational rational_from_strings(const std::string& num, const std::string& den) {
    Integer n(num), d(den);
    if (d == 0) throw std::domain_error("rational: zero denominator");
    return Rational(n, d);
}

std::optional<Rational> rational_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    Integer n = boost::multiprecision::numerator(x);
    Integer d = boost::multiprecision::denominator(x);
    Integer rn = boost::multiprecision::sqrt(n);
    Integer rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rational(rn, rd);
}

}  // namespace pea
