#include "pea/jet.hpp"

#include <sstream>
#include <stdexcept>

namespace pea {

int mi_degree(const MultiIndex& e) {
    int d = 0;
    for (int k : e) d += k;
    return d;
}

Jet Jet::constant(int nvars, int order, const Scalar& c) {
    Jet j(nvars, order);
    if (!c.is_zero()) j.terms_[MultiIndex(nvars, 0)] = c;
    return j;
}

Jet Jet::variable(int nvars, int order, int i) {
    if (i < 0 || i >= nvars) throw std::out_of_range("Jet::variable: index out of range");
    Jet j(nvars, order);
    if (order >= 1) {
        MultiIndex e(nvars, 0);
        e[i] = 1;
        j.terms_[e] = Scalar(1);
    }
    return j;
}

Scalar Jet::coeff(const MultiIndex& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Jet::value_at_origin() const { return coeff(MultiIndex(nvars_, 0)); }

void Jet::set_coeff(const MultiIndex& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("Jet::set_coeff: bad exponent size");
    if (mi_degree(e) > order_) throw std::invalid_argument("Jet::set_coeff: degree above truncation order");
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

void Jet::check_compatible(const Jet& o, const char* op) const {
    if (nvars_ != o.nvars_ || order_ != o.order_) {
        std::ostringstream os;
        os << "Jet: incompatible operands in " << op << " (n=" << nvars_ << ",K=" << order_
           << ") vs (n=" << o.nvars_ << ",K=" << o.order_ << ")";
        throw std::invalid_argument(os.str());
    }
}

Jet Jet::operator-() const {
    Jet j(nvars_, order_);
    for (const auto& [e, c] : terms_) j.terms_[e] = -c;
    return j;
}

Jet& Jet::operator+=(const Jet& o) {
    check_compatible(o, "+");
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_compatible(o, "-");
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = -c;
        } else {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.check_compatible(b, "*");
    Jet out(a.nvars_, a.order_);
    for (const auto& [ea, ca] : a.terms_) {
        int da = mi_degree(ea);
        for (const auto& [eb, cb] : b.terms_) {
            if (da + mi_degree(eb) > a.order_) continue;
            MultiIndex e(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            auto it = out.terms_.find(e);
            if (it == out.terms_.end()) {
                Scalar c = ca * cb;
                if (!c.is_zero()) out.terms_[e] = c;
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
    }
    return out;
}

Jet operator*(const Scalar& s, Jet a) {
    if (s.is_zero()) return Jet(a.nvars_, a.order_);
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
}

bool operator==(const Jet& a, const Jet& b) {
    return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

Jet Jet::inverse() const {
    Scalar c0 = value_at_origin();
    if (c0.is_zero()) throw std::domain_error("Jet::inverse: non-unit jet (zero constant term)");
    // a = c0 (1 + h) with h of valuation >= 1; finite Neumann series of h
    Scalar c0inv = c0.inverse();
    Jet h = c0inv * *this;
    h -= Jet::constant(nvars_, order_, Scalar(1));
    Jet acc = Jet::constant(nvars_, order_, Scalar(1));
    Jet pw = Jet::constant(nvars_, order_, Scalar(1));
    for (int k = 1; k <= order_; ++k) {
        pw = pw * h;
        if (pw.is_zero()) break;
        if (k % 2 == 1)
            acc -= pw;
        else
            acc += pw;
    }
    return c0inv * acc;
}

Jet Jet::partial(int i) const {
    if (i < 0 || i >= nvars_) throw std::out_of_range("Jet::partial: index out of range");
    Jet out(nvars_, order_ - 1);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        MultiIndex d = e;
        d[i] -= 1;
        out.terms_[d] = Scalar(Rational(e[i])) * c;
    }
    return out;
}

Jet Jet::truncated(int new_order) const {
    Jet out(nvars_, new_order);
    for (const auto& [e, c] : terms_)
        if (mi_degree(e) <= new_order) out.terms_[e] = c;
    return out;
}

Jet Jet::conj() const {
    Jet out(nvars_, order_);
    for (const auto& [e, c] : terms_) out.terms_[e] = c.conj();
    return out;
}

Jet Jet::substitute(const std::vector<Jet>& images) const {
    if (static_cast<int>(images.size()) != nvars_)
        throw std::invalid_argument("Jet::substitute: wrong image count");
    if (images.empty()) throw std::invalid_argument("Jet::substitute: no variables");
    int tn = images[0].nvars();
    int to = images[0].order();
    Jet out(tn, to);
    for (const auto& [e, c] : terms_) {
        Jet term = Jet::constant(tn, to, c);
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) term = term * images[i];
        out += term;
    }
    return out;
}

std::string Jet::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << "*x" << i;
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

}  // namespace pea
