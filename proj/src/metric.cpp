#include "pea/metric.hpp"

#include <sstream>

namespace pea {

namespace {

Json integer_to_json(const Integer& v) {
    // json numbers stay within the exactly-representable range; larger values
    // are emitted as decimal strings
    static const Integer kMax = (Integer(1) << 53);
    if (v <= kMax && v >= -kMax) return Json(static_cast<std::int64_t>(v));
    return Json(v.str());
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw InvalidGerm("expected integer or decimal string");
}

Json rational_to_json(const Rational& r) {
    return Json::array({integer_to_json(boost::multiprecision::numerator(r)),
                        integer_to_json(boost::multiprecision::denominator(r))});
}

Rational rational_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidGerm("rational must be [num, den]");
    Integer n = integer_from_json(j[0]), d = integer_from_json(j[1]);
    if (d == 0) throw InvalidGerm("rational with zero denominator");
    return Rational(n, d);
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
    if (s.is_real()) return rational_to_json(s.re);
    return Json::array({rational_to_json(s.re), rational_to_json(s.im)});
}

Scalar scalar_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidGerm("scalar must be a pair");
    if (j[0].is_array()) return Scalar(rational_from_json(j[0]), rational_from_json(j[1]));
    return Scalar(rational_from_json(j));
}

Json jet_to_json(const Jet& jet) {
    Json terms = Json::array();
    for (const auto& [e, c] : jet.terms()) {
        terms.push_back(Json::array({Json(e), scalar_to_json(c)}));
    }
    return Json{{"n", jet.nvars()}, {"K", jet.order()}, {"terms", terms}};
}

Jet jet_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("K") || !j.contains("terms"))
        throw InvalidGerm("jet needs keys n, K, terms");
    Jet out(j.at("n").get<int>(), j.at("K").get<int>());
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2) throw InvalidGerm("jet term must be [exponents, coeff]");
        MultiIndex e = t[0].get<MultiIndex>();
        out.set_coeff(e, scalar_from_json(t[1]));
    }
    return out;
}

Json mat_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const Json& j) {
    int r = static_cast<int>(j.size());
    int c = r ? static_cast<int>(j[0].size()) : 0;
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) m.at(i, k) = scalar_from_json(j[i][k]);
    return m;
}

Mat MetricGerm::g0() const {
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(i, j) = g[i][j].value_at_origin();
    return m;
}

void MetricGerm::validate() const {
    if (static_cast<int>(g.size()) != d) throw InvalidGerm("g has wrong row count");
    for (const auto& row : g)
        if (static_cast<int>(row.size()) != d) throw InvalidGerm("g has wrong column count");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (g[i][j].nvars() != d || g[i][j].order() != K)
                throw InvalidGerm("g entries must be jets in d variables at order K");
            if (g[i][j] != g[j][i]) throw InvalidGerm("metric jets not symmetric");
            if (kind == Kind::Real) {
                for (const auto& [e, c] : g[i][j].terms())
                    if (!c.is_real()) throw InvalidGerm("real germ with complex coefficient");
            }
        }
    Mat m0 = g0();
    if (!inverse(m0)) throw InvalidGerm("invalid germ: g(0) singular");
    Signature sig = congruence_signature(m0);
    if (sig.null != 0 || sig.pos != signature.first || sig.neg != signature.second) {
        std::ostringstream os;
        os << "declared signature (" << signature.first << "," << signature.second
           << ") does not match g(0) with (" << sig.pos << "," << sig.neg << ")";
        throw InvalidGerm(os.str());
    }
}

MetricGerm make_real_germ(std::vector<std::vector<Jet>> g, std::pair<int, int> signature) {
    MetricGerm germ;
    germ.d = static_cast<int>(g.size());
    germ.signature = signature;
    germ.kind = MetricGerm::Kind::Real;
    germ.K = g.empty() ? 0 : g[0][0].order();
    germ.g = std::move(g);
    germ.validate();
    return germ;
}

MetricGerm make_complex_germ(std::vector<std::vector<Jet>> holo) {
    int n = static_cast<int>(holo.size());
    if (n == 0) throw InvalidGerm("empty holomorphic matrix");
    int K = holo[0][0].order();
    int d = 2 * n;

    // z_k -> x_k + i y_k with real variables ordered (x_1..x_n, y_1..y_n)
    std::vector<Jet> images;
    for (int k = 0; k < n; ++k) {
        Jet zk = Jet::variable(d, K, k) + Scalar::i() * Jet::variable(d, K, n + k);
        images.push_back(zk);
    }

    std::vector<std::vector<Jet>> ghat(n, std::vector<Jet>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (holo[i][j] != holo[j][i]) throw InvalidGerm("holomorphic matrix not symmetric");
            ghat[i][j] = holo[i][j].substitute(images);
        }

    // Cauchy-Riemann on the realified entries: d/dy_j = i d/dx_j
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                Jet lhs = ghat[i][j].partial(n + m);
                Jet rhs = Scalar::i() * ghat[i][j].partial(m);
                if (lhs != rhs) throw InvalidGerm("Cauchy-Riemann relation violated");
            }

    auto re = [](const Jet& j) {
        Jet out(j.nvars(), j.order());
        for (const auto& [e, c] : j.terms()) out.set_coeff(e, Scalar(c.re));
        return out;
    };
    auto im = [](const Jet& j) {
        Jet out(j.nvars(), j.order());
        for (const auto& [e, c] : j.terms()) out.set_coeff(e, Scalar(c.im));
        return out;
    };

    // real metric blocks: g(X_i,X_j)=S, g(X_i,Y_j)=-T, g(Y_i,Y_j)=-S
    std::vector<std::vector<Jet>> g(d, std::vector<Jet>(d));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet S = re(ghat[i][j]), T = im(ghat[i][j]);
            g[i][j] = S;
            g[i][n + j] = -T;
            g[n + i][j] = -T;
            g[n + i][n + j] = -S;
        }
    // symmetry requires T itself symmetric, which holds since ghat is
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (g[i][j] != g[j][i]) throw InvalidGerm("realified metric not symmetric");

    MetricGerm germ;
    germ.d = d;
    germ.kind = MetricGerm::Kind::Complex;
    germ.K = K;
    germ.g = std::move(g);
    germ.holo = std::move(holo);

    Mat J(d, d);
    for (int k = 0; k < n; ++k) {
        J.at(n + k, k) = Scalar(1);
        J.at(k, n + k) = Scalar(-1);
    }
    germ.Jbar = J;

    Signature sig = congruence_signature(germ.g0());
    if (sig.null != 0) throw InvalidGerm("invalid germ: g(0) singular");
    germ.signature = {sig.pos, sig.neg};
    germ.validate();
    return germ;
}

Json germ_to_json(const MetricGerm& germ) {
    Json j;
    j["d"] = germ.d;
    j["signature"] = Json::array({germ.signature.first, germ.signature.second});
    j["kind"] = germ.kind == MetricGerm::Kind::Real ? "real" : "complex";
    Json rows = Json::array();
    const auto& entries = germ.kind == MetricGerm::Kind::Complex ? *germ.holo : germ.g;
    for (const auto& row : entries) {
        Json jrow = Json::array();
        for (const auto& e : row) jrow.push_back(jet_to_json(e));
        rows.push_back(jrow);
    }
    j["g"] = rows;
    if (!germ.meta.is_null()) j["meta"] = germ.meta;
    return j;
}

MetricGerm germ_from_json(const Json& j) {
    for (const char* key : {"d", "signature", "kind", "g"})
        if (!j.contains(key)) throw InvalidGerm(std::string("germ is missing key '") + key + "'");
    std::string kind = j.at("kind").get<std::string>();
    std::vector<std::vector<Jet>> entries;
    for (const auto& row : j.at("g")) {
        entries.emplace_back();
        for (const auto& e : row) entries.back().push_back(jet_from_json(e));
    }
    MetricGerm germ;
    if (kind == "real") {
        germ = make_real_germ(std::move(entries),
                              {j.at("signature")[0].get<int>(), j.at("signature")[1].get<int>()});
        if (germ.d != j.at("d").get<int>()) throw InvalidGerm("d does not match g size");
    } else if (kind == "complex") {
        germ = make_complex_germ(std::move(entries));
        if (germ.d != j.at("d").get<int>()) throw InvalidGerm("d must be twice the holomorphic size");
        std::pair<int, int> declared{j.at("signature")[0].get<int>(), j.at("signature")[1].get<int>()};
        if (declared != germ.signature) throw InvalidGerm("declared signature does not match g(0)");
    } else {
        throw InvalidGerm("kind must be 'real' or 'complex'");
    }
    if (j.contains("meta")) germ.meta = j.at("meta");
    return germ;
}

}  // namespace pea
