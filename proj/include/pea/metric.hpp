#ifndef PEA_METRIC_HPP
#define PEA_METRIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "pea/jet.hpp"
#include "pea/matrix.hpp"

// vendored single-header json
#include "json.hpp"

namespace pea {

using Json = nlohmann::ordered_json;

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);
Json jet_to_json(const Jet& jet);
Jet jet_from_json(const Json& j);

struct InvalidGerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Metric germ at the origin. Complex-holomorphic germs are stored realified:
// dimension doubles, the multiplication-by-i endomorphism is kept as Jbar and
// the original holomorphic matrix is retained for serialization.
struct MetricGerm {
    enum class Kind { Real, Complex };

    int d = 0;                          // real dimension
    std::pair<int, int> signature{0, 0};
    Kind kind = Kind::Real;
    int K = 0;                          // truncation order of the entries
    std::vector<std::vector<Jet>> g;    // d x d jets in d real variables
    std::optional<Mat> Jbar;            // complex kind only
    std::optional<std::vector<std::vector<Jet>>> holo;  // complex kind only
    Json meta;                          // generator annotations, passed through

    Mat g0() const;
    void validate() const;
};

MetricGerm make_real_germ(std::vector<std::vector<Jet>> g, std::pair<int, int> signature);

// Builds the realified germ of a holomorphic metric: `holo` is an n x n
// symmetric matrix of jets in n complex variables with Gaussian-rational
// coefficients. Checks the Cauchy-Riemann relation on the realified entries.
MetricGerm make_complex_germ(std::vector<std::vector<Jet>> holo);

Json germ_to_json(const MetricGerm& germ);
MetricGerm germ_from_json(const Json& j);

Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

}  // namespace pea

#endif
