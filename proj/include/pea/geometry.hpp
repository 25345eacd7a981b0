#ifndef PEA_GEOMETRY_HPP
#define PEA_GEOMETRY_HPP

#include <vector>

#include "pea/matrix.hpp"
#include "pea/metric.hpp"

namespace pea {

// Christoffel symbols Gamma[k][i][j] as jets at order K-1, symmetric in (i,j).
using ChristoffelJets = std::vector<std::vector<std::vector<Jet>>>;

ChristoffelJets christoffel(const MetricGerm& germ);

// Same computation on an arbitrary symmetric matrix of jets (used for the
// holomorphic Ricci oracle where the "metric" is complex-valued).
ChristoffelJets christoffel_from_jets(const std::vector<std::vector<Jet>>& g, int order);

// Curvature endomorphisms at the origin: level r holds all
// (D^r R)(e_i, e_j; e_{u_1}, ..., e_{u_r}) with i < j, each a d x d matrix.
class CurvatureAtOrigin {
  public:
    int d = 0;
    int max_deriv = 0;

    // levels[r]: index = ((pair(i,j) * d + u_1) * d + u_2) ...
    std::vector<std::vector<Mat>> levels;

    static int pair_index(int i, int j, int d);  // requires i < j

    const Mat& R(int i, int j) const;  // i < j
    const std::vector<Mat>& level(int r) const { return levels.at(r); }

    // all endomorphisms of all levels up to r, in deterministic order
    std::vector<const Mat*> through_level(int r) const;
};

// Exact curvature and covariant derivatives at 0. Requires K >= max_deriv+2,
// otherwise throws with the order that would be needed.
CurvatureAtOrigin curvature(const MetricGerm& germ, int max_deriv);

// Consistency checks on the computed curvature (antisymmetry handled by
// construction): first Bianchi identity and the pair symmetry
// g(R(x,y)z,t) = g(R(z,t)x,y) at the origin. Throws on violation.
void verify_curvature_identities(const CurvatureAtOrigin& curv, const Mat& g0);

// ric(e_i, e_j) = tr(v -> R(e_i, v) e_j) at the origin.
Mat ricci(const MetricGerm& germ);

// Ricci tensor as jets (order K-2), same convention.
std::vector<std::vector<Jet>> ricci_jets(const MetricGerm& germ);

// Ricci of an arbitrary jet matrix (complex allowed); order = entry order.
Mat ricci_from_jets(const std::vector<std::vector<Jet>>& g);

// First covariant derivative of ric at 0: slot m last. Zero iff ric is
// parallel to the order visible in the jets.
std::vector<Mat> covariant_dricci_at_origin(const MetricGerm& germ);

}  // namespace pea

#endif
