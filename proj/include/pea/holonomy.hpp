#ifndef PEA_HOLONOMY_HPP
#define PEA_HOLONOMY_HPP

#include <optional>
#include <vector>

#include "pea/geometry.hpp"
#include "pea/matrix.hpp"
#include "pea/rng.hpp"

namespace pea {

// Linearly independent d x d matrices spanning a subspace of End(R^d);
// bracket_closed marks spans closed under the Lie bracket.
struct MatrixSpan {
    int d = 0;
    std::vector<Mat> basis;
    bool bracket_closed = false;

    int dim() const { return static_cast<int>(basis.size()); }
};

// Span of the curvature endomorphisms and their covariant derivatives at 0,
// Lie-bracket closed at each order. Stops at the first order that adds
// nothing (or at the computed cap) and reports how far it got.
struct HolonomyResult {
    MatrixSpan span;
    int order_probed = 0;         // highest derivative order inspected
    int stabilization_order = 0;  // last order that enlarged the span
    bool stabilized = false;      // an order adding nothing was seen
    std::vector<int> dims_by_order;
};

HolonomyResult holonomy_span(const CurvatureAtOrigin& curv);

// E0 = intersection of the kernels of the span elements, plus the isotropy
// probe: a nonzero E0 that is not totally isotropic signals a decomposable
// germ (warning, not an error).
struct FixedSpace {
    std::vector<Vec> basis;
    bool isotropic = true;
    bool decomposable_warning = false;

    int dim() const { return static_cast<int>(basis.size()); }
};

FixedSpace fixed_space(const MatrixSpan& h, const Mat& g0);

// Algebra of endomorphisms commuting with a holonomy span, with the
// g-adjunction involution. Closed under products and sigma by construction;
// both facts are re-verified on the computed basis.
class EndoAlgebra {
  public:
    EndoAlgebra(std::vector<Mat> basis, Mat g0);

    int d() const { return g0_.rows(); }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Mat>& basis() const { return basis_; }
    const Mat& g0() const { return g0_; }
    const Mat& g0_inv() const { return g0inv_; }

    Mat adjoint(const Mat& u) const;  // u* = g0^{-1} u^T g0
    bool contains(const Mat& u) const { return span_.contains_mat(u); }
    std::optional<Vec> coords(const Mat& u) const;

    // bases of the selfadjoint / skewadjoint parts
    const std::vector<Mat>& plus_basis() const { return plus_; }
    const std::vector<Mat>& minus_basis() const { return minus_; }

    // trace form <U,V> = (1/d) tr(U* V) on given matrices
    Scalar trace_form(const Mat& u, const Mat& v) const;
    // untwisted form tr(UV) (used by the independent radical route)
    Scalar trace_pairing(const Mat& u, const Mat& v) const;

  private:
    std::vector<Mat> basis_;
    Mat g0_, g0inv_;
    SpanBuilder span_;
    std::vector<Mat> plus_, minus_;
};

Mat adjoint_of(const Mat& u, const Mat& g0, const Mat& g0inv);

// Commutant of the span in M_d, as the nullspace of the stacked Sylvester
// system UW - WU = 0. An empty span yields all of M_d.
EndoAlgebra commutant(const MatrixSpan& h, const Mat& g0);

// n0 = {N in e : Im N inside E0}; checks n0^2 = 0, the two-sided ideal
// property and sigma-stability (failures throw: they indicate a non-germ
// input or an internal bug).
std::vector<Mat> n0_ideal(const EndoAlgebra& e, const MatrixSpan& h, const FixedSpace& e0);

// Cheap necessary decomposability probe: squarefree minimal polynomials of
// sampled selfadjoint elements must stay irreducible over R.
bool decomposability_probe(const EndoAlgebra& e, Rng& rng, int samples = 8);

}  // namespace pea

#endif
