#ifndef PEA_ENDOALGEBRA_HPP
#define PEA_ENDOALGEBRA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pea/holonomy.hpp"
#include "pea/rng.hpp"

namespace pea {

// Radical of the (finite dimensional, involutive) algebra: kernel of the
// trace form <U,V> = (1/d) tr(U* V). Recomputed independently through the
// one-sided criterion {x : tr(xy) = 0 for all y}; both routes must agree and
// the result must be a sigma-stable nilpotent two-sided ideal.
std::vector<Mat> radical(const EndoAlgebra& e);

struct Fingerprint {
    int dim_s = 0;
    int dim_s_plus = 0;
    std::pair<int, int> sig_s{0, 0};
    std::pair<int, int> sig_s_plus{0, 0};

    friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
        return a.dim_s == b.dim_s && a.dim_s_plus == b.dim_s_plus && a.sig_s == b.sig_s &&
               a.sig_s_plus == b.sig_s_plus;
    }
    std::string str() const;
};

Fingerprint fingerprint(const EndoAlgebra& e, const std::vector<Mat>& rad);

enum class TypeLabel {
    Generic,            // (1)
    ComplexRiemannian,  // (1C)
    Kaehler,            // (2)
    ParaKaehler,        // (2')
    ComplexKaehler,     // (2C)
    HyperKaehler,       // (3)
    ParaHyperKaehler,   // (3')
    ComplexHyperKaehler,// (3C)
    QuaternionicPair,   // H+H, never germ-derived
    Unclassified,
};

std::string label_code(TypeLabel l);   // "1", "1C", ..., "H+H"
std::string label_name(TypeLabel l);
std::optional<TypeLabel> label_from_code(const std::string& code);

TypeLabel classify(const Fingerprint& fp);
Fingerprint expected_fingerprint(TypeLabel l);  // lookup row of the table

// Exact (para)complex structure representatives inside e realizing the
// generator relations of the classified type. Lifting through the radical
// uses the terminating binomial series (Id - N)^{-1/2} with N nilpotent.
struct StructureSet {
    std::map<std::string, Mat> mats;  // keys: Jbar, J, L, J1, J2, J3, L1, L2, JbarJ, JbarL1, JbarL2

    bool has(const std::string& k) const { return mats.count(k) != 0; }
    const Mat& get(const std::string& k) const { return mats.at(k); }
};

struct LiftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// `hints` are candidate matrices tried first (generator witnesses); they are
// validated like any other candidate before use.
StructureSet lift_structures(const EndoAlgebra& e, const std::vector<Mat>& rad, TypeLabel label,
                             Rng& rng, const std::vector<Mat>& hints = {});

// Verifies adjointness types, squares, and all pairwise generator relations
// of the type. Throws on any violation.
void verify_structure_relations(const EndoAlgebra& e, TypeLabel label, const StructureSet& s);

// (Id - N)^{-1/2} for nilpotent N, exact.
Mat inv_sqrt_one_minus(const Mat& n);

struct ManifoldCheck {
    std::string description;
    std::vector<std::string> samples;
    bool passed = true;
};

// The families of (para)complex structures of the type: finite sets {+-X},
// the sphere / hyperboloids of the quaternionic cases, with exact rational
// sample points verified on both sides (on-quadric and off-quadric).
std::vector<ManifoldCheck> structure_manifolds(const EndoAlgebra& e, const StructureSet& s,
                                               TypeLabel label);

struct CatalogEntry {
    std::string kind;       // metric | symplectic | complex_riemannian_metric |
                            // hermitian_kaehler_metric | cx_symplectic_selfadj |
                            // cx_symplectic_skew | complex_volume_selfadj | complex_volume_skew
    std::string parameter;  // description of U
    Mat U;
    bool symmetry_ok = false;
    bool nondegenerate = false;
};

std::vector<CatalogEntry> parallel_tensor_catalog(const EndoAlgebra& e, const std::vector<Mat>& rad,
                                                  const StructureSet& s, TypeLabel label);

// helpers shared with tests/table command
EndoAlgebra algebra_generated_by(const Mat& g, const std::vector<Mat>& gens);
std::vector<Vec> complex_frame(const Mat& x);  // basis f with (f, X f) a real basis
Mat complex_form_matrix(const Mat& b1, const Mat& b2, const std::vector<Vec>& frame);
std::vector<Mat> intersect_spans(const std::vector<Mat>& a, const std::vector<Mat>& b);
std::vector<Mat> sub_span_commuting(const std::vector<Mat>& pool, const Mat& x);

}  // namespace pea

#endif
