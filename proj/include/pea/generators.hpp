#ifndef PEA_GENERATORS_HPP
#define PEA_GENERATORS_HPP

#include <cstdint>

#include "pea/endoalgebra.hpp"
#include "pea/metric.hpp"

namespace pea {

// ---- potential-driven constructions -------------------------------------

// (1/2) sum_i eps_i z_i zbar_i as a jet in 2n variables (z_1..z_n, zbar_1..zbar_n)
Jet kaehler_base_potential(int n, int p, int q, int order);

// real germ of dimension 2n from a Kaehler potential u(z, zbar); validates the
// reality condition and the invertibility of the Hessian block at 0.
// The multiplication-by-i witness goes into meta.witnesses.
MetricGerm germ_from_kaehler_potential(const Jet& u);

// real germ of dimension 2n, signature (n,n), from a para-Kaehler potential
// u(x, y); g(X_i, Y_j) = d^2u / dx_i dy_j, isotropic coordinate blocks.
MetricGerm germ_from_parakaehler_potential(const Jet& u);

// ---- seeded generators per type ------------------------------------------

MetricGerm germ_type1(int d, int p, int q, std::uint64_t seed, int K = 4);
MetricGerm germ_kaehler(int n, int p, int q, std::uint64_t seed, int K = 4);
MetricGerm germ_parakaehler(int n, std::uint64_t seed, int K = 4);

// real part of a holomorphic perturbation of the flat complex metric (n
// complex dimensions, real dimension 2n)
MetricGerm germ_complex_riemannian(int n, std::uint64_t seed, int K = 4);

// complexified para-Kaehler potential on C^{2n}: real dimension 4n
MetricGerm germ_complex_kaehler(int n, std::uint64_t seed, int K = 4);

// quaternionic-type germs through the closed-form construction for the moment
// map H : C^{2 delta} -> H_eps, solved degree by degree to `jet_order`.
// eps = -1 gives type (3) with signature (4p,4q); eps = +1 gives type (3');
// complex_case builds the holomorphic variant, real dimension 8 delta.
struct OmegaHGerm {
    MetricGerm germ;
    Mat J;                      // witness at 0
    Mat U;                      // witness at 0
    int certified_deriv_order;  // jet_order - 2
};
OmegaHGerm germ_omega_h(int delta, int eps, int p, int q, bool complex_case, int jet_order,
                        std::uint64_t seed);

// auxiliary germs used by the verification suites
MetricGerm germ_plane_wave(int K = 4);           // d=4, parallel degenerate Ricci
MetricGerm germ_constant_curvature(int d, const Rational& c, int K = 4);  // Einstein sample

// ---- normal forms and the negative control --------------------------------

// Exact matrices of the classification table in a well-chosen basis; the
// returned set contains "g" plus the structures of the type. Throws a usage
// error when the signature is not admissible for the label.
struct NormalFormFrame {
    Mat g;
    StructureSet structures;
};
NormalFormFrame normal_form_frame(TypeLabel label, int p, int q);

// alternate gauge of the paraKaehler normal form and its basis change:
// Q^{-1} L Q = I_{p,p} and Q^T I_{p,p} Q = 2 L_p
Mat parakaehler_gauge_change(int p);

bool signature_admissible(TypeLabel label, int p, int q);

// The 8-dimensional quaternionic-pair span acting on R^8 together with the
// invariant neutral Gram matrix. Feeding it through commutant+classify is the
// negative control: it classifies as H+H, which no germ can produce.
struct NegativeControl {
    MatrixSpan span;
    Mat gram;
};
NegativeControl hh_negative_control();

// generation with bounded retries until the holonomy dimension matches;
// wraps the per-type generators above (meta records every seed tried)
MetricGerm generate_generic(TypeLabel label, int p, int q, std::uint64_t seed, int max_retries = 8);

}  // namespace pea

#endif
