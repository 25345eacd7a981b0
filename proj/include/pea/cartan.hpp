#ifndef PEA_CARTAN_HPP
#define PEA_CARTAN_HPP

#include <string>
#include <vector>

#include "pea/matrix.hpp"

namespace pea {

// Formal complex scalar: re + j*im with j the complex unit of the base
// C^{2 delta}. The machine parts stay rational in the real cases and become
// Gaussian rationals in the complexified one.
struct FC {
    Scalar re, im;

    FC() = default;
    FC(Scalar r) : re(std::move(r)) {}
    FC(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}

    static FC j() { return FC(Scalar(0), Scalar(1)); }
    FC conj() const { return FC(re, -im); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    FC operator-() const { return FC(-re, -im); }
    friend FC operator+(const FC& a, const FC& b) { return FC(a.re + b.re, a.im + b.im); }
    friend FC operator-(const FC& a, const FC& b) { return FC(a.re - b.re, a.im - b.im); }
    friend FC operator*(const FC& a, const FC& b) {
        return FC(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend bool operator==(const FC& a, const FC& b) { return a.re == b.re && a.im == b.im; }
};

using FCVec = std::vector<FC>;
using FCMat = std::vector<std::vector<FC>>;

// Model of the tangent space at the base point H0 of the constraint manifold
// H_eps: dim W = 2 delta^2 + delta, plus the flag vectors e_1..e_{4 delta}.
struct TangentModel {
    int delta = 1;
    int eps = -1;           // -1 or +1 (ignored when complex_case)
    int p = 1, q = 0;       // base point data for eps = -1
    bool complex_case = false;

    Mat H0;                  // real matrix, 2d x 2d
    Mat Omega0;
    std::vector<FCMat> W;    // basis of the tangent space, formal matrices
    std::vector<FCVec> flag; // e_1..e_{4 delta} (horizontal, as C^{2d} vectors)
};

TangentModel build_tangent_model(int delta, int eps, int p, int q, bool complex_case);

struct FlagReport {
    int delta = 0;
    int eps = 0;
    bool complex_case = false;
    int p = 0, q = 0;
    int dim_W = 0;
    std::vector<int> characters;  // s_1..s_{4 delta}
    int dim_V = 0;                // dim of the integral-element variety
    long cartan_bound = 0;        // sum k * s_k
    bool involutive = false;      // equality in Cartan's inequality
    int last_nonzero_index = 0;
    int last_nonzero_value = 0;
    bool horizontal_integral_ok = false;
    bool relations_hold = false;
    bool relations_independent = false;
    int relation_count = 0;
};

// characters s_k = codim_{H(E_{k-1})} H(E_k)
std::vector<int> polar_characters(const TangentModel& model);

// dim of {H^(1) : lambda_{H^(1)} = 0} inside Hom(R^{4 delta}, W)
int integral_variety_dim(const TangentModel& model);

// full test: characters, dim V, Cartan equality, the redundancy-relation
// identities and their independence
FlagReport cartan_test(int delta, int eps, int p, int q, bool complex_case);

}  // namespace pea

#endif
