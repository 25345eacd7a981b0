#ifndef PEA_VERIFY_HPP
#define PEA_VERIFY_HPP

#include <string>
#include <vector>

#include "pea/endoalgebra.hpp"
#include "pea/geometry.hpp"

namespace pea {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string note;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::uint64_t seed = 0;
    int samples = 0;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.skipped && !c.passed) return false;
        return true;
    }
    bool any_skipped() const {
        for (const auto& c : checks)
            if (c.skipped) return true;
        return false;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// identity suites at the origin; all equalities exact
VerificationReport run_verification(const MetricGerm& germ, const CurvatureAtOrigin& curv,
                                    const EndoAlgebra& e, const std::vector<Mat>& rad,
                                    const FixedSpace& e0, const StructureSet& s,
                                    std::uint64_t seed, int samples);

// R(x,y)(UV - VU) = 0 for selfadjoint U; Im(UV-VU) in E0; commutativity when
// E0 = 0 (exposed separately for the negative control, where it must fail)
bool pseudocommutation_holds(const CurvatureAtOrigin& curv, const EndoAlgebra& e,
                             const FixedSpace& e0, Rng& rng, int samples, std::string* witness);

}  // namespace pea

#endif
