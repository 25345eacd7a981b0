#ifndef PEA_PIPELINE_HPP
#define PEA_PIPELINE_HPP

#include <optional>

#include "pea/cartan.hpp"
#include "pea/generators.hpp"
#include "pea/verify.hpp"

namespace pea {

struct PipelineConfig {
    int deriv_order = 2;
    std::uint64_t seed = 1;
    int samples = 8;
    bool with_verification = true;
};

// exit codes: 0 classified, checks green; 2 classified, some check skipped;
// 3 out of classification scope (flat / decomposable / unknown fingerprint);
// 4 invalid input (thrown as InvalidGerm and mapped by the CLI)
struct PipelineResult {
    Json report;
    int exit_code = 0;
    TypeLabel label = TypeLabel::Unclassified;
    std::string label_text;

    std::optional<HolonomyResult> holonomy;
    std::optional<FixedSpace> e0;
    std::optional<EndoAlgebra> algebra;
    std::vector<Mat> rad;
    std::vector<Mat> n0;
    std::optional<Fingerprint> fp;
    StructureSet structures;
    std::vector<CatalogEntry> catalog;
    std::optional<VerificationReport> verification;
};

PipelineResult classify_germ(const MetricGerm& germ, const PipelineConfig& cfg);

// user-supplied span path: H+H is a legitimate outcome here
PipelineResult classify_span(const MatrixSpan& span, const Mat& gram, const PipelineConfig& cfg);

Json flag_report_to_json(const FlagReport& rep);
Json verification_to_json(const VerificationReport& rep);

// checked regeneration of the classification tables from the normal forms;
// throws on any failed relation
Json table_artifact(int which);

}  // namespace pea

#endif
