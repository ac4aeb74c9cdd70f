#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betakit/identities.hpp"
#include "betakit/montecarlo.hpp"

namespace betakit {

inline constexpr const char* kVersion = "1.0.0";

// One parameter slot of a verification grid: an explicit value list
// (ranges are expanded by the CLI parser before they get here).
struct ParamSlot {
    std::vector<Param> values;
};

struct GridSpec {
    IdentityId id = IdentityId::thm21;
    std::vector<ParamSlot> param_slots;
    unsigned n_begin = 0;
    unsigned n_end = 0;  // inclusive
    EvalMode mode = EvalMode::exact;
    std::optional<double> tol;
    unsigned workers = 1;
};

// Cartesian product of the slots crossed with the n range, ordered by case
// key (slot values in listed order, n innermost).
std::vector<IdentityCase> expand_grid(const GridSpec& grid);

struct CaseOutcome {
    IdentityCase c;
    VerificationResult r;
};

struct SampleOutcome {
    ExperimentConfig config;
    MomentEstimate estimate;
    bool passed = false;
};

struct Report {
    std::string version = kVersion;
    std::string timestamp;  // text rendering only; the JSON schema omits it
    std::vector<CaseOutcome> cases;
    std::vector<SampleOutcome> samples;

    std::size_t total() const { return cases.size() + samples.size(); }
    std::size_t passed_count() const;
    double worst_discrepancy() const;
    bool all_passed() const { return passed_count() == total(); }
};

// Evaluates every case of the grid; cases are fanned out across `workers`
// threads and the report keeps grid order regardless of completion order.
Report run_verification_grid(const GridSpec& grid, const FloatEvalConfig& cfg = {});

std::string current_timestamp();

std::string param_to_string(const Param& p);

std::string render_text(const Report& report);
std::string render_csv(const Report& report);
// {version, cases:[{id, params, n, mode, lhs, rhs, discrepancy, passed,
// condition_hint?}], summary:{total, passed, worst_discrepancy}}; byte-stable
// for identical inputs and seed.
std::string render_json(const Report& report);
// Per-n rows of LHS, RHS, discrepancy; exact values are rendered from their
// rational parts and never pass through floating point.
std::string render_table_text(const Report& report);
std::string render_table_csv(const Report& report);

}  // namespace betakit
