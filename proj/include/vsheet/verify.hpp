#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vsheet/models.hpp"

namespace vsheet {

// "<=" and "<" bound the worst value from above, ">" from below.
enum class Relation { at_most, below, above };

struct InvariantResult {
    std::string name;
    std::size_t samples = 0;
    double worst_value = 0.0;
    double threshold = 0.0;
    Relation relation = Relation::at_most;
    bool pass = false;
};

std::string to_string(Relation r);
Relation parse_relation(const std::string& text);
bool holds(Relation r, double worst, double threshold);  // NaN never holds

struct VerifyConfig {
    std::size_t samples = 10000;  // base Σ sample count; see run_invariants
    std::uint64_t seed = 1;
    double gamma_min = 1e-3;
    int workers = 1;
    // Replaces every positive "<=" threshold; exact-zero and lower-bound checks stay.
    std::optional<double> tolerance;
};

// Every invariant that applies to the model. Σ sample counts: the base count
// for the factorization, eigen and triangularization checks, 10× for the
// non-degeneracy minima, base/10 for the elimination cross-check and the
// pivot neighbourhood, base/100 (at least 10) for BVP solves.
std::vector<InvariantResult> run_invariants(const Model& m, const VerifyConfig& cfg);

bool all_pass(const std::vector<InvariantResult>& rs);

}  // namespace vsheet
