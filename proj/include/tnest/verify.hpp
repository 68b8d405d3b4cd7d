#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tnest {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;  // failure diagnostics, or brief statistics
    double seconds = 0;
};

// Oracle-backed property suite over seeded random instances: refinement
// against its naive counterparts, sampler invariants, chain uniformity,
// centrality agreement, baseline invariants and measure oracles. quick
// trims instance counts and chain lengths to finish within ~30 seconds.
std::vector<PropertyResult> run_property_suite(std::uint64_t seed, bool quick);

}  // namespace tnest
