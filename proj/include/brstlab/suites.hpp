#pragma once

#include "brstlab/brst.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace brst {

/// Deterministic random elements with small exponents and coefficients.
class FieldSampler {
public:
    FieldSampler(const Context& ctx, uint64_t seed) : ctx_(ctx), rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    Scalar scalar();
    Mono mono(bool withMomenta = true);
    PhaseFunction function(int terms = 2, bool withMomenta = true);
    GhostWord word(int maxGhost = -1, int maxAnti = -1);
    FunSeries series(int order, int terms = 2, bool withMomenta = true);
    SuperField field(int order, int terms = 3);
    /// every term has the given parity
    SuperField homogeneous(int order, int parity, int terms = 3);
    /// single antighost degree
    SuperField antighost_field(int order, int l, int terms = 3);
    /// ghost words only, constraint-surface coefficients
    SuperField boundary_field(int order, int terms = 3);
    GrassElement grass(int order, int terms = 3);
    GrassElement grass_homogeneous(int order, int parity, int terms = 3);

private:
    const Context& ctx_;
    std::mt19937_64 rng_;
};

struct SuiteConfig {
    std::string suite = "all";
    std::string lie;
    std::string backend = "torus";
    int order = 4;
    int samples = 20;
    uint64_t seed = 1;
};

struct CaseResult {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct SuiteReport {
    SuiteConfig config;
    std::string lieName;
    std::vector<CaseResult> cases;

    int passed() const;
    int failed() const;
    std::string json() const;
    std::string text() const;
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const SuiteConfig& cfg);

} // namespace brst
