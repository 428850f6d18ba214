#pragma once

#include "brstlab/brst.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace brst {

enum class Verdict { CertifiedByTheorem, SampleConsistent, Fails };
std::string verdict_str(Verdict v);

struct Obstruction {
    int order = 0;
    PhaseFunction residual; // lambda^order coefficient of the CE defect
    PhaseFunction unsolvable; // part of the residual outside the image of the classical action
    std::string certificate;
    bool genuine = false; // true when the equation does not depend on earlier complement choices
};

struct SolveOutcome {
    PhaseFunction seed;
    std::optional<FunSeries> extension;
    std::optional<Obstruction> obstruction;
    bool extends() const { return extension.has_value(); }
};

/// Order-by-order construction of a quantum invariant u = u_0 + lambda u_1 + ... on C.
SolveOutcome solve_invariant(const Context& ctx, const PhaseFunction& seed, int order);

/// Variables on C that an invariant may depend on (torus: z, p; flat: x_j, p_j for j <= d-k).
std::vector<int> reduced_vars(const Context& ctx);
/// Classical invariant monomials with every reduced exponent bounded by maxDeg
/// (Fourier exponents run over -maxDeg..maxDeg).
std::vector<PhaseFunction> invariant_box(const Context& ctx, int maxDeg);

/// (1/i lambda)(J_a * f - f * J_a) == {J_a, f} on every probe; first failure in *witness.
bool check_strong_invariance(const Context& ctx, const std::vector<PhaseFunction>& probes, int order,
                             std::string* witness = nullptr);
/// monomials used to probe strong invariance
std::vector<PhaseFunction> function_probes(const Context& ctx, int maxDeg);

struct VerdictRecord {
    Verdict verdict = Verdict::Fails;
    int order = 0;
    bool strongInvariance = false;
    bool linear = true;
    std::vector<SolveOutcome> outcomes;
    std::optional<SolveOutcome> witness; // first obstructed sample
    std::string note;
};

VerdictRecord consistency_verdict(const Context& ctx, const std::vector<PhaseFunction>& samples, int order,
                                  uint64_t seed = 1);

struct TableEntry {
    PhaseFunction u;
    PhaseFunction v;
    FunSeries product;
};

/// All reduced products of box monomials; refuses when the verdict fails.
std::vector<TableEntry> reduced_table(const Context& ctx, int maxDeg, int order);

struct VeyRow {
    int r = 0;
    int orderFirst = 0;
    int orderSecond = 0;
    bool ok = true;
};

struct VeyReport {
    std::vector<VeyRow> rows;
    bool ok = true;
    std::string witness;
};

/// Highest total degree in the Newton forward-difference expansion of f sampled on [0,G]^dims
/// (missing points count as zero); -1 for the zero function.
int newton_degree(std::map<std::vector<int>, Scalar> f, int dims, int G);

/// Measure the differential order of C_r^red in each argument by probing monomials on a grid.
VeyReport vey_order_audit(const Context& ctx, int order, int rmax, int grid);

struct AlternateReport {
    bool augmentation = true; // the alternate data satisfies the deformed augmentation identities
    bool homomorphism = true; // Phi(u *red v) == Phi(u) *red' Phi(v) on the box
    bool identity = true; // Phi == id on the box
    bool productsEqual = true; // *red' == *red on the box
    bool prolongationChanged = false;
    int pairs = 0;
    std::string witness;
};

/// Rerun the reduction with prol' = exp(lambda J d/dp) prol and h_0' = h_0 (id - (prol' - prol) iota^*),
/// and check that Phi = r' o prol is an algebra isomorphism between the two reduced products.
AlternateReport alternate_homotopy_check(const Context& ctx, int maxDeg, int order);

} // namespace brst
