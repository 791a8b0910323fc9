#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rsrepair/repair.hpp"
#include "rsrepair/rs_code.hpp"

namespace rsrepair {

// ---------------------------------------------------------------------------
// [4,2] toy code on 0, -1, (p-1)/2, -(2t+1) with t = floor(sqrt(p)/5).

struct ToyConstruction {
    RSCode code;
    u64 t;
    /// schemes[i] repairs node i from the other three, gamma_j = alpha_j - alpha_i.
    std::vector<RepairScheme> schemes;
};

u64 toy_t(u64 p);
ToyConstruction toy_code_and_schemes(u64 p);

// ---------------------------------------------------------------------------
// Two-halves construction: points 1..n1 and r+1..r+n2 with
// r = floor(p^{1/(d-k+1)}); a node is repaired from d helpers of the other half.

struct HalvedCode {
    RSCode code;
    u64 r;
    std::size_t n;
    std::size_t k;
    std::size_t d;
    /// Indices [0, first_half) hold 1..first_half, the rest hold r+1, r+2, ...
    std::size_t first_half;

    bool in_first_half(std::size_t index) const noexcept { return index < first_half; }
};

HalvedCode halved_code(std::size_t n, std::size_t k, std::size_t d, u64 p);

/// Helper multipliers for failed point delta and helpers sorted ascending:
///   i <= k-1: (-1)^k (a_i - delta) prod_{j != i, j <= d} (a_j - a_i)
///   i >= k:   (a_i - delta) prod_{j <= k-1} (a_i - a_j)
std::vector<Element> design_gammas(const PrimeField& F, std::span<const u64> helper_points, u64 delta, std::size_t k);

/// Scheme for `delta` with helpers all taken from the opposite half.
RepairScheme halved_scheme(const HalvedCode& hc, std::size_t delta, std::vector<std::size_t> helpers, u64 t);

/// ceil(xi * p^{1 - 1/(d-k+1)}), clamped to [1, (p-1)/2].
u64 halved_formula_t(u64 p, std::size_t k, std::size_t d, double xi);

CalibrationResult calibrate_t(const HalvedCode& hc, std::size_t delta, const std::vector<std::size_t>& helpers,
                              const ValidationOptions& options = {});

// ---------------------------------------------------------------------------
// Helper sets for the full-length code: images of A = h([r+1, r+d]),
// h(x) = x + delta - 1, under the stabilizer g_a(x) = a x + delta (1 - a).

struct OrbitMember {
    /// Sorted member points.
    std::vector<u64> points;
    u64 a;
    /// (g_a o h)^{-1}: sends delta to 1 and the member onto [r+1, r+d].
    AffineMap reduce;
};

struct OrbitHelperFamily {
    u64 p;
    std::size_t k;
    std::size_t d;
    u64 delta;
    u64 r;
    std::vector<u64> base_set;
    /// Multipliers a with g_a(A) = A; a subgroup of F_p^*.
    std::vector<u64> stabilizer;
    /// (p - 1) / |stabilizer|.
    u64 distinct_count;
    /// One member per coset of the stabilizer, smallest a first.
    std::vector<OrbitMember> members;
    bool truncated;
};

OrbitHelperFamily orbit_helper_sets(u64 p, std::size_t k, std::size_t d, u64 delta,
                                    std::size_t member_limit = 1'000'000);

/// Failed point 1 with helpers r+1..r+d on the punctured two-halves code.
RepairScheme orbit_reference_scheme(u64 p, std::size_t k, std::size_t d, u64 t);

/// The reference scheme carried to (delta, member). Code points are
/// [delta, T^{-1}(r+1), ..., T^{-1}(r+d)] with T = member.reduce, so helper
/// j inherits the reference gamma of r+j.
RepairScheme orbit_member_scheme(const OrbitHelperFamily& family, const OrbitMember& member,
                                 const RepairScheme& reference);

// ---------------------------------------------------------------------------
// Folded code: super-symbol i is (f(i), f(r+i)) for f of degree < 2k over
// the two-halves code with parameters (2n, 2k, d).

struct FoldedCode {
    HalvedCode base;
    std::size_t n;
    std::size_t k;
    std::size_t d;
};

FoldedCode folded_code(std::size_t n, std::size_t k, std::size_t d, u64 p);

using SuperSymbol = std::pair<u64, u64>;

std::vector<SuperSymbol> folded_encode(const FoldedCode& fc, const Polynomial& f);

struct FoldedRepairPlan {
    std::size_t node;
    std::vector<std::size_t> helpers;
    /// Repairs f(node) from the upper coordinates f(r+j), j in helpers.
    RepairScheme lower;
    /// Repairs f(r+node) from the lower coordinates f(j), j in helpers.
    RepairScheme upper;
    u64 t;
    bool valid;
    bool budget_capped;

    unsigned per_helper_bits() const { return lower.per_helper_bits(); }
    u64 total_bits() const { return lower.total_bits() + upper.total_bits(); }
};

/// Calibrates each sub-scheme and runs both at the smaller t.
FoldedRepairPlan folded_scheme(const FoldedCode& fc, std::size_t node, std::vector<std::size_t> helpers,
                               const ValidationOptions& options = {});

/// Plan at a fixed t, without calibration.
FoldedRepairPlan folded_scheme_at(const FoldedCode& fc, std::size_t node, std::vector<std::size_t> helpers, u64 t);

SuperSymbol folded_repair(const FoldedRepairPlan& plan, std::span<const SuperSymbol> word,
                          const ValidationOptions& options = {});

// ---------------------------------------------------------------------------
// Randomized search over [n, 2] evaluation sets with gamma_i = alpha_i - alpha_l.

/// ceil(eps * p^{(d-2)/(d-1)} / (10 n^{(d+1)/(d-1)})), at least 1.
u64 existence_t(std::size_t n, std::size_t d, u64 p, double eps);

/// Every failed node and every d-subset of the remaining nodes validates.
bool evaluation_set_repairable(const PrimeField& F, std::span<const u64> points, std::size_t d, u64 t,
                               const ValidationOptions& options = {});

struct SearchResult {
    u64 trials;
    u64 valid_count;
    double fraction;
    std::vector<std::vector<u64>> valid_sets;
};

/// Trial i draws from Rng(seed, i), so the result does not depend on how
/// trials are split across workers.
SearchResult search_k2(std::size_t n, std::size_t d, u64 p, u64 t, u64 trials, u64 seed,
                       const ValidationOptions& options = {}, unsigned workers = 1);

std::vector<u64> sample_evaluation_set(const PrimeField& F, std::size_t n, u64 seed, u64 trial);

} // namespace rsrepair
