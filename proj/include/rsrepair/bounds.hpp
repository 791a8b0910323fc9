#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rsrepair/field.hpp"
#include "rsrepair/repair.hpp"

namespace rsrepair {

/// Achieved bandwidth next to the reference bounds, all in bits (log base 2).
struct RepairReport {
    u64 p;
    std::size_t n;
    std::size_t k;
    std::size_t d;
    std::size_t ell;
    u64 t;
    u64 s;
    unsigned per_helper_bits;
    u64 total_bits;
    /// ell * d * log2(s), before the per-helper ceiling.
    double total_bits_unrounded;
    double cutset_bits;
    double improved_per_helper_bits;
    u64 trivial_bits;
    /// (3n/2 - 2) log2 p, only when d = n - 1.
    std::optional<double> gw_comparison_bits;
    bool validated;
};

/// Report for a symmetric scheme with ell coordinates per symbol, each
/// repaired with messages of ceil(log2 ceil(p/t)) bits per helper.
RepairReport make_report(u64 p, std::size_t n, std::size_t k, std::size_t d, u64 t, std::size_t ell = 1,
                         bool validated = false);

RepairReport bandwidth_report(const RepairScheme& scheme, bool validated);

/// s^{d-k+1} >= k p / 2, i.e. log2 s >= (log2(kp) - 1)/(d-k+1), in exact integers.
bool improved_bound_consistency(u64 s, u64 p, std::size_t k, std::size_t d);
bool improved_bound_consistency(const RepairScheme& scheme);

struct USetDiagnostic {
    std::vector<ResidueSet> cells;
    /// First column of the inverse of V_ij = (alpha_j - alpha)^{i-1}.
    std::vector<u64> coefficients;
    ResidueSet u_set;
    /// k * min|A_i| - k, floored at 0.
    u64 size_lower_bound;
    /// min(sum |A_i| - (k - 1), p), iterated Cauchy-Davenport.
    u64 cauchy_davenport_bound;
};

/// The set of values f(failed) over all f of degree < k with f(points[j]) in
/// cells[j]. Throws std::logic_error if V^{-1} has a zero in its first column.
USetDiagnostic u_set(const PrimeField& F, std::span<const ResidueSet> cells, std::span<const u64> points, u64 failed);

/// Inverse of a square matrix over F_p by Gauss-Jordan; nullopt if singular.
std::optional<std::vector<std::vector<u64>>> invert_matrix(const PrimeField& F, std::vector<std::vector<u64>> m);

struct LeakageResult {
    u64 p;
    std::size_t k;
    std::size_t d;
    u64 seed;
    u64 t;
    u64 s;
    /// Points the adversary leaks from; the secret sits at 0.
    std::vector<u64> helper_points;
    std::vector<u64> leaked_cells;
    u64 secret;
    u64 reconstructed;
    unsigned bits_leaked_per_share;
    unsigned share_bits;
};

/// Secret f(0) of a random degree < k polynomial, recovered from a few bits of
/// d shares chosen from the orbit family at 0. Without t the reference scheme
/// is calibrated first. Throws if the scheme does not validate.
LeakageResult leakage_attack_demo(u64 p, std::size_t k, std::size_t d, u64 seed, std::optional<u64> t = std::nullopt,
                                  const ValidationOptions& options = {});

/// Same attack on a given polynomial and orbit member index.
LeakageResult leakage_attack(const Polynomial& f, std::size_t k, std::size_t d, std::size_t member_index, u64 t,
                             const ValidationOptions& options = {});

/// Shamir privacy at tiny p: for every value of the shares at `points`
/// (fewer than k of them, none at 0), every secret occurs for exactly
/// p^{k-1-|points|} polynomials. Exhaustive over all p^k polynomials.
bool shares_reveal_nothing(u64 p, std::size_t k, std::span<const u64> points);

} // namespace rsrepair
