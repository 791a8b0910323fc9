#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rsrepair/field.hpp"
#include "rsrepair/rs_code.hpp"

namespace rsrepair {

/// F_p split into s = ceil(p/t) runs A_m = [m*t, m*t + t - 1]; the last run
/// stops at p - 1 and may be shorter.
struct StandardPartition {
    u64 p;
    u64 t;
    u64 s;

    u64 cell_begin(u64 m) const noexcept { return m * t; }
    /// Inclusive.
    u64 cell_end(u64 m) const noexcept { return m + 1 == s ? p - 1 : m * t + t - 1; }
    u64 cell_size(u64 m) const noexcept { return cell_end(m) - cell_begin(m) + 1; }
    u64 index_of(u64 residue) const noexcept { return std::min(residue / t, s - 1); }
    ResidueSet cell(u64 m) const;
};

StandardPartition standard_partition(u64 p, u64 t);

/// Index m with gamma^{-1} * x in A_m.
u64 cell_of(const Element& x, const Element& gamma, const StandardPartition& partition);

/// Repair of one failed node from d helpers, each sending the index of the
/// cell of gamma_j * A_0, ..., gamma_j * A_{s-1} that holds its symbol.
class RepairScheme {
  public:
    /// Helpers are stored in ascending index order; gammas follow them.
    RepairScheme(RSCode code, std::size_t failed, std::vector<std::size_t> helpers, std::vector<Element> gammas, u64 t);

    const RSCode& code() const noexcept { return code_; }
    std::size_t failed() const noexcept { return failed_; }
    const std::vector<std::size_t>& helpers() const noexcept { return helpers_; }
    const std::vector<Element>& gammas() const noexcept { return gammas_; }
    u64 t() const noexcept { return t_; }
    std::size_t d() const noexcept { return helpers_.size(); }
    std::size_t k() const noexcept { return code_.k(); }
    u64 p() const noexcept { return code_.field().modulus(); }
    u64 s() const noexcept { return (p() + t_ - 1) / t_; }
    StandardPartition partition() const { return standard_partition(p(), t_); }

    unsigned per_helper_bits() const { return ceil_log2(s()); }
    u64 total_bits() const { return d() * per_helper_bits(); }

    RepairScheme with_t(u64 t) const;

  private:
    RSCode code_;
    std::size_t failed_;
    std::vector<std::size_t> helpers_;
    std::vector<Element> gammas_;
    u64 t_;
};

struct HelperMessage {
    std::size_t helper;
    u64 cell;

    friend bool operator==(const HelperMessage&, const HelperMessage&) = default;
};

/// What each helper transmits for the given codeword.
std::vector<HelperMessage> helper_messages(const RepairScheme& scheme, const Codeword& word);
std::vector<HelperMessage> helper_messages(const RepairScheme& scheme, std::span<const u64> helper_values);

struct ValidationOptions {
    /// Maximum number of enumerated candidate tuples per call.
    u64 budget = 10'000'000;
};

class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(u64 required, u64 budget);
    u64 required() const noexcept { return required_; }
    u64 budget() const noexcept { return budget_; }

  private:
    u64 required_;
    u64 budget_;
};

class RepairError : public std::runtime_error {
  public:
    enum class Kind { NoConsistentCodeword, Ambiguous };
    RepairError(Kind kind, const std::string& what, std::optional<std::size_t> row = std::nullopt);
    Kind kind() const noexcept { return kind_; }
    std::optional<std::size_t> row() const noexcept { return row_; }

  private:
    Kind kind_;
    std::optional<std::size_t> row_;
};

struct SchemeValidation {
    bool valid;
    /// deg < k, f(alpha_j) in gamma_j*[-t,t] at every helper, f(alpha_failed) != 0.
    std::optional<Polynomial> counterexample;
    u64 candidates;
};

/// Exhaustive check of the sufficient condition: every f of degree < k that
/// lands in gamma_j*[-t,t] at all helpers vanishes at the failed point. The
/// first k helpers are enumerated ((2t+1)^k tuples); the rest are tested.
SchemeValidation validate_scheme(const RepairScheme& scheme, const ValidationOptions& options = {});

/// Search decoder: enumerate the first k helpers inside their signalled
/// cells, keep candidates consistent with every other cell, and return the
/// common value at the failed point.
Element repair(const RepairScheme& scheme, std::span<const HelperMessage> messages,
               const ValidationOptions& options = {});

/// Repair of an F_{p^m} symbol given as m base-field coordinate rows, each
/// row holding the helper symbols (in helper order) of one coordinate.
std::vector<Element> extension_repair(const RepairScheme& scheme, std::span<const std::vector<u64>> rows,
                                      const ValidationOptions& options = {});

/// Bits a linear scheme pays over the nonlinear lift for F_{p^m}:
/// (ceil(dm/(d-1)) - dm/(d-1)) * log2(p).
double linear_gap(u64 d, u64 m, double p);

struct CalibrationResult {
    u64 t;
    unsigned per_helper_bits;
    /// False when even t = 1 fails; t is then reported as 1.
    bool valid;
    /// The search stopped at the enumeration budget, not at an invalid t.
    bool budget_capped;
    u64 validations;
};

/// Largest t (doubling, then bisection) for which the scheme validates.
/// Validity is monotone in t since the constraint sets only grow.
CalibrationResult calibrate_scheme_t(const RepairScheme& scheme, const ValidationOptions& options = {});

} // namespace rsrepair
