#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rsrepair/bounds.hpp"
#include "rsrepair/repair.hpp"

namespace rsrepair {

enum class Command { VerifyToy, VerifyHalved, Search, Orbit, Folded, Bounds, LeakageDemo };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

enum class Format { Json, Csv };

struct RunConfig {
    Command command = Command::VerifyToy;
    std::optional<u64> p;
    std::optional<std::size_t> n;
    std::optional<std::size_t> k;
    std::optional<std::size_t> d;
    std::optional<u64> t;
    /// Failed point for `orbit`; node index for `folded`.
    std::optional<u64> delta;
    /// Scale for the closed-form t of the halved construction.
    std::optional<double> xi;
    /// Scale for the closed-form t of the randomized search.
    std::optional<double> eps;
    bool calibrate = false;
    std::size_t ell = 1;
    u64 trials = 100;
    u64 seed = 1;
    /// Members / (node, helper set) pairs sampled by `orbit` and `folded`.
    std::size_t samples = 5;
    unsigned workers = 1;
    u64 budget = 10'000'000;
    Format format = Format::Json;
    bool timing = false;
};

/// One (failed, helper-set) verdict, i.e. one CSV row.
struct VerdictRow {
    u64 p;
    std::size_t n;
    std::size_t k;
    std::size_t d;
    std::string delta;
    std::vector<u64> helpers;
    u64 t;
    u64 s;
    bool valid;
    unsigned per_helper_bits;
    u64 total_bits;
    double cutset_bits;
    double improved_bits;
    u64 trivial_bits;
};

struct ReportDocument {
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    nlohmann::ordered_json schemes = nlohmann::ordered_json::array();
    nlohmann::ordered_json bounds = nlohmann::ordered_json::object();
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    nlohmann::ordered_json timing = nlohmann::ordered_json::object();
    std::vector<VerdictRow> rows;
};

enum ExitCode : int { kOk = 0, kUsage = 1, kValidationFailed = 2, kBudgetExceeded = 3 };

struct RunResult {
    int exit_code;
    ReportDocument report;
    /// Set for usage and budget failures.
    std::string error;
};

/// Runs one command. Parameter errors, budget overruns and failed
/// validations come back as exit codes, never as exceptions.
RunResult run(const RunConfig& config);

std::string emit(const ReportDocument& report, Format format);

/// Fractional bits at three decimals.
std::string bits_string(double bits);

nlohmann::ordered_json report_json(const RepairReport& r);

} // namespace rsrepair
