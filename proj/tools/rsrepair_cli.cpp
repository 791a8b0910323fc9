#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rsrepair/report.hpp"

using namespace rsrepair;

namespace {

template <class T>
void optional_flag(CLI::App& app, const std::string& name, std::optional<T>& target, const std::string& help) {
    app.add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear repair schemes for prime-field Reed-Solomon codes"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string out_path;
    std::string format = "json";
    if (const char* env = std::getenv("RS_REPAIR_BUDGET")) {
        try {
            cfg.budget = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: RS_REPAIR_BUDGET is not a number: " << env << "\n";
            return kUsage;
        }
    }

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"verify-toy", "validate the four schemes of the [4,2] toy code"},
        {"verify-halved", "validate every (failed, opposite-half helper set) of the two-halves code"},
        {"search", "random search for [n,2] evaluation sets repairable by every d helpers"},
        {"orbit", "helper-set family of a failed point and its reduction to the reference scheme"},
        {"folded", "repair of the folded code from sampled helper sets"},
        {"bounds", "bandwidth against the cut-set, improved and trivial bounds"},
        {"leakage-demo", "recover a Shamir secret from a few bits of each share"},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        optional_flag(*sub, "--p", cfg.p, "prime modulus");
        optional_flag(*sub, "--n", cfg.n, "code length");
        optional_flag(*sub, "--k", cfg.k, "dimension");
        optional_flag(*sub, "--d", cfg.d, "number of helpers");
        optional_flag(*sub, "--t", cfg.t, "interval half-width (skips calibration)");
        optional_flag(*sub, "--delta", cfg.delta, "failed point (orbit) or first failed node (folded)");
        optional_flag(*sub, "--xi", cfg.xi, "scale of the closed-form t for verify-halved");
        optional_flag(*sub, "--eps", cfg.eps, "scale of the closed-form t for search");
        sub->add_flag("--calibrate", cfg.calibrate, "find the largest valid t per scheme");
        sub->add_option("--ell", cfg.ell, "coordinates per symbol (bounds)");
        sub->add_option("--trials", cfg.trials, "random trials or round trips");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--samples", cfg.samples, "sampled members or helper sets");
        sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--budget", cfg.budget, "enumeration budget per validation");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out_path, "write the report here instead of stdout");
        sub->add_flag("--timing", cfg.timing, "include wall-clock timing (breaks byte-stability)");
        sub->callback([&cfg, name = std::string(s.name)] { cfg.command = *parse_command(name); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    cfg.format = format == "csv" ? Format::Csv : Format::Json;

    const RunResult result = run(cfg);
    if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
    const std::string text = emit(result.report, cfg.format);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kUsage;
        }
        f << text;
    }
    return result.exit_code;
}
