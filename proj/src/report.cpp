#include "rsrepair/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <sstream>
#include <stdexcept>

#include "rsrepair/constructions.hpp"
#include "rsrepair/random.hpp"

namespace rsrepair {

using ojson = nlohmann::ordered_json;

namespace {

const std::pair<Command, const char*> kCommands[] = {
    {Command::VerifyToy, "verify-toy"}, {Command::VerifyHalved, "verify-halved"},
    {Command::Search, "search"},        {Command::Orbit, "orbit"},
    {Command::Folded, "folded"},        {Command::Bounds, "bounds"},
    {Command::LeakageDemo, "leakage-demo"},
};

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

template <class T>
T need(const std::optional<T>& v, const char* flag) {
    if (!v) throw UsageError(std::string("missing required option --") + flag);
    return *v;
}

/// Evaluates task(i) for i < count on up to `workers` threads; results keep
/// input order regardless of scheduling.
template <class R>
std::vector<R> parallel_map(std::size_t count, unsigned workers, const std::function<R(std::size_t)>& task) {
    std::vector<std::optional<R>> slots(count);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) slots[i].emplace(task(i));
    };
    workers = std::max(1u, workers);
    if (workers == 1 || count < 2) {
        run_range(0, count);
    } else {
        const std::size_t chunk = (count + workers - 1) / workers;
        std::vector<std::future<void>> jobs;
        for (std::size_t b = 0; b < count; b += chunk) {
            jobs.push_back(std::async(std::launch::async, run_range, b, std::min(count, b + chunk)));
        }
        // get() rethrows the first failure in submission order
        for (auto& j : jobs) j.get();
    }
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<std::vector<std::size_t>> subsets(const std::vector<std::size_t>& pool, std::size_t d) {
    std::vector<std::vector<std::size_t>> out;
    if (d > pool.size()) return out;
    std::vector<bool> pick(pool.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(d), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (pick[i]) s.push_back(pool[i]);
        }
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

ojson residues(const std::vector<u64>& v) {
    ojson a = ojson::array();
    for (u64 x : v) a.push_back(x);
    return a;
}

struct SchemeVerdict {
    ojson json;
    VerdictRow row;
    bool valid;
};

SchemeVerdict describe(const RepairScheme& scheme, const SchemeValidation& v, const std::string& label) {
    const auto& pts = scheme.code().points();
    std::vector<u64> helper_points;
    for (std::size_t h : scheme.helpers()) helper_points.push_back(pts[h]);
    std::vector<u64> gammas;
    for (const auto& g : scheme.gammas()) gammas.push_back(g.value());

    ojson j;
    if (!label.empty()) j["label"] = label;
    j["failed"] = scheme.failed();
    j["failed_point"] = pts[scheme.failed()];
    j["helpers"] = scheme.helpers();
    j["helper_points"] = residues(helper_points);
    j["gammas"] = residues(gammas);
    j["t"] = scheme.t();
    j["s"] = scheme.s();
    j["valid"] = v.valid;
    j["candidates"] = v.candidates;
    j["counterexample"] = v.counterexample ? ojson(residues(v.counterexample->coeffs())) : ojson(nullptr);
    j["per_helper_bits"] = scheme.per_helper_bits();
    j["total_bits"] = scheme.total_bits();
    j["improved_bound_ok"] = !v.valid || improved_bound_consistency(scheme);

    const RepairReport r = bandwidth_report(scheme, v.valid);
    VerdictRow row{scheme.p(),         scheme.code().n(), scheme.k(),     scheme.d(),
                   std::to_string(pts[scheme.failed()]),  helper_points,  scheme.t(),
                   scheme.s(),         v.valid,           r.per_helper_bits,
                   r.total_bits,       r.cutset_bits,     r.improved_per_helper_bits * static_cast<double>(r.d),
                   r.trivial_bits};
    return {std::move(j), std::move(row), v.valid};
}

bool all_valid(const std::vector<SchemeVerdict>& v) {
    return std::all_of(v.begin(), v.end(), [](const SchemeVerdict& s) { return s.valid; });
}

void collect(ReportDocument& doc, std::vector<SchemeVerdict>& verdicts) {
    for (auto& v : verdicts) {
        doc.schemes.push_back(std::move(v.json));
        doc.rows.push_back(std::move(v.row));
    }
}

ojson config_json(const RunConfig& c) {
    ojson j;
    j["command"] = command_name(c.command);
    auto put = [&](const char* key, const auto& opt) {
        if (opt) j[key] = *opt;
    };
    put("p", c.p);
    put("n", c.n);
    put("k", c.k);
    put("d", c.d);
    put("t", c.t);
    put("delta", c.delta);
    if (c.xi) j["xi"] = bits_string(*c.xi);
    if (c.eps) j["eps"] = bits_string(*c.eps);
    if (c.command == Command::VerifyHalved) j["calibrate"] = c.calibrate;
    if (c.command == Command::Bounds || c.command == Command::Folded) j["ell"] = c.ell;
    if (c.command == Command::Search || c.command == Command::Orbit || c.command == Command::Folded ||
        c.command == Command::LeakageDemo) {
        j["trials"] = c.trials;
        j["seed"] = c.seed;
    }
    if (c.command == Command::Orbit || c.command == Command::Folded) j["samples"] = c.samples;
    j["budget"] = c.budget;
    return j;
}

// ---------------------------------------------------------------------------

int run_verify_toy(const RunConfig& c, ReportDocument& doc, const ValidationOptions& opts) {
    const u64 p = need(c.p, "p");
    const auto toy = toy_code_and_schemes(p);
    auto verdicts = parallel_map<SchemeVerdict>(toy.schemes.size(), c.workers, [&](std::size_t i) {
        return describe(toy.schemes[i], validate_scheme(toy.schemes[i], opts), "");
    });
    const bool ok = all_valid(verdicts);
    collect(doc, verdicts);
    doc.bounds = report_json(bandwidth_report(toy.schemes[0], ok));
    doc.summary["points"] = residues(toy.code.points());
    doc.summary["t"] = toy.t;
    doc.summary["all_valid"] = ok;
    return ok ? kOk : kValidationFailed;
}

int run_verify_halved(const RunConfig& c, ReportDocument& doc, const ValidationOptions& opts) {
    const u64 p = need(c.p, "p");
    const std::size_t n = need(c.n, "n"), k = need(c.k, "k"), d = need(c.d, "d");
    const auto hc = halved_code(n, k, d, p);
    std::optional<u64> fixed_t = c.t;
    if (!c.calibrate && !fixed_t) {
        if (!c.xi) throw UsageError("verify-halved needs one of --t, --xi or --calibrate");
        fixed_t = halved_formula_t(p, k, d, *c.xi);
    }

    struct Task {
        std::size_t delta;
        std::vector<std::size_t> helpers;
    };
    std::vector<Task> tasks;
    for (std::size_t delta = 0; delta < n; ++delta) {
        std::vector<std::size_t> pool;
        for (std::size_t j = 0; j < n; ++j) {
            if (hc.in_first_half(j) != hc.in_first_half(delta)) pool.push_back(j);
        }
        for (auto& h : subsets(pool, d)) tasks.push_back({delta, std::move(h)});
    }

    struct Outcome {
        SchemeVerdict verdict;
        std::optional<CalibrationResult> cal;
    };
    auto outcomes = parallel_map<Outcome>(tasks.size(), c.workers, [&](std::size_t i) {
        const auto& task = tasks[i];
        std::optional<CalibrationResult> cal;
        u64 t = fixed_t.value_or(1);
        if (c.calibrate) {
            cal = calibrate_t(hc, task.delta, task.helpers, opts);
            if (cal->budget_capped && !cal->valid) throw BudgetExceeded(opts.budget + 1, opts.budget);
            t = cal->t;
        }
        const auto scheme = halved_scheme(hc, task.delta, task.helpers, t);
        auto verdict = describe(scheme, validate_scheme(scheme, opts), "");
        if (cal) {
            verdict.json["calibration"] = {{"t", cal->t},
                                           {"valid", cal->valid},
                                           {"budget_capped", cal->budget_capped},
                                           {"validations", cal->validations}};
            verdict.valid = verdict.valid && cal->valid;
            verdict.row.valid = verdict.valid;
        }
        return Outcome{std::move(verdict), cal};
    });

    u64 t_min = 0, t_max = 0;
    bool ok = true, capped = false;
    std::vector<SchemeVerdict> verdicts;
    for (auto& o : outcomes) {
        const u64 t = o.verdict.row.t;
        t_min = t_min == 0 ? t : std::min(t_min, t);
        t_max = std::max(t_max, t);
        ok = ok && o.verdict.valid;
        if (o.cal) capped = capped || o.cal->budget_capped;
        verdicts.push_back(std::move(o.verdict));
    }
    collect(doc, verdicts);
    if (t_min > 0) doc.bounds = report_json(make_report(p, n, k, d, t_min, 1, ok));
    doc.summary["r"] = hc.r;
    doc.summary["points"] = residues(hc.code.points());
    doc.summary["schemes"] = doc.schemes.size();
    doc.summary["t_min"] = t_min;
    doc.summary["t_max"] = t_max;
    doc.summary["trivial_per_helper_bits"] = ceil_log2(p);
    if (c.calibrate) doc.summary["budget_capped"] = capped;
    doc.summary["all_valid"] = ok;
    return ok ? kOk : kValidationFailed;
}

int run_search(const RunConfig& c, ReportDocument& doc, const ValidationOptions& opts) {
    const u64 p = need(c.p, "p");
    const std::size_t n = need(c.n, "n"), d = need(c.d, "d");
    if (c.k && *c.k != 2) throw UsageError("search only covers k = 2");
    const u64 t = c.t ? *c.t : existence_t(n, d, p, c.eps.value_or(1.0));
    const auto result = search_k2(n, d, p, t, c.trials, c.seed, opts, c.workers);
    const RepairReport r = make_report(p, n, 2, d, t, 1, result.valid_count > 0);
    for (const auto& pts : result.valid_sets) {
        ojson j;
        j["points"] = residues(pts);
        j["t"] = t;
        j["s"] = r.s;
        j["valid"] = true;
        doc.schemes.push_back(std::move(j));
        doc.rows.push_back(VerdictRow{p, n, 2, d, "*", pts, t, r.s, true, r.per_helper_bits, r.total_bits,
                                      r.cutset_bits, r.improved_per_helper_bits * static_cast<double>(d),
                                      r.trivial_bits});
    }
    doc.bounds = report_json(r);
    doc.summary["t"] = t;
    doc.summary["trials"] = result.trials;
    doc.summary["valid_count"] = result.valid_count;
    doc.summary["fraction"] = bits_string(result.fraction);
    return result.valid_count > 0 ? kOk : kValidationFailed;
}

int run_orbit(const RunConfig& c, ReportDocument& doc, const ValidationOptions& opts) {
    const u64 p = need(c.p, "p");
    const std::size_t k = need(c.k, "k"), d = need(c.d, "d");
    const u64 delta = c.delta.value_or(0);
    const auto family = orbit_helper_sets(p, k, d, delta);
    u64 t;
    bool ref_ok = true;
    if (c.t) {
        t = *c.t;
    } else {
        const auto cal = calibrate_scheme_t(orbit_reference_scheme(p, k, d, 1), opts);
        ref_ok = cal.valid;
        t = cal.t;
    }
    const auto reference = orbit_reference_scheme(p, k, d, t);
    const auto ref_verdict = validate_scheme(reference, opts);

    Rng pick(c.seed, 0);
    std::vector<std::size_t> chosen;
    const std::size_t want = std::min(c.samples, family.members.size());
    while (chosen.size() < want) {
        const auto i = static_cast<std::size_t>(pick.below(family.members.size()));
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
    }

    struct Outcome {
        SchemeVerdict verdict;
        u64 failures;
    };
    auto outcomes = parallel_map<Outcome>(chosen.size(), c.workers, [&](std::size_t i) {
        const auto& member = family.members[chosen[i]];
        const auto scheme = orbit_member_scheme(family, member, reference);
        auto verdict = describe(scheme, validate_scheme(scheme, opts), "a=" + std::to_string(member.a));
        u64 failures = 0;
        if (verdict.valid) {
            Rng rng(c.seed, i + 1);
            for (u64 trial = 0; trial < c.trials; ++trial) {
                const auto f = random_polynomial(scheme.code().field(), k, rng);
                const auto word = encode(scheme.code(), f);
                if (repair(scheme, helper_messages(scheme, word), opts).value() != word.values[scheme.failed()]) {
                    ++failures;
                }
            }
        }
        verdict.json["round_trips"] = c.trials;
        verdict.json["round_trip_failures"] = failures;
        verdict.valid = verdict.valid && failures == 0;
        verdict.row.valid = verdict.valid;
        return Outcome{std::move(verdict), failures};
    });
    std::vector<SchemeVerdict> verdicts;
    for (auto& o : outcomes) verdicts.push_back(std::move(o.verdict));
    const bool ok = ref_ok && ref_verdict.valid && all_valid(verdicts);
    collect(doc, verdicts);
    doc.bounds = report_json(bandwidth_report(reference, ok));
    doc.summary["r"] = family.r;
    doc.summary["base_set"] = residues(family.base_set);
    doc.summary["stabilizer"] = residues(family.stabilizer);
    doc.summary["distinct_count"] = family.distinct_count;
    doc.summary["count_lower_bound"] = (p - 1 + d - 1) / d;
    doc.summary["t"] = t;
    doc.summary["reference_valid"] = ref_ok && ref_verdict.valid;
    doc.summary["all_valid"] = ok;
    return ok ? kOk : kValidationFailed;
}

int run_folded(const RunConfig& c, ReportDocument& doc, const ValidationOptions& opts) {
    const u64 p = need(c.p, "p");
    const std::size_t n = need(c.n, "n"), k = need(c.k, "k"), d = need(c.d, "d");
    const auto fc = folded_code(n, k, d, p);

    Rng pick(c.seed, 0);
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> tasks;
    for (std::size_t i = 0; i < c.samples; ++i) {
        const std::size_t node = c.delta && i == 0 ? static_cast<std::size_t>(*c.delta) : pick.below(n);
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != node) rest.push_back(j);
        }
        // partial Fisher-Yates for a uniform d-subset
        for (std::size_t j = 0; j < d; ++j) std::swap(rest[j], rest[j + pick.below(rest.size() - j)]);
        rest.resize(d);
        std::sort(rest.begin(), rest.end());
        tasks.emplace_back(node, std::move(rest));
    }

    auto verdicts = parallel_map<SchemeVerdict>(tasks.size(), c.workers, [&](std::size_t i) {
        const auto& [node, helpers] = tasks[i];
        const auto plan = folded_scheme(fc, node, helpers, opts);
        if (plan.budget_capped && !plan.valid) throw BudgetExceeded(opts.budget + 1, opts.budget);
        const auto lo = validate_scheme(plan.lower, opts);
        const auto hi = validate_scheme(plan.upper, opts);
        u64 failures = 0;
        if (lo.valid && hi.valid) {
            Rng rng(c.seed, i + 1);
            for (u64 trial = 0; trial < c.trials; ++trial) {
                const auto f = random_polynomial(fc.base.code.field(), 2 * k, rng);
                const auto word = folded_encode(fc, f);
                if (folded_repair(plan, word, opts) != word[node]) ++failures;
            }
        }
        const bool valid = plan.valid && lo.valid && hi.valid && failures == 0;
        std::vector<u64> helper_nodes;
        for (std::size_t j : plan.helpers) helper_nodes.push_back(j);
        ojson j;
        j["node"] = node;
        j["helpers"] = residues(helper_nodes);
        j["t"] = plan.t;
        j["s"] = plan.lower.s();
        j["valid"] = valid;
        j["lower"] = describe(plan.lower, lo, "").json;
        j["upper"] = describe(plan.upper, hi, "").json;
        j["round_trips"] = c.trials;
        j["round_trip_failures"] = failures;
        j["per_helper_bits"] = 2 * plan.per_helper_bits();
        j["total_bits"] = plan.total_bits();
        const RepairReport r = make_report(p, n, k, d, plan.t, 2, valid);
        VerdictRow row{p, n, k, d, std::to_string(node), helper_nodes, plan.t, r.s, valid, 2 * r.per_helper_bits,
                       r.total_bits, r.cutset_bits, r.improved_per_helper_bits * static_cast<double>(2 * d),
                       r.trivial_bits};
        return SchemeVerdict{std::move(j), std::move(row), valid};
    });

    u64 t_min = 0;
    for (const auto& v : verdicts) t_min = t_min == 0 ? v.row.t : std::min(t_min, v.row.t);
    const bool ok = all_valid(verdicts);
    collect(doc, verdicts);
    if (t_min > 0) {
        const RepairReport r = make_report(p, n, k, d, t_min, 2, ok);
        doc.bounds = report_json(r);
    }
    doc.summary["r"] = fc.base.r;
    doc.summary["target_bits"] =
        bits_string(2.0 * static_cast<double>(d) / static_cast<double>(d - 2 * k + 1) * std::log2(double(p)));
    if (d + 1 == n) doc.summary["gw_comparison_bits"] = bits_string((1.5 * double(n) - 2.0) * std::log2(double(p)));
    doc.summary["all_valid"] = ok;
    return ok ? kOk : kValidationFailed;
}

int run_bounds(const RunConfig& c, ReportDocument& doc) {
    const u64 p = need(c.p, "p");
    const std::size_t k = need(c.k, "k"), d = need(c.d, "d");
    const u64 t = need(c.t, "t");
    static_cast<void>(PrimeField(p));  // rejects composite p
    const std::size_t n = c.n.value_or(d + 1);
    const RepairReport r = make_report(p, n, k, d, t, c.ell, false);
    doc.bounds = report_json(r);
    doc.summary["improved_bound_consistent"] = improved_bound_consistency(r.s, p, k, d);
    doc.rows.push_back(VerdictRow{p, n, k, d, "", {}, t, r.s, false, r.per_helper_bits, r.total_bits, r.cutset_bits,
                                  r.improved_per_helper_bits * static_cast<double>(d * c.ell), r.trivial_bits});
    return kOk;
}

int run_leakage(const RunConfig& c, ReportDocument& doc, const ValidationOptions& opts) {
    const u64 p = need(c.p, "p");
    const std::size_t k = need(c.k, "k"), d = need(c.d, "d");
    std::optional<u64> t = c.t;
    if (!t) {
        const auto cal = calibrate_scheme_t(orbit_reference_scheme(p, k, d, 1), opts);
        if (!cal.valid) {
            doc.summary["all_valid"] = false;
            return kValidationFailed;
        }
        t = cal.t;
    }
    const u64 trials = std::max<u64>(1, c.trials);
    auto results = parallel_map<LeakageResult>(trials, c.workers, [&](std::size_t i) {
        return leakage_attack_demo(p, k, d, c.seed + i, t, opts);
    });
    u64 recovered = 0;
    for (const auto& r : results) {
        ojson j;
        j["seed"] = r.seed;
        j["helper_points"] = residues(r.helper_points);
        j["leaked_cells"] = residues(r.leaked_cells);
        j["secret"] = r.secret;
        j["reconstructed"] = r.reconstructed;
        j["bits_leaked_per_share"] = r.bits_leaked_per_share;
        doc.schemes.push_back(std::move(j));
        if (r.secret == r.reconstructed) ++recovered;
    }
    const RepairReport rep = make_report(p, d + 1, k, d, *t, 1, recovered == trials);
    doc.bounds = report_json(rep);
    doc.summary["t"] = *t;
    doc.summary["trials"] = trials;
    doc.summary["recovered"] = recovered;
    doc.summary["bits_leaked_per_share"] = rep.per_helper_bits;
    doc.summary["share_bits"] = ceil_log2(p);
    doc.summary["all_valid"] = recovered == trials;
    return recovered == trials ? kOk : kValidationFailed;
}

} // namespace

std::optional<Command> parse_command(const std::string& name) {
    for (const auto& [c, s] : kCommands) {
        if (name == s) return c;
    }
    return std::nullopt;
}

std::string command_name(Command c) {
    for (const auto& [cc, s] : kCommands) {
        if (cc == c) return s;
    }
    return "unknown";
}

std::string bits_string(double bits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", bits);
    return buf;
}

ojson report_json(const RepairReport& r) {
    ojson j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["k"] = r.k;
    j["d"] = r.d;
    j["ell"] = r.ell;
    j["t"] = r.t;
    j["s"] = r.s;
    j["per_helper_bits"] = r.per_helper_bits;
    j["total_bits"] = r.total_bits;
    j["total_bits_unrounded"] = bits_string(r.total_bits_unrounded);
    j["cutset_bits"] = bits_string(r.cutset_bits);
    j["improved_per_helper_bits"] = bits_string(r.improved_per_helper_bits);
    j["trivial_bits"] = r.trivial_bits;
    j["gw_comparison_bits"] = r.gw_comparison_bits ? ojson(bits_string(*r.gw_comparison_bits)) : ojson(nullptr);
    j["validated"] = r.validated;
    return j;
}

RunResult run(const RunConfig& config) {
    RunResult out{kOk, {}, {}};
    out.report.config = config_json(config);
    const ValidationOptions opts{config.budget};
    const auto start = std::chrono::steady_clock::now();
    try {
        if (config.budget < 1) throw UsageError("budget must be positive");
        switch (config.command) {
        case Command::VerifyToy: out.exit_code = run_verify_toy(config, out.report, opts); break;
        case Command::VerifyHalved: out.exit_code = run_verify_halved(config, out.report, opts); break;
        case Command::Search: out.exit_code = run_search(config, out.report, opts); break;
        case Command::Orbit: out.exit_code = run_orbit(config, out.report, opts); break;
        case Command::Folded: out.exit_code = run_folded(config, out.report, opts); break;
        case Command::Bounds: out.exit_code = run_bounds(config, out.report); break;
        case Command::LeakageDemo: out.exit_code = run_leakage(config, out.report, opts); break;
        }
    } catch (const BudgetExceeded& e) {
        out.exit_code = kBudgetExceeded;
        out.error = e.what();
    } catch (const RepairError& e) {
        out.exit_code = kValidationFailed;
        out.error = e.what();
    } catch (const std::invalid_argument& e) {
        out.exit_code = kUsage;
        out.error = e.what();
    } catch (const std::out_of_range& e) {
        out.exit_code = kUsage;
        out.error = e.what();
    } catch (const std::runtime_error& e) {
        out.exit_code = kValidationFailed;
        out.error = e.what();
    }
    if (!out.error.empty()) out.report.summary["error"] = out.error;
    if (config.timing) {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.report.timing["enabled"] = true;
        out.report.timing["wall_ms"] = bits_string(ms);
    } else {
        out.report.timing["enabled"] = false;
    }
    return out;
}

std::string emit(const ReportDocument& report, Format format) {
    if (format == Format::Json) {
        ojson j;
        j["config"] = report.config;
        j["schemes"] = report.schemes;
        j["bounds"] = report.bounds;
        j["summary"] = report.summary;
        j["timing"] = report.timing;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "p,n,k,d,delta,helpers,t,s,valid,per_helper_bits,total_bits,cutset_bits,improved_bits,trivial_bits\n";
    for (const auto& r : report.rows) {
        os << r.p << ',' << r.n << ',' << r.k << ',' << r.d << ',' << r.delta << ',';
        for (std::size_t i = 0; i < r.helpers.size(); ++i) os << (i ? ";" : "") << r.helpers[i];
        os << ',' << r.t << ',' << r.s << ',' << (r.valid ? "true" : "false") << ',' << r.per_helper_bits << ','
           << r.total_bits << ',' << bits_string(r.cutset_bits) << ',' << bits_string(r.improved_bits) << ','
           << r.trivial_bits << '\n';
    }
    return os.str();
}

} // namespace rsrepair
