#include "rsrepair/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <string>

#include "rsrepair/random.hpp"

namespace rsrepair {

u64 toy_t(u64 p) { return integer_root(p, 2) / 5; }

ToyConstruction toy_code_and_schemes(u64 p) {
    const PrimeField F(p);
    const u64 t = toy_t(p);
    if (t < 1) throw std::invalid_argument("toy construction: p too small, floor(sqrt(p)/5) must be >= 1");
    if (2 * t + 1 >= p) throw std::invalid_argument("toy construction: p too small for 2t+1 < p");
    std::vector<u64> pts{0, F.neg(1), (p - 1) / 2, F.neg(2 * t + 1)};
    std::set<u64> uniq(pts.begin(), pts.end());
    if (uniq.size() != pts.size()) throw std::invalid_argument("toy construction: p too small, points collide");

    RSCode code(F, 2, pts);
    ToyConstruction out{code, t, {}};
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<std::size_t> helpers;
        std::vector<Element> gammas;
        for (std::size_t j = 0; j < 4; ++j) {
            if (j == i) continue;
            helpers.push_back(j);
            gammas.push_back(code.point(j) - code.point(i));
        }
        out.schemes.emplace_back(code, i, std::move(helpers), std::move(gammas), t);
    }
    return out;
}

HalvedCode halved_code(std::size_t n, std::size_t k, std::size_t d, u64 p) {
    const PrimeField F(p);
    if (k < 1) throw std::invalid_argument("halved code: k must be positive");
    if (!(k < d)) throw std::invalid_argument("halved code: need k < d");
    if (d > n / 2) throw std::invalid_argument("halved code: need d <= n/2");
    const std::size_t first = (n + 1) / 2;
    const std::size_t second = n / 2;
    const u64 r = integer_root(p, static_cast<unsigned>(d - k + 1));
    if (r < first) {
        throw std::invalid_argument("halved code: r = " + std::to_string(r) + " is smaller than the half size");
    }
    std::vector<u64> pts;
    for (std::size_t i = 1; i <= first; ++i) pts.push_back(i % p);
    for (std::size_t i = 1; i <= second; ++i) pts.push_back((r + i) % p);
    std::set<u64> uniq(pts.begin(), pts.end());
    if (uniq.size() != pts.size()) {
        throw std::invalid_argument("halved code: evaluation points collide modulo p (r = " + std::to_string(r) + ")");
    }
    return HalvedCode{RSCode(F, k, std::move(pts)), r, n, k, d, first};
}

std::vector<Element> design_gammas(const PrimeField& F, std::span<const u64> a, u64 delta, std::size_t k) {
    const std::size_t d = a.size();
    if (k < 1 || k > d) throw std::invalid_argument("design_gammas: need 1 <= k <= d");
    std::vector<Element> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        Element g = F.from_residue(a[i]) - F.from_residue(delta);
        if (i + 1 <= k - 1) {
            if (k % 2 == 1) g = -g;
            for (std::size_t j = 0; j < d; ++j) {
                if (j != i) g *= F.from_residue(a[j]) - F.from_residue(a[i]);
            }
        } else {
            for (std::size_t j = 0; j + 1 <= k - 1; ++j) g *= F.from_residue(a[i]) - F.from_residue(a[j]);
        }
        if (g.is_zero()) throw std::invalid_argument("design_gammas: points must be distinct");
        out.push_back(g);
    }
    return out;
}

RepairScheme halved_scheme(const HalvedCode& hc, std::size_t delta, std::vector<std::size_t> helpers, u64 t) {
    if (delta >= hc.code.n()) throw std::out_of_range("halved scheme: failed index out of range");
    if (helpers.size() != hc.d) throw std::invalid_argument("halved scheme: need exactly d helpers");
    std::sort(helpers.begin(), helpers.end());
    if (std::adjacent_find(helpers.begin(), helpers.end()) != helpers.end()) {
        throw std::invalid_argument("halved scheme: repeated helper");
    }
    const bool delta_first = hc.in_first_half(delta);
    std::vector<u64> pts;
    for (std::size_t h : helpers) {
        if (h >= hc.code.n()) throw std::out_of_range("halved scheme: helper index out of range");
        if (hc.in_first_half(h) == delta_first) {
            throw std::invalid_argument("halved scheme: helpers must all lie in the half opposite the failed node");
        }
        pts.push_back(hc.code.points()[h]);
    }
    auto gammas = design_gammas(hc.code.field(), pts, hc.code.points()[delta], hc.k);
    return RepairScheme(hc.code, delta, std::move(helpers), std::move(gammas), t);
}

u64 halved_formula_t(u64 p, std::size_t k, std::size_t d, double xi) {
    if (!(xi > 0)) throw std::invalid_argument("halved_formula_t: xi must be positive");
    const double e = 1.0 - 1.0 / static_cast<double>(d - k + 1);
    const double raw = std::ceil(xi * std::pow(static_cast<double>(p), e));
    const u64 t_max = (p - 1) / 2;
    if (raw < 1) return 1;
    return std::min<u64>(static_cast<u64>(raw), t_max);
}

CalibrationResult calibrate_t(const HalvedCode& hc, std::size_t delta, const std::vector<std::size_t>& helpers,
                              const ValidationOptions& options) {
    return calibrate_scheme_t(halved_scheme(hc, delta, helpers, 1), options);
}

OrbitHelperFamily orbit_helper_sets(u64 p, std::size_t k, std::size_t d, u64 delta, std::size_t member_limit) {
    const PrimeField F(p);
    if (k < 1 || !(k < d)) throw std::invalid_argument("orbit helper sets: need 1 <= k < d");
    if (delta >= p) throw std::invalid_argument("orbit helper sets: delta must be a residue");
    const u64 r = integer_root(p, static_cast<unsigned>(d - k + 1));
    if (r + d >= p) throw std::invalid_argument("orbit helper sets: p too small, [r+1, r+d] wraps");

    OrbitHelperFamily out{p, k, d, delta, r, {}, {}, 0, {}, false};
    // Relative to delta the stabilizer acts by multiplication, and A - delta = [r, r+d-1].
    std::vector<u64> shifted;
    for (std::size_t j = 1; j <= d; ++j) shifted.push_back(r + j - 1);
    for (u64 x : shifted) out.base_set.push_back(F.add(x, delta));
    std::sort(out.base_set.begin(), out.base_set.end());

    const std::set<u64> shifted_set(shifted.begin(), shifted.end());
    const u64 x0_inv = F.inv(shifted.front());
    for (u64 y : shifted) {
        const u64 a = F.mul(y, x0_inv);
        bool fixes = true;
        for (u64 x : shifted) {
            if (!shifted_set.count(F.mul(a, x))) {
                fixes = false;
                break;
            }
        }
        if (fixes) out.stabilizer.push_back(a);
    }
    std::sort(out.stabilizer.begin(), out.stabilizer.end());
    out.distinct_count = (p - 1) / out.stabilizer.size();

    for (u64 a = 1; a < p; ++a) {
        bool smallest = true;
        for (u64 s : out.stabilizer) {
            if (F.mul(a, s) < a) {
                smallest = false;
                break;
            }
        }
        if (!smallest) continue;
        if (out.members.size() >= member_limit) {
            out.truncated = true;
            break;
        }
        std::vector<u64> pts;
        for (u64 x : shifted) pts.push_back(F.add(F.mul(a, x), delta));
        std::sort(pts.begin(), pts.end());
        const Element ae = F.from_residue(a);
        const AffineMap forward{ae, F.from_residue(delta) - ae};  // g_a o h
        OrbitMember m{std::move(pts), a, forward.inverse()};
        out.members.push_back(std::move(m));
    }
    return out;
}

RepairScheme orbit_reference_scheme(u64 p, std::size_t k, std::size_t d, u64 t) {
    const PrimeField F(p);
    if (k < 1 || !(k < d)) throw std::invalid_argument("orbit reference: need 1 <= k < d");
    const u64 r = integer_root(p, static_cast<unsigned>(d - k + 1));
    if (r + d >= p) throw std::invalid_argument("orbit reference: p too small, [r+1, r+d] wraps");
    std::vector<u64> pts{1};
    std::vector<u64> helper_pts;
    std::vector<std::size_t> helpers;
    for (std::size_t j = 1; j <= d; ++j) {
        pts.push_back(r + j);
        helper_pts.push_back(r + j);
        helpers.push_back(j);
    }
    auto gammas = design_gammas(F, helper_pts, 1, k);
    return RepairScheme(RSCode(F, k, std::move(pts)), 0, std::move(helpers), std::move(gammas), t);
}

RepairScheme orbit_member_scheme(const OrbitHelperFamily& family, const OrbitMember& member,
                                 const RepairScheme& reference) {
    const PrimeField& F = reference.code().field();
    if (F.modulus() != family.p || reference.k() != family.k || reference.d() != family.d) {
        throw std::invalid_argument("orbit member scheme: reference does not match the family parameters");
    }
    const AffineMap lift = member.reduce.inverse();
    std::vector<u64> pts;
    for (u64 x : reference.code().points()) pts.push_back(lift.apply(x));
    if (pts[reference.failed()] != family.delta) {
        throw std::logic_error("orbit member scheme: reducing map does not fix the failed point");
    }
    std::vector<u64> image;
    for (std::size_t h : reference.helpers()) image.push_back(pts[h]);
    std::sort(image.begin(), image.end());
    if (image != member.points) throw std::logic_error("orbit member scheme: reducing map does not match the member");
    return RepairScheme(RSCode(F, reference.k(), std::move(pts)), reference.failed(), reference.helpers(),
                        reference.gammas(), reference.t());
}

FoldedCode folded_code(std::size_t n, std::size_t k, std::size_t d, u64 p) {
    if (!(2 * k < d && d < n)) throw std::invalid_argument("folded code: need 2k < d < n");
    return FoldedCode{halved_code(2 * n, 2 * k, d, p), n, k, d};
}

std::vector<SuperSymbol> folded_encode(const FoldedCode& fc, const Polynomial& f) {
    const Codeword w = encode(fc.base.code, f);
    std::vector<SuperSymbol> out;
    out.reserve(fc.n);
    for (std::size_t i = 0; i < fc.n; ++i) out.emplace_back(w.values[i], w.values[fc.n + i]);
    return out;
}

namespace {

std::vector<std::size_t> checked_folded_helpers(const FoldedCode& fc, std::size_t node, std::vector<std::size_t> helpers) {
    if (node >= fc.n) throw std::out_of_range("folded scheme: node out of range");
    if (helpers.size() != fc.d) throw std::invalid_argument("folded scheme: need exactly d helpers");
    std::sort(helpers.begin(), helpers.end());
    if (std::adjacent_find(helpers.begin(), helpers.end()) != helpers.end()) {
        throw std::invalid_argument("folded scheme: repeated helper");
    }
    for (std::size_t j : helpers) {
        if (j >= fc.n) throw std::out_of_range("folded scheme: helper out of range");
        if (j == node) throw std::invalid_argument("folded scheme: failed node cannot help");
    }
    return helpers;
}

std::vector<std::size_t> upper_indices(const FoldedCode& fc, const std::vector<std::size_t>& helpers) {
    std::vector<std::size_t> out;
    for (std::size_t j : helpers) out.push_back(fc.n + j);
    return out;
}

} // namespace

FoldedRepairPlan folded_scheme_at(const FoldedCode& fc, std::size_t node, std::vector<std::size_t> helpers, u64 t) {
    helpers = checked_folded_helpers(fc, node, std::move(helpers));
    RepairScheme lower = halved_scheme(fc.base, node, upper_indices(fc, helpers), t);
    RepairScheme upper = halved_scheme(fc.base, fc.n + node, helpers, t);
    return FoldedRepairPlan{node, std::move(helpers), std::move(lower), std::move(upper), t, true, false};
}

FoldedRepairPlan folded_scheme(const FoldedCode& fc, std::size_t node, std::vector<std::size_t> helpers,
                               const ValidationOptions& options) {
    helpers = checked_folded_helpers(fc, node, std::move(helpers));
    const auto lo = calibrate_t(fc.base, node, upper_indices(fc, helpers), options);
    const auto hi = calibrate_t(fc.base, fc.n + node, helpers, options);
    FoldedRepairPlan plan = folded_scheme_at(fc, node, helpers, std::min(lo.t, hi.t));
    plan.valid = lo.valid && hi.valid;
    plan.budget_capped = lo.budget_capped || hi.budget_capped;
    return plan;
}

SuperSymbol folded_repair(const FoldedRepairPlan& plan, std::span<const SuperSymbol> word,
                          const ValidationOptions& options) {
    const std::size_t n = plan.lower.code().n() / 2;
    if (word.size() != n) throw std::invalid_argument("folded repair: word length does not match the code");
    std::vector<u64> upper_vals, lower_vals;
    for (std::size_t h : plan.lower.helpers()) upper_vals.push_back(word[h - n].second);
    for (std::size_t h : plan.upper.helpers()) lower_vals.push_back(word[h].first);
    const Element a = repair(plan.lower, helper_messages(plan.lower, upper_vals), options);
    const Element b = repair(plan.upper, helper_messages(plan.upper, lower_vals), options);
    return {a.value(), b.value()};
}

u64 existence_t(std::size_t n, std::size_t d, u64 p, double eps) {
    if (d < 2 || d >= n) throw std::invalid_argument("existence_t: need 2 <= d < n");
    const double dd = static_cast<double>(d);
    const double num = eps * std::pow(static_cast<double>(p), (dd - 2) / (dd - 1));
    const double den = 10.0 * std::pow(static_cast<double>(n), (dd + 1) / (dd - 1));
    return std::max<u64>(1, static_cast<u64>(std::ceil(num / den)));
}

bool evaluation_set_repairable(const PrimeField& F, std::span<const u64> points, std::size_t d, u64 t,
                               const ValidationOptions& options) {
    const std::size_t n = points.size();
    if (d < 2 || d >= n) throw std::invalid_argument("evaluation_set_repairable: need 2 <= d < n");
    const RSCode code(F, 2, std::vector<u64>(points.begin(), points.end()));
    for (std::size_t failed = 0; failed < n; ++failed) {
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != failed) rest.push_back(j);
        }
        // walk all d-subsets of `rest` via a selection mask
        std::vector<bool> pick(rest.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(d), true);
        do {
            std::vector<std::size_t> helpers;
            std::vector<Element> gammas;
            for (std::size_t j = 0; j < rest.size(); ++j) {
                if (!pick[j]) continue;
                helpers.push_back(rest[j]);
                gammas.push_back(code.point(rest[j]) - code.point(failed));
            }
            if (!validate_scheme(RepairScheme(code, failed, helpers, gammas, t), options).valid) return false;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return true;
}

std::vector<u64> sample_evaluation_set(const PrimeField& F, std::size_t n, u64 seed, u64 trial) {
    if (n > F.modulus()) throw std::invalid_argument("sample_evaluation_set: n exceeds p");
    Rng rng(seed, trial);
    while (true) {
        std::vector<u64> pts(n);
        for (u64& x : pts) x = rng.below(F.modulus());
        std::set<u64> uniq(pts.begin(), pts.end());
        if (uniq.size() == n) return pts;
    }
}

SearchResult search_k2(std::size_t n, std::size_t d, u64 p, u64 t, u64 trials, u64 seed,
                       const ValidationOptions& options, unsigned workers) {
    const PrimeField F(p);
    if (d < 2 || d >= n) throw std::invalid_argument("search_k2: need 2 <= d < n");
    if (t < 1) throw std::invalid_argument("search_k2: t must be positive");
    if (trials < 1) throw std::invalid_argument("search_k2: trials must be positive");
    std::vector<std::vector<u64>> sets(trials);
    std::vector<char> ok(trials, 0);
    auto run_range = [&](u64 begin, u64 end) {
        for (u64 i = begin; i < end; ++i) {
            sets[i] = sample_evaluation_set(F, n, seed, i);
            ok[i] = evaluation_set_repairable(F, sets[i], d, t, options) ? 1 : 0;
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        run_range(0, trials);
    } else {
        std::vector<std::future<void>> jobs;
        const u64 chunk = (trials + workers - 1) / workers;
        for (u64 b = 0; b < trials; b += chunk) jobs.push_back(std::async(std::launch::async, run_range, b, std::min(trials, b + chunk)));
        for (auto& j : jobs) j.get();
    }

    SearchResult out{trials, 0, 0.0, {}};
    for (u64 i = 0; i < trials; ++i) {
        if (!ok[i]) continue;
        ++out.valid_count;
        out.valid_sets.push_back(sets[i]);
    }
    out.fraction = static_cast<double>(out.valid_count) / static_cast<double>(trials);
    return out;
}

} // namespace rsrepair
