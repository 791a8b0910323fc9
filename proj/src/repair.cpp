#include "rsrepair/repair.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace rsrepair {

namespace {

/// Odometer over the integer box prod_j [lo_j, hi_j] (last coordinate
/// fastest) that tracks the residues y_m = sum_j step[j][m] * u_j mod p.
/// Each move costs one modular addition per target, no multiplications.
template <class Visit>
void walk_box(const PrimeField& F, std::span<const i64> lo, std::span<const i64> hi,
              const std::vector<std::vector<u64>>& step, std::size_t targets, Visit&& visit) {
    const std::size_t k = lo.size();
    std::vector<i64> u(lo.begin(), lo.end());
    std::vector<u64> y(targets, 0);
    std::vector<std::vector<u64>> rewind(k, std::vector<u64>(targets));
    for (std::size_t j = 0; j < k; ++j) {
        const u64 start = F.reduce(lo[j]);
        const u64 span = F.reduce(hi[j] - lo[j]);
        for (std::size_t m = 0; m < targets; ++m) {
            y[m] = F.add(y[m], F.mul(step[j][m], start));
            rewind[j][m] = F.mul(step[j][m], span);
        }
    }
    while (true) {
        if (!visit(std::span<const u64>(y), std::span<const i64>(u))) return;
        std::size_t j = k - 1;
        while (true) {
            if (u[j] < hi[j]) {
                ++u[j];
                const auto& inc = step[j];
                for (std::size_t m = 0; m < targets; ++m) y[m] = F.add(y[m], inc[m]);
                break;
            }
            u[j] = lo[j];
            const auto& back = rewind[j];
            for (std::size_t m = 0; m < targets; ++m) y[m] = F.sub(y[m], back[m]);
            if (j == 0) return;
            --j;
        }
    }
}

/// Lagrange weight of designated point j at z.
u64 lagrange_weight(const PrimeField& F, std::span<const u64> xs, std::size_t j, u64 z) {
    u64 num = 1, den = 1;
    for (std::size_t l = 0; l < xs.size(); ++l) {
        if (l == j) continue;
        num = F.mul(num, F.sub(z, xs[l]));
        den = F.mul(den, F.sub(xs[j], xs[l]));
    }
    return F.mul(num, F.inv(den));
}

/// Linear maps from the designated coordinates u_j (with v_j = gamma_j u_j)
/// to the scaled values gamma_m^{-1} f(alpha_m) at the other helpers,
/// followed by the raw value f(alpha_failed) as the last target.
struct Layout {
    std::vector<u64> designated_points;
    std::vector<std::vector<u64>> step;  // [j][target]
    std::size_t others;
};

Layout make_layout(const RepairScheme& scheme) {
    const PrimeField& F = scheme.code().field();
    const auto& pts = scheme.code().points();
    const std::size_t k = scheme.k();
    const std::size_t d = scheme.d();
    Layout out;
    for (std::size_t j = 0; j < k; ++j) out.designated_points.push_back(pts[scheme.helpers()[j]]);
    out.others = d - k;
    out.step.assign(k, std::vector<u64>(out.others + 1));
    for (std::size_t j = 0; j < k; ++j) {
        const u64 gj = scheme.gammas()[j].value();
        for (std::size_t m = 0; m < out.others; ++m) {
            const u64 z = pts[scheme.helpers()[k + m]];
            const u64 inv_gm = F.inv(scheme.gammas()[k + m].value());
            out.step[j][m] = F.mul(F.mul(inv_gm, lagrange_weight(F, out.designated_points, j, z)), gj);
        }
        const u64 z = pts[scheme.failed()];
        out.step[j][out.others] = F.mul(lagrange_weight(F, out.designated_points, j, z), gj);
    }
    return out;
}

u64 saturating_product(std::span<const i64> lo, std::span<const i64> hi) {
    u128 acc = 1;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        acc *= static_cast<u128>(hi[j] - lo[j] + 1);
        if (acc > std::numeric_limits<u64>::max()) return std::numeric_limits<u64>::max();
    }
    return static_cast<u64>(acc);
}

} // namespace

ResidueSet StandardPartition::cell(u64 m) const {
    if (m >= s) throw std::out_of_range("partition cell index out of range");
    ResidueSet out;
    for (u64 x = cell_begin(m); x <= cell_end(m); ++x) out.push_back(x);
    return out;
}

StandardPartition standard_partition(u64 p, u64 t) {
    if (t == 0 || t >= p) throw std::invalid_argument("standard_partition: need 1 <= t < p");
    return StandardPartition{p, t, (p + t - 1) / t};
}

u64 cell_of(const Element& x, const Element& gamma, const StandardPartition& partition) {
    if (gamma.is_zero()) throw std::invalid_argument("cell_of: gamma must be nonzero");
    if (x.modulus() != partition.p || gamma.modulus() != partition.p) {
        throw std::invalid_argument("cell_of: element and partition over different fields");
    }
    return partition.index_of((gamma.inverse() * x).value());
}

RepairScheme::RepairScheme(RSCode code, std::size_t failed, std::vector<std::size_t> helpers,
                           std::vector<Element> gammas, u64 t)
    : code_(std::move(code)), failed_(failed), t_(t) {
    const std::size_t n = code_.n();
    if (failed_ >= n) throw std::out_of_range("repair scheme: failed index out of range");
    if (helpers.size() != gammas.size()) throw std::invalid_argument("repair scheme: one gamma per helper");
    std::vector<std::size_t> order(helpers.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return helpers[a] < helpers[b]; });
    for (std::size_t i : order) {
        if (helpers[i] >= n) throw std::out_of_range("repair scheme: helper index out of range");
        if (helpers[i] == failed_) throw std::invalid_argument("repair scheme: failed node cannot help");
        if (!helpers_.empty() && helpers_.back() == helpers[i]) {
            throw std::invalid_argument("repair scheme: repeated helper");
        }
        if (gammas[i].modulus() != code_.field().modulus()) {
            throw std::invalid_argument("repair scheme: gamma over a different field");
        }
        if (gammas[i].is_zero()) throw std::invalid_argument("repair scheme: gammas must be nonzero");
        helpers_.push_back(helpers[i]);
        gammas_.push_back(gammas[i]);
    }
    if (helpers_.size() < code_.k() || helpers_.size() > n - 1) {
        throw std::invalid_argument("repair scheme: need k <= d <= n-1 helpers");
    }
    if (t_ == 0 || 2 * t_ + 1 > code_.field().modulus()) {
        throw std::invalid_argument("repair scheme: need t >= 1 and 2t+1 <= p");
    }
}

RepairScheme RepairScheme::with_t(u64 t) const { return RepairScheme(code_, failed_, helpers_, gammas_, t); }

std::vector<HelperMessage> helper_messages(const RepairScheme& scheme, std::span<const u64> helper_values) {
    if (helper_values.size() != scheme.d()) throw std::invalid_argument("helper_messages: one value per helper");
    const auto part = scheme.partition();
    const PrimeField& F = scheme.code().field();
    std::vector<HelperMessage> out;
    out.reserve(scheme.d());
    for (std::size_t j = 0; j < scheme.d(); ++j) {
        out.push_back({scheme.helpers()[j], cell_of(F.from_residue(helper_values[j]), scheme.gammas()[j], part)});
    }
    return out;
}

std::vector<HelperMessage> helper_messages(const RepairScheme& scheme, const Codeword& word) {
    if (!(word.code == scheme.code())) throw std::invalid_argument("helper_messages: codeword of a different code");
    std::vector<u64> vals;
    for (std::size_t h : scheme.helpers()) vals.push_back(word.values[h]);
    return helper_messages(scheme, vals);
}

BudgetExceeded::BudgetExceeded(u64 required, u64 budget)
    : std::runtime_error("enumeration budget exceeded: need " + std::to_string(required) + " candidates, budget " +
                         std::to_string(budget)),
      required_(required), budget_(budget) {}

RepairError::RepairError(Kind kind, const std::string& what, std::optional<std::size_t> row)
    : std::runtime_error(what), kind_(kind), row_(row) {}

SchemeValidation validate_scheme(const RepairScheme& scheme, const ValidationOptions& options) {
    const PrimeField& F = scheme.code().field();
    const std::size_t k = scheme.k();
    const u64 p = F.modulus();
    const i64 t = static_cast<i64>(scheme.t());
    const std::vector<i64> lo(k, -t), hi(k, t);
    const u64 required = saturating_product(lo, hi);
    if (required > options.budget) throw BudgetExceeded(required, options.budget);

    const Layout layout = make_layout(scheme);
    const std::size_t others = layout.others;
    const u64 tt = scheme.t();
    std::optional<std::vector<i64>> witness;
    u64 visited = 0;
    walk_box(F, lo, hi, layout.step, others + 1, [&](std::span<const u64> y, std::span<const i64> u) {
        ++visited;
        for (std::size_t m = 0; m < others; ++m) {
            if (y[m] > tt && y[m] < p - tt) return true;
        }
        if (y[others] != 0) {
            witness.emplace(u.begin(), u.end());
            return false;
        }
        return true;
    });

    SchemeValidation out{!witness.has_value(), std::nullopt, visited};
    if (witness) {
        std::vector<u64> values;
        for (std::size_t j = 0; j < k; ++j) values.push_back(F.mul(scheme.gammas()[j].value(), F.reduce((*witness)[j])));
        out.counterexample = interpolate(F, layout.designated_points, values);
    }
    return out;
}

Element repair(const RepairScheme& scheme, std::span<const HelperMessage> messages, const ValidationOptions& options) {
    const PrimeField& F = scheme.code().field();
    const std::size_t k = scheme.k();
    const std::size_t d = scheme.d();
    const auto part = scheme.partition();
    if (messages.size() != d) throw std::invalid_argument("repair: need exactly one message per helper");
    std::vector<u64> cells(d);
    std::vector<bool> seen(d, false);
    for (const HelperMessage& msg : messages) {
        auto it = std::lower_bound(scheme.helpers().begin(), scheme.helpers().end(), msg.helper);
        if (it == scheme.helpers().end() || *it != msg.helper) {
            throw std::invalid_argument("repair: message from a node outside the helper set");
        }
        const auto pos = static_cast<std::size_t>(it - scheme.helpers().begin());
        if (seen[pos]) throw std::invalid_argument("repair: duplicate message for a helper");
        if (msg.cell >= part.s) throw std::invalid_argument("repair: cell index out of range");
        seen[pos] = true;
        cells[pos] = msg.cell;
    }

    std::vector<i64> lo(k), hi(k);
    for (std::size_t j = 0; j < k; ++j) {
        lo[j] = static_cast<i64>(part.cell_begin(cells[j]));
        hi[j] = static_cast<i64>(part.cell_end(cells[j]));
    }
    const u64 required = saturating_product(lo, hi);
    if (required > options.budget) throw BudgetExceeded(required, options.budget);

    const Layout layout = make_layout(scheme);
    const std::size_t others = layout.others;
    std::vector<u64> begin(others), end(others);
    for (std::size_t m = 0; m < others; ++m) {
        begin[m] = part.cell_begin(cells[k + m]);
        end[m] = part.cell_end(cells[k + m]);
    }
    std::optional<u64> value;
    bool ambiguous = false;
    walk_box(F, lo, hi, layout.step, others + 1, [&](std::span<const u64> y, std::span<const i64>) {
        for (std::size_t m = 0; m < others; ++m) {
            if (y[m] < begin[m] || y[m] > end[m]) return true;
        }
        if (!value) {
            value = y[others];
        } else if (*value != y[others]) {
            ambiguous = true;
            return false;
        }
        return true;
    });
    if (ambiguous) {
        throw RepairError(RepairError::Kind::Ambiguous, "repair: consistent candidates disagree at the failed node");
    }
    if (!value) {
        throw RepairError(RepairError::Kind::NoConsistentCodeword, "repair: no codeword matches the helper messages");
    }
    return F.from_residue(*value);
}

std::vector<Element> extension_repair(const RepairScheme& scheme, std::span<const std::vector<u64>> rows,
                                      const ValidationOptions& options) {
    std::vector<Element> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        try {
            const auto msgs = helper_messages(scheme, rows[r]);
            out.push_back(repair(scheme, msgs, options));
        } catch (const RepairError& e) {
            throw RepairError(e.kind(), "row " + std::to_string(r) + ": " + e.what(), r);
        }
    }
    return out;
}

double linear_gap(u64 d, u64 m, double p) {
    if (d < 2 || m < 1) throw std::invalid_argument("linear_gap: need d >= 2 and m >= 1");
    const u64 num = d * m;
    const u64 den = d - 1;
    const u64 ceil_q = (num + den - 1) / den;
    const double frac = static_cast<double>(ceil_q) - static_cast<double>(num) / static_cast<double>(den);
    return frac * std::log2(p);
}

CalibrationResult calibrate_scheme_t(const RepairScheme& scheme, const ValidationOptions& options) {
    const u64 p = scheme.p();
    const u64 t_max = (p - 1) / 2;
    CalibrationResult out{1, 0, false, false, 0};

    // 0: invalid, 1: valid, 2: over budget
    auto probe = [&](u64 t) {
        ++out.validations;
        try {
            return validate_scheme(scheme.with_t(t), options).valid ? 1 : 0;
        } catch (const BudgetExceeded&) {
            return 2;
        }
    };

    const int first = probe(1);
    if (first != 1) {
        out.budget_capped = first == 2;
        out.per_helper_bits = ceil_log2(p);
        return out;
    }
    u64 good = 1;
    u64 bad = 0;  // 0: none found yet
    while (true) {
        const u64 next = std::min(good * 2, t_max);
        if (next == good) break;
        const int r = probe(next);
        if (r == 1) {
            good = next;
            continue;
        }
        if (r == 2) out.budget_capped = true;
        bad = next;
        break;
    }
    while (bad != 0 && bad - good > 1) {
        const u64 mid = good + (bad - good) / 2;
        const int r = probe(mid);
        if (r == 1) {
            good = mid;
        } else {
            if (r == 2) out.budget_capped = true;
            bad = mid;
        }
    }
    out.t = good;
    out.valid = true;
    out.per_helper_bits = ceil_log2((p + good - 1) / good);
    return out;
}

} // namespace rsrepair
