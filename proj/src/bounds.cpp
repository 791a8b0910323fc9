#include "rsrepair/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <stdexcept>

#include "rsrepair/constructions.hpp"
#include "rsrepair/random.hpp"

namespace rsrepair {

RepairReport make_report(u64 p, std::size_t n, std::size_t k, std::size_t d, u64 t, std::size_t ell, bool validated) {
    if (t < 1 || t >= p) throw std::invalid_argument("report: need 1 <= t < p");
    if (k < 1 || d < k) throw std::invalid_argument("report: need 1 <= k <= d");
    if (ell < 1) throw std::invalid_argument("report: ell must be positive");
    RepairReport r{};
    r.p = p;
    r.n = n;
    r.k = k;
    r.d = d;
    r.ell = ell;
    r.t = t;
    r.s = (p + t - 1) / t;
    r.per_helper_bits = ceil_log2(r.s);
    r.total_bits = ell * d * r.per_helper_bits;
    const double lp = std::log2(static_cast<double>(p));
    r.total_bits_unrounded = static_cast<double>(ell * d) * std::log2(static_cast<double>(r.s));
    r.cutset_bits = static_cast<double>(d * ell) * lp / static_cast<double>(d + 1 - k);
    r.improved_per_helper_bits =
        (std::log2(static_cast<double>(k) * static_cast<double>(p)) - 1.0) / static_cast<double>(d - k + 1);
    r.trivial_bits = ell * k * ceil_log2(p);
    if (n >= 1 && d + 1 == n) r.gw_comparison_bits = (1.5 * static_cast<double>(n) - 2.0) * lp;
    r.validated = validated;
    return r;
}

RepairReport bandwidth_report(const RepairScheme& scheme, bool validated) {
    return make_report(scheme.p(), scheme.code().n(), scheme.k(), scheme.d(), scheme.t(), 1, validated);
}

bool improved_bound_consistency(u64 s, u64 p, std::size_t k, std::size_t d) {
    if (d < k) throw std::invalid_argument("improved bound: need d >= k");
    const u128 target = static_cast<u128>(k) * p;
    u128 acc = 2;
    for (std::size_t i = 0; i < d - k + 1; ++i) {
        acc *= s;
        if (acc >= target) return true;
    }
    return acc >= target;
}

bool improved_bound_consistency(const RepairScheme& scheme) {
    return improved_bound_consistency(scheme.s(), scheme.p(), scheme.k(), scheme.d());
}

std::optional<std::vector<std::vector<u64>>> invert_matrix(const PrimeField& F, std::vector<std::vector<u64>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<u64>> inv(n, std::vector<u64>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("invert_matrix: matrix is not square");
        inv[i][i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        const u64 scale = F.inv(m[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] = F.mul(m[col][j], scale);
            inv[col][j] = F.mul(inv[col][j], scale);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const u64 factor = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] = F.sub(m[r][j], F.mul(factor, m[col][j]));
                inv[r][j] = F.sub(inv[r][j], F.mul(factor, inv[col][j]));
            }
        }
    }
    return inv;
}

USetDiagnostic u_set(const PrimeField& F, std::span<const ResidueSet> cells, std::span<const u64> points, u64 failed) {
    const std::size_t k = points.size();
    if (k == 0 || cells.size() != k) throw std::invalid_argument("u_set: need one cell per point");
    for (std::size_t j = 0; j < k; ++j) {
        if (cells[j].empty()) throw std::invalid_argument("u_set: empty cell");
        if (F.reduce(static_cast<i64>(points[j] % F.modulus())) == failed % F.modulus()) {
            throw std::invalid_argument("u_set: a point equals the failed point");
        }
    }
    std::vector<std::vector<u64>> v(k, std::vector<u64>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) v[i][j] = F.pow(F.sub(points[j] % F.modulus(), failed % F.modulus()), i);
    }
    auto inv = invert_matrix(F, v);
    if (!inv) throw std::invalid_argument("u_set: points are not distinct");

    USetDiagnostic out;
    out.cells.assign(cells.begin(), cells.end());
    ResidueSet acc{0};
    u64 min_size = cells[0].size();
    u64 total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const u64 c = (*inv)[i][0];
        if (c == 0) throw std::logic_error("u_set: inverse Vandermonde has a zero in its first column");
        out.coefficients.push_back(c);
        acc = sumset(acc, dilate(cells[i], F.from_residue(c)), F.modulus());
        min_size = std::min<u64>(min_size, cells[i].size());
        total += cells[i].size();
    }
    out.u_set = std::move(acc);
    out.size_lower_bound = k * min_size > k ? k * min_size - k : 0;
    out.cauchy_davenport_bound = std::min<u64>(total - (k - 1), F.modulus());
    return out;
}

LeakageResult leakage_attack(const Polynomial& f, std::size_t k, std::size_t d, std::size_t member_index, u64 t,
                             const ValidationOptions& options) {
    const PrimeField& F = f.field();
    const u64 p = F.modulus();
    if (f.degree() >= static_cast<int>(k)) throw std::invalid_argument("leakage attack: polynomial degree must be < k");
    const auto family = orbit_helper_sets(p, k, d, 0);
    if (member_index >= family.members.size()) throw std::out_of_range("leakage attack: member index out of range");
    const auto reference = orbit_reference_scheme(p, k, d, t);
    const auto scheme = orbit_member_scheme(family, family.members[member_index], reference);
    if (!validate_scheme(scheme, options).valid) {
        throw std::runtime_error("leakage attack: scheme does not validate at t = " + std::to_string(t));
    }

    LeakageResult out{};
    out.p = p;
    out.k = k;
    out.d = d;
    out.t = t;
    out.s = scheme.s();
    std::vector<u64> shares;
    for (std::size_t h : scheme.helpers()) {
        out.helper_points.push_back(scheme.code().point(h).value());
        shares.push_back(f.eval(scheme.code().point(h).value()));
    }
    const auto messages = helper_messages(scheme, shares);
    for (const auto& m : messages) out.leaked_cells.push_back(m.cell);
    out.secret = f.eval(0);
    out.reconstructed = repair(scheme, messages, options).value();
    out.bits_leaked_per_share = scheme.per_helper_bits();
    out.share_bits = ceil_log2(p);
    return out;
}

LeakageResult leakage_attack_demo(u64 p, std::size_t k, std::size_t d, u64 seed, std::optional<u64> t,
                                  const ValidationOptions& options) {
    const PrimeField F(p);
    if (!t) {
        const auto cal = calibrate_scheme_t(orbit_reference_scheme(p, k, d, 1), options);
        if (!cal.valid) throw std::runtime_error("leakage demo: no valid t for the reference scheme");
        t = cal.t;
    }
    const auto family = orbit_helper_sets(p, k, d, 0);
    Rng rng(seed);
    const std::size_t member = static_cast<std::size_t>(rng.below(family.members.size()));
    const Polynomial f = random_polynomial(F, k, rng);
    LeakageResult out = leakage_attack(f, k, d, member, *t, options);
    out.seed = seed;
    return out;
}

bool shares_reveal_nothing(u64 p, std::size_t k, std::span<const u64> points) {
    const PrimeField F(p);
    const std::size_t m = points.size();
    if (m >= k) throw std::invalid_argument("shares_reveal_nothing: need fewer than k shares");
    for (u64 x : points) {
        if (x % p == 0) throw std::invalid_argument("shares_reveal_nothing: a share point is the secret point");
    }
    u64 total = 1, buckets = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > 50'000'000 / p) throw std::invalid_argument("shares_reveal_nothing: p^k too large");
        total *= p;
    }
    for (std::size_t i = 0; i < m; ++i) buckets *= p;
    // counts[(share tuple) * p + secret]
    std::vector<u64> counts(buckets * p, 0);
    std::vector<u64> c(k, 0);
    for (u64 idx = 0; idx < total; ++idx) {
        u64 rest = idx;
        for (std::size_t i = 0; i < k; ++i) {
            c[i] = rest % p;
            rest /= p;
        }
        const Polynomial f(F, c);
        u64 key = 0;
        for (u64 x : points) key = key * p + f.eval(x % p);
        ++counts[key * p + c[0]];
    }
    const u64 expected = total / (buckets * p);
    for (u64 n : counts) {
        if (n != expected) return false;
    }
    return true;
}

} // namespace rsrepair
