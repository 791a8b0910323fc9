#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rsrepair/constructions.hpp"
#include "rsrepair/random.hpp"
#include "rsrepair/repair.hpp"

using namespace rsrepair;

namespace {

std::vector<u64> helper_points(const RepairScheme& s) {
    std::vector<u64> out;
    for (std::size_t h : s.helpers()) out.push_back(s.code().points()[h]);
    return out;
}

std::vector<u64> gamma_values(const RepairScheme& s) {
    std::vector<u64> out;
    for (const auto& g : s.gammas()) out.push_back(g.value());
    return out;
}

bool oracle_valid(const RepairScheme& s) {
    return oracle::scheme_valid(s.p(), s.k(), helper_points(s), gamma_values(s), s.code().points()[s.failed()], s.t());
}

/// Random scheme on n distinct points with random nonzero gammas.
RepairScheme random_scheme(const PrimeField& F, std::size_t n, std::size_t k, std::size_t d, u64 t, Rng& rng) {
    const u64 p = F.modulus();
    std::set<u64> pts;
    while (pts.size() < n) pts.insert(rng.below(p));
    std::vector<u64> points(pts.begin(), pts.end());
    for (std::size_t i = n; i > 1; --i) std::swap(points[i - 1], points[rng.below(i)]);
    std::vector<std::size_t> helpers;
    std::vector<Element> gammas;
    for (std::size_t j = 1; j <= d; ++j) {
        helpers.push_back(j);
        gammas.push_back(F.from_residue(1 + rng.below(p - 1)));
    }
    return RepairScheme(RSCode(F, k, points), 0, helpers, gammas, t);
}

} // namespace

TEST_CASE("standard partition") {
    auto P = standard_partition(7, 2);
    CHECK(P.s == 4);
    CHECK(P.cell(0) == ResidueSet{0, 1});
    CHECK(P.cell(1) == ResidueSet{2, 3});
    CHECK(P.cell(2) == ResidueSet{4, 5});
    CHECK(P.cell(3) == ResidueSet{6});
    P = standard_partition(7, 1);
    CHECK(P.s == 7);
    for (u64 m = 0; m < 7; ++m) CHECK(P.cell(m) == ResidueSet{m});
    P = standard_partition(11, 4);
    CHECK(P.s == 3);
    CHECK(P.cell(2) == ResidueSet{8, 9, 10});
    CHECK_THROWS_AS(standard_partition(7, 7), std::invalid_argument);
    CHECK_THROWS_AS(standard_partition(7, 0), std::invalid_argument);

    for (u64 p : {7u, 11u, 13u, 101u}) {
        for (u64 t = 1; t < p; ++t) {
            const auto Q = standard_partition(p, t);
            std::vector<int> hits(p, 0);
            for (u64 m = 0; m < Q.s; ++m) {
                const auto c = Q.cell(m);
                CHECK(c.size() >= 1);
                CHECK(c.size() <= t);
                for (u64 x : c) ++hits[x];
            }
            for (u64 x = 0; x < p; ++x) CHECK(hits[x] == 1);
        }
    }
}

TEST_CASE("cell_of") {
    const PrimeField F7(7), F11(11);
    CHECK(cell_of(F7.element(3), F7.one(), standard_partition(7, 2)) == 1);
    CHECK(cell_of(F7.element(6), F7.element(2), standard_partition(7, 2)) == 1);
    CHECK(cell_of(F11.element(10), F11.one(), standard_partition(11, 4)) == 2);
    CHECK_THROWS_AS(cell_of(F7.one(), F7.zero(), standard_partition(7, 2)), std::invalid_argument);

    const PrimeField F(10007);
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const u64 x = rng.below(10007), g = 1 + rng.below(10006), t = 1 + rng.below(5003);
        const auto P = standard_partition(10007, t);
        const u64 m = cell_of(F.from_residue(x), F.from_residue(g), P);
        CHECK(m < P.s);
        CHECK(oracle::in_cell(x, g, m, t, 10007));
    }
}

TEST_CASE("scheme construction checks") {
    const PrimeField F(13);
    const RSCode code(F, 2, {1, 2, 3, 4});
    CHECK_THROWS_AS(RepairScheme(code, 0, {0, 1}, {F.one(), F.one()}, 1), std::invalid_argument);
    CHECK_THROWS_AS(RepairScheme(code, 0, {1}, {F.one()}, 1), std::invalid_argument);
    CHECK_THROWS_AS(RepairScheme(code, 0, {1, 2}, {F.one(), F.zero()}, 1), std::invalid_argument);
    CHECK_THROWS_AS(RepairScheme(code, 0, {1, 2}, {F.one(), F.one()}, 7), std::invalid_argument);
    CHECK_THROWS_AS(RepairScheme(code, 0, {1, 1}, {F.one(), F.one()}, 1), std::invalid_argument);
    CHECK_THROWS_AS(RepairScheme(code, 4, {1, 2}, {F.one(), F.one()}, 1), std::out_of_range);
    // helpers are sorted with their gammas
    const RepairScheme s(code, 0, {3, 1}, {F.element(5), F.element(7)}, 1);
    CHECK(s.helpers() == std::vector<std::size_t>{1, 3});
    CHECK(s.gammas()[0].value() == 7);
    CHECK(s.per_helper_bits() == 4);
    CHECK(s.total_bits() == 8);
}

TEST_CASE("validation agrees with exhaustive search over all polynomials") {
    Rng rng(99);
    int valid_seen = 0, invalid_seen = 0;
    for (const auto& [p, k, d] : {std::tuple<u64, std::size_t, std::size_t>{13, 1, 1},
                                  {13, 1, 2},
                                  {13, 2, 2},
                                  {13, 2, 3},
                                  {13, 3, 4},
                                  {101, 2, 3}}) {
        const PrimeField F(p);
        const int trials = p == 13 ? 150 : 40;
        for (int trial = 0; trial < trials; ++trial) {
            const u64 t = 1 + rng.below((p - 1) / 2);
            const auto s = random_scheme(F, d + 1, k, d, t, rng);
            const auto v = validate_scheme(s);
            CHECK(v.valid == oracle_valid(s));
            (v.valid ? valid_seen : invalid_seen)++;
            if (!v.valid) {
                REQUIRE(v.counterexample.has_value());
                const auto& c = v.counterexample->coeffs();
                CHECK(c.size() <= k);
                const auto hp = helper_points(s);
                const auto gs = gamma_values(s);
                for (std::size_t j = 0; j < hp.size(); ++j) CHECK(oracle::in_interval(oracle::eval(c, hp[j], p), gs[j], t, p));
                CHECK(oracle::eval(c, s.code().points()[0], p) != 0);
            }
            CHECK(v.candidates <= static_cast<u64>(std::pow(2 * t + 1, k)));
        }
    }
    CHECK(valid_seen > 0);
    CHECK(invalid_seen > 0);
}

TEST_CASE("vacuous constraints give an invalid scheme") {
    const PrimeField F(101);
    const RSCode code(F, 2, {0, 1, 2, 3});
    const RepairScheme s(code, 3, {0, 1, 2}, {F.one(), F.one(), F.one()}, 50);
    const auto v = validate_scheme(s);
    CHECK_FALSE(v.valid);
    REQUIRE(v.counterexample);
    CHECK(v.counterexample->eval(3) != 0);
}

TEST_CASE("constant code") {
    const PrimeField F(13);
    const RSCode code(F, 1, {0, 1, 2});
    // one helper: the constant 1 lies in 1*[-1,1] and does not vanish
    CHECK_FALSE(validate_scheme(RepairScheme(code, 0, {1}, {F.one()}, 1)).valid);
    // {0, 1, 12} and {0, 5, 8} meet only in 0
    CHECK(validate_scheme(RepairScheme(code, 0, {1, 2}, {F.one(), F.element(5)}, 1)).valid);
    for (u64 g = 1; g < 13; ++g) {
        const RepairScheme s(code, 0, {1, 2}, {F.one(), F.from_residue(g)}, 1);
        CHECK(validate_scheme(s).valid == oracle_valid(s));
    }
}

TEST_CASE("repair recovers every codeword for oracle-valid schemes at p = 13") {
    Rng rng(13);
    int schemes = 0;
    for (int trial = 0; trial < 400 && schemes < 25; ++trial) {
        const std::size_t k = 1 + rng.below(3);
        const std::size_t d = k + rng.below(2);
        const PrimeField F(13);
        const auto s = random_scheme(F, d + 1, k, d, 1 + rng.below(3), rng);
        if (!oracle_valid(s)) continue;
        ++schemes;
        REQUIRE(validate_scheme(s).valid);
        oracle::for_each_polynomial(13, k, [&](const std::vector<u64>& c) {
            const auto w = encode(s.code(), Polynomial(F, c));
            CHECK(repair(s, helper_messages(s, w)).value() == w.values[0]);
        });
    }
    CHECK(schemes >= 10);
}

TEST_CASE("toy repair examples") {
    const auto toy = toy_code_and_schemes(101);
    const PrimeField& F = toy.code.field();
    const auto& s = toy.schemes[3];
    REQUIRE(validate_scheme(s).valid);
    const auto w = encode(toy.code, Polynomial(F, {0, 1}));
    CHECK(repair(s, helper_messages(s, w)).value() == 96);
    CHECK(repair(s, helper_messages(s, encode(toy.code, Polynomial(F, {0})))).value() == 0);

    Rng rng(1);
    for (const auto& scheme : toy.schemes) {
        for (int i = 0; i < 200; ++i) {
            const auto word = encode(toy.code, random_polynomial(F, 2, rng));
            CHECK(repair(scheme, helper_messages(scheme, word)).value() == word.values[scheme.failed()]);
        }
    }
}

TEST_CASE("repair errors") {
    const auto toy = toy_code_and_schemes(101);
    const auto& s = toy.schemes[3];
    // helper 0 of the toy code is at 0, so any codeword sends it cell 0 at
    // gamma*0; force mutually inconsistent cells instead
    const auto w = encode(toy.code, Polynomial(toy.code.field(), {0, 1}));
    auto msgs = helper_messages(s, w);
    bool found = false;
    for (u64 c = 0; c < s.s() && !found; ++c) {
        msgs.back().cell = c;
        try {
            repair(s, msgs);
        } catch (const RepairError& e) {
            CHECK(e.kind() == RepairError::Kind::NoConsistentCodeword);
            found = true;
        }
    }
    CHECK(found);

    const PrimeField F(101);
    const RSCode code(F, 2, {0, 1, 2, 3});
    const RepairScheme bad(code, 3, {0, 1, 2}, {F.one(), F.one(), F.one()}, 50);
    try {
        repair(bad, helper_messages(bad, encode(code, Polynomial(F, {0}))));
        FAIL("expected an ambiguity");
    } catch (const RepairError& e) {
        CHECK(e.kind() == RepairError::Kind::Ambiguous);
    }

    auto dup = helper_messages(s, w);
    dup[1] = dup[0];
    CHECK_THROWS_AS(repair(s, dup), std::invalid_argument);
    CHECK_THROWS_AS(repair(s, std::span<const HelperMessage>(dup).first(2)), std::invalid_argument);
}

TEST_CASE("budget overrun is an error, not a verdict") {
    const auto toy = toy_code_and_schemes(10007);
    CHECK_THROWS_AS(validate_scheme(toy.schemes[0], {100}), BudgetExceeded);
    try {
        validate_scheme(toy.schemes[0], {100});
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() == 41 * 41);
        CHECK(e.budget() == 100);
    }
    const auto w = encode(toy.code, Polynomial(toy.code.field(), {3, 4}));
    CHECK_THROWS_AS(repair(toy.schemes[0], helper_messages(toy.schemes[0], w), {10}), BudgetExceeded);
}

TEST_CASE("extension lift") {
    const auto toy = toy_code_and_schemes(101);
    const PrimeField& F = toy.code.field();
    const auto& s = toy.schemes[3];
    auto rows_for = [&](const std::vector<Polynomial>& fs) {
        std::vector<std::vector<u64>> rows;
        for (const auto& f : fs) {
            std::vector<u64> row;
            for (std::size_t h : s.helpers()) row.push_back(f.eval(toy.code.points()[h]));
            rows.push_back(row);
        }
        return rows;
    };
    auto rows = rows_for({Polynomial(F, {0, 1}), Polynomial(F, {1}), Polynomial(F, {3, 2})});
    auto out = extension_repair(s, rows);
    REQUIRE(out.size() == 3);
    CHECK(out[0].value() == 96);
    CHECK(out[1].value() == 1);
    CHECK(out[2].value() == 94);

    rows = rows_for({Polynomial(F, {5, 7})});
    CHECK(extension_repair(s, rows)[0] == repair(s, helper_messages(s, rows[0])));
    rows = rows_for({Polynomial(F, {0}), Polynomial(F, {0})});
    out = extension_repair(s, rows);
    CHECK(out[0].value() == 0);
    CHECK(out[1].value() == 0);

    // a corrupted row is reported with its index
    rows = rows_for({Polynomial(F, {0, 1}), Polynomial(F, {1})});
    bool tagged = false;
    for (u64 v = 0; v < 101 && !tagged; ++v) {
        rows[1].back() = v;
        try {
            extension_repair(s, rows);
        } catch (const RepairError& e) {
            CHECK(e.row() == std::optional<std::size_t>(1));
            tagged = true;
        }
    }
    CHECK(tagged);
}

TEST_CASE("linear gap") {
    CHECK(linear_gap(3, 3, 101) == doctest::Approx(0.5 * std::log2(101.0)));
    CHECK(linear_gap(3, 2, 101) == doctest::Approx(0.0));
    CHECK(linear_gap(4, 2, 1024) == doctest::Approx(10.0 / 3.0));
    CHECK_THROWS_AS(linear_gap(1, 2, 7), std::invalid_argument);
}

TEST_CASE("calibration finds the largest valid t") {
    Rng rng(5);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const PrimeField F(101);
        const auto s = random_scheme(F, 4, 2, 3, 1, rng);
        const auto cal = calibrate_scheme_t(s);
        u64 best = 0;
        for (u64 t = 1; t <= 50; ++t) {
            if (validate_scheme(s.with_t(t)).valid) best = t;
            else break;
        }
        if (best == 0) {
            CHECK_FALSE(cal.valid);
            CHECK(cal.t == 1);
            continue;
        }
        ++checked;
        CHECK(cal.valid);
        CHECK(cal.t == best);
        // monotone: nothing above the threshold validates
        for (u64 t = best + 1; t <= 50; ++t) CHECK_FALSE(validate_scheme(s.with_t(t)).valid);
        CHECK(cal.per_helper_bits == ceil_log2((101 + best - 1) / best));
    }
    CHECK(checked > 0);
}

TEST_CASE("calibration under a tight budget is flagged") {
    const auto toy = toy_code_and_schemes(10007);
    const auto cal = calibrate_scheme_t(toy.schemes[0], {30 * 30});
    CHECK(cal.budget_capped);
    CHECK(cal.valid);
    CHECK((2 * cal.t + 1) * (2 * cal.t + 1) <= 900);
}
