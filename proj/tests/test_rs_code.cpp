#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "rsrepair/random.hpp"
#include "rsrepair/rs_code.hpp"

using namespace rsrepair;

TEST_CASE("encode examples") {
    const PrimeField F7(7);
    const RSCode c(F7, 2, {0, 1, 2});
    CHECK(encode(c, Polynomial(F7, {1, 1})).values == std::vector<u64>{1, 2, 3});
    CHECK(encode(c, Polynomial(F7, {0})).values == std::vector<u64>{0, 0, 0});
    const PrimeField F13(13);
    CHECK(encode(RSCode(F13, 2, {1, 2, 3, 4}), Polynomial(F13, {5, 2})).values == std::vector<u64>{7, 9, 11, 0});
    CHECK_THROWS_AS(encode(c, Polynomial(F7, {1, 1, 1})), std::invalid_argument);
    // trailing zeros do not raise the degree
    CHECK(encode(c, Polynomial(F7, {1, 1, 0})).values == std::vector<u64>{1, 2, 3});
}

TEST_CASE("code construction checks") {
    const PrimeField F(7);
    CHECK_THROWS_AS(RSCode(F, 2, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(RSCode(F, 1, {0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(RSCode(F, 0, {0, 1}), std::invalid_argument);
}

TEST_CASE("interpolate examples") {
    const PrimeField F7(7);
    const u64 x1[] = {0, 1}, y1[] = {1, 2};
    CHECK(interpolate(F7, x1, y1) == Polynomial(F7, {1, 1}));
    const u64 x2[] = {5}, y2[] = {0};
    CHECK(interpolate(F7, x2, y2).degree() == -1);
    const PrimeField F13(13);
    const u64 x3[] = {1, 2, 3}, y3[] = {7, 9, 11};
    const auto f = interpolate(F13, x3, y3);
    CHECK(f == Polynomial(F13, {5, 2}));
    CHECK(f.coeffs().size() == 3);
    CHECK(f.coeffs()[2] == 0);
    const u64 dup[] = {1, 1}, v[] = {0, 1};
    CHECK_THROWS_AS(interpolate(F13, dup, v), std::invalid_argument);

    const std::pair<Element, Element> pairs[] = {{F7.element(0), F7.element(1)}, {F7.element(1), F7.element(2)}};
    CHECK(interpolate(pairs) == Polynomial(F7, {1, 1}));
}

TEST_CASE("interpolation inverts encoding on any k points") {
    for (u64 p : {13u, 101u, 10007u}) {
        const PrimeField F(p);
        Rng rng(p);
        const std::size_t n = 8, k = 4;
        std::vector<u64> pts(n);
        std::iota(pts.begin(), pts.end(), 1);
        const RSCode code(F, k, pts);
        for (int trial = 0; trial < 500; ++trial) {
            const auto f = random_polynomial(F, k, rng);
            const auto w = encode(code, f);
            std::vector<std::size_t> idx(n);
            std::iota(idx.begin(), idx.end(), 0);
            for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
            std::vector<u64> xs, ys;
            for (std::size_t i = 0; i < k; ++i) {
                xs.push_back(pts[idx[i]]);
                ys.push_back(w.values[idx[i]]);
            }
            CHECK(interpolate(F, xs, ys) == f);
        }
    }
}

TEST_CASE("two distinct lines never share two points at p = 13") {
    const u64 p = 13;
    const PrimeField F(p);
    const RSCode code(F, 2, {0, 3, 7, 11});
    std::vector<std::vector<u64>> words;
    oracle::for_each_polynomial(p, 2, [&](const std::vector<u64>& c) { words.push_back(encode(code, Polynomial(F, c)).values); });
    CHECK(words.size() == 169);
    for (std::size_t a = 0; a < words.size(); ++a) {
        for (std::size_t b = a + 1; b < words.size(); ++b) {
            int agree = 0;
            for (std::size_t i = 0; i < 4; ++i) agree += words[a][i] == words[b][i];
            CHECK(agree < 2);
        }
    }
}

TEST_CASE("puncture") {
    const PrimeField F(10007);
    const RSCode code(F, 2, {1, 2, 3, 4, 101, 102, 103, 104});
    const std::size_t keep[] = {0, 1, 2, 4};
    const auto pc = puncture(code, keep);
    CHECK(pc.code.points() == std::vector<u64>{1, 2, 3, 101});
    CHECK(pc.code.k() == 2);
    CHECK(pc.index_map[4] == 3);
    CHECK(pc.index_map[3] == Punctured::npos);

    std::vector<std::size_t> all(8);
    std::iota(all.begin(), all.end(), 0);
    CHECK(puncture(code, all).code == code);

    const std::size_t too_few[] = {0, 1};
    CHECK_THROWS_AS(puncture(code, too_few), std::invalid_argument);
    const std::size_t repeated[] = {0, 1, 1};
    CHECK_THROWS_AS(puncture(code, repeated), std::invalid_argument);
}

TEST_CASE("affine reparameterization") {
    const PrimeField F7(7);
    CHECK(affine_map_code(RSCode(F7, 1, {0, 1}), F7.one(), F7.element(3)).code.points() == std::vector<u64>{3, 4});
    const RSCode id(F7, 1, {1, 2});
    CHECK(affine_map_code(id, F7.one(), F7.zero()).code == id);
    const PrimeField F13(13);
    const RSCode c(F13, 2, {4, 5, 6});
    const auto mapped = affine_map_code(c, F13.element(2), F13.element(1));
    CHECK(mapped.code.points() == std::vector<u64>{9, 11, 0});
    CHECK_THROWS_AS(affine_map_code(c, F13.zero(), F13.one()), std::invalid_argument);

    const auto back = affine_map_code(mapped.code, mapped.map.inverse().a, mapped.map.inverse().b);
    CHECK(back.code.points() == c.points());

    // codewords correspond: g = f o map^{-1} takes the same values on the mapped points
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_polynomial(F13, 2, rng);
        const auto g = compose_affine(f, mapped.map.inverse());
        CHECK(encode(mapped.code, g).values == encode(c, f).values);
    }
}

TEST_CASE("affine map algebra") {
    const PrimeField F(101);
    const AffineMap m{F.element(7), F.element(-3)};
    const AffineMap n{F.element(5), F.element(11)};
    for (u64 x = 0; x < 101; ++x) {
        CHECK(m.inverse().apply(m.apply(x)) == x);
        CHECK(m.compose(n).apply(x) == m.apply(n.apply(x)));
        CHECK(m(F.from_residue(x)).value() == m.apply(x));
    }
}
