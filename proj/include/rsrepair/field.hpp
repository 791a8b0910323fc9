#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rsrepair {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Largest modulus accepted by the harness (2^31 - 1).
inline constexpr u64 kMaxModulus = 2147483647ULL;

bool is_prime(u64 n) noexcept;

/// Largest r with r^e <= n (e >= 1).
u64 integer_root(u64 n, unsigned e);

/// Smallest b with 2^b >= n (n >= 1).
unsigned ceil_log2(u64 n);

class Element;

/// The prime field F_p. A thin value type around the modulus; every
/// residue operation goes through 64-bit intermediates so (p-1)^2 fits.
class PrimeField {
  public:
    explicit PrimeField(u64 p);

    u64 modulus() const noexcept { return p_; }

    Element element(i64 v) const;
    Element from_residue(u64 v) const;
    Element zero() const;
    Element one() const;

    u64 reduce(i64 v) const noexcept {
        i64 r = v % static_cast<i64>(p_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
    }
    u64 add(u64 a, u64 b) const noexcept {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const noexcept { return (a * b) % p_; }
    u64 pow(u64 a, u64 e) const noexcept;
    /// Throws std::domain_error on zero.
    u64 inv(u64 a) const;
    i64 centered(u64 a) const noexcept {
        return a > p_ / 2 ? static_cast<i64>(a) - static_cast<i64>(p_) : static_cast<i64>(a);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

  private:
    struct Unchecked {};
    PrimeField(u64 p, Unchecked) noexcept : p_(p) {}
    friend class Element;

    u64 p_;
};

/// A residue of F_p carrying its field. Mixing fields throws.
class Element {
  public:
    Element(const PrimeField& field, u64 residue);

    u64 value() const noexcept { return v_; }
    u64 modulus() const noexcept { return p_; }
    PrimeField field() const noexcept { return PrimeField(p_, PrimeField::Unchecked{}); }
    bool is_zero() const noexcept { return v_ == 0; }

    /// Representative in [-(p-1)/2, (p-1)/2].
    i64 centered() const noexcept { return field().centered(v_); }

    Element inverse() const;
    Element pow(u64 e) const;

    Element operator-() const;
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Element& o);
    Element& operator/=(const Element& o);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, const Element& b) { return a *= b; }
    friend Element operator/(Element a, const Element& b) { return a /= b; }
    friend bool operator==(const Element&, const Element&) = default;

  private:
    Element(u64 p, u64 v, PrimeField::Unchecked) noexcept : p_(p), v_(v) {}
    void check_same(const Element& o) const;
    friend class PrimeField;

    u64 p_;
    u64 v_;
};

i64 centered(const Element& x) noexcept;

/// Sorted, duplicate-free canonical residues.
using ResidueSet = std::vector<u64>;

/// gamma * [-t, t]; 2t+1 <= p and gamma != 0.
struct IntervalSpec {
    Element gamma;
    u64 t;
};

ResidueSet interval_set(const IntervalSpec& spec);

/// {start + i*step : 0 <= i < length} reduced mod p.
ResidueSet arithmetic_progression(u64 start, u64 step, u64 length, u64 p);

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b, u64 p);

/// gamma * A for a residue set A.
ResidueSet dilate(const ResidueSet& a, const Element& gamma);

using BigInt = boost::multiprecision::cpp_int;

struct LcmBound {
    BigInt lcm;
    /// prod(a_i) / prod_{i<j} gcd(a_i, a_j), reduced.
    BigInt bound_numerator;
    BigInt bound_denominator;
    bool lcm_at_least_bound;
    /// gcd(b, prod a_i) <= prod gcd(b, a_i) for every b that was checked.
    bool gcd_claim_ok;
    std::vector<BigInt> checked_b;
};

/// Exact lcm against the pairwise-gcd product bound. When b is absent the
/// gcd claim is checked for every a_i and for the lcm itself.
LcmBound lcm_product_bound(std::span<const u64> a, std::optional<u64> b = std::nullopt);

} // namespace rsrepair
