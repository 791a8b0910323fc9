#include "rsrepair/field.hpp"

#include <algorithm>
#include <numeric>

namespace rsrepair {

bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (u64 i = 5; i * i <= n; i += 6) {
        if (n % i == 0 || n % (i + 2) == 0) return false;
    }
    return true;
}

u64 integer_root(u64 n, unsigned e) {
    if (e == 0) throw std::invalid_argument("integer_root: exponent must be positive");
    if (e == 1 || n < 2) return n;
    auto fits = [&](u64 r) {
        u128 acc = 1;
        for (unsigned i = 0; i < e; ++i) {
            acc *= r;
            if (acc > n) return false;
        }
        return true;
    };
    u64 lo = 1, hi = 1;
    while (fits(hi)) hi *= 2;
    // fits(lo) holds, fits(hi) fails
    while (hi - lo > 1) {
        u64 mid = lo + (hi - lo) / 2;
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

unsigned ceil_log2(u64 n) {
    if (n == 0) throw std::invalid_argument("ceil_log2: argument must be positive");
    unsigned b = 0;
    while ((u128{1} << b) < n) ++b;
    return b;
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (p < 3) throw std::invalid_argument("prime field modulus must be at least 3");
    if (p > kMaxModulus) throw std::invalid_argument("prime field modulus exceeds 2^31-1");
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

Element PrimeField::element(i64 v) const { return Element(p_, reduce(v), Unchecked{}); }

Element PrimeField::from_residue(u64 v) const { return Element(p_, v % p_, Unchecked{}); }

Element PrimeField::zero() const { return Element(p_, 0, Unchecked{}); }

Element PrimeField::one() const { return Element(p_, 1, Unchecked{}); }

u64 PrimeField::pow(u64 a, u64 e) const noexcept {
    u64 r = 1;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 PrimeField::inv(u64 a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p_ - 2);
}

Element::Element(const PrimeField& field, u64 residue) : p_(field.modulus()), v_(residue % field.modulus()) {}

void Element::check_same(const Element& o) const {
    if (p_ != o.p_) throw std::invalid_argument("field elements from different fields");
}

Element Element::inverse() const { return Element(p_, field().inv(v_), PrimeField::Unchecked{}); }

Element Element::pow(u64 e) const { return Element(p_, field().pow(v_, e), PrimeField::Unchecked{}); }

Element Element::operator-() const { return Element(p_, field().neg(v_), PrimeField::Unchecked{}); }

Element& Element::operator+=(const Element& o) {
    check_same(o);
    v_ = field().add(v_, o.v_);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    check_same(o);
    v_ = field().sub(v_, o.v_);
    return *this;
}

Element& Element::operator*=(const Element& o) {
    check_same(o);
    v_ = field().mul(v_, o.v_);
    return *this;
}

Element& Element::operator/=(const Element& o) {
    check_same(o);
    v_ = field().mul(v_, field().inv(o.v_));
    return *this;
}

i64 centered(const Element& x) noexcept { return x.centered(); }

ResidueSet interval_set(const IntervalSpec& spec) {
    const PrimeField F = spec.gamma.field();
    const u64 p = F.modulus();
    if (spec.gamma.is_zero()) throw std::invalid_argument("interval_set: gamma must be nonzero");
    if (spec.t == 0) throw std::invalid_argument("interval_set: t must be positive");
    if (2 * spec.t + 1 > p) throw std::invalid_argument("interval_set: 2t+1 exceeds p, the interval wraps");
    ResidueSet out;
    out.reserve(2 * spec.t + 1);
    for (i64 m = -static_cast<i64>(spec.t); m <= static_cast<i64>(spec.t); ++m) {
        out.push_back(F.mul(spec.gamma.value(), F.reduce(m)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ResidueSet arithmetic_progression(u64 start, u64 step, u64 length, u64 p) {
    ResidueSet out;
    out.reserve(length);
    u64 x = start % p;
    step %= p;
    for (u64 i = 0; i < length; ++i) {
        out.push_back(x);
        x = (x + step) % p;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b, u64 p) {
    if (a.empty() || b.empty()) throw std::invalid_argument("sumset: operands must be nonempty");
    ResidueSet out;
    out.reserve(std::min<u64>(a.size() * b.size(), p));
    for (u64 x : a) {
        for (u64 y : b) out.push_back((x % p + y % p) % p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ResidueSet dilate(const ResidueSet& a, const Element& gamma) {
    const PrimeField F = gamma.field();
    ResidueSet out;
    out.reserve(a.size());
    for (u64 x : a) out.push_back(F.mul(x % F.modulus(), gamma.value()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LcmBound lcm_product_bound(std::span<const u64> a, std::optional<u64> b) {
    if (a.size() < 2) throw std::invalid_argument("lcm_product_bound: need at least two integers");
    for (u64 x : a) {
        if (x == 0) throw std::invalid_argument("lcm_product_bound: entries must be positive");
    }
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;

    LcmBound out;
    out.lcm = 1;
    BigInt product = 1;
    for (u64 x : a) {
        out.lcm = lcm(out.lcm, BigInt(x));
        product *= x;
    }
    BigInt denominator = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) denominator *= std::gcd(a[i], a[j]);
    }
    const BigInt g = gcd(product, denominator);
    out.bound_numerator = product / g;
    out.bound_denominator = denominator / g;
    out.lcm_at_least_bound = out.lcm * out.bound_denominator >= out.bound_numerator;

    if (b) {
        out.checked_b.emplace_back(*b);
    } else {
        for (u64 x : a) out.checked_b.emplace_back(x);
        out.checked_b.push_back(out.lcm);
    }
    out.gcd_claim_ok = true;
    for (const BigInt& bb : out.checked_b) {
        BigInt rhs = 1;
        for (u64 x : a) rhs *= gcd(bb, BigInt(x));
        if (gcd(bb, product) > rhs) out.gcd_claim_ok = false;
    }
    return out;
}

} // namespace rsrepair
