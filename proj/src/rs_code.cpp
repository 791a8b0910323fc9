#include "rsrepair/rs_code.hpp"

#include <algorithm>
#include <unordered_set>

namespace rsrepair {

namespace {

PrimeField field_of(std::span<const Element> xs) {
    if (xs.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
    return xs.front().field();
}

} // namespace

Polynomial::Polynomial(const PrimeField& field, std::vector<u64> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
    for (u64& c : coeffs_) c %= field_.modulus();
}

Polynomial::Polynomial(std::span<const Element> coeffs) : field_(field_of(coeffs)) {
    coeffs_.reserve(coeffs.size());
    for (const Element& c : coeffs) {
        if (c.modulus() != field_.modulus()) throw std::invalid_argument("polynomial coefficients from different fields");
        coeffs_.push_back(c.value());
    }
}

int Polynomial::degree() const noexcept {
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] != 0) return static_cast<int>(i);
    }
    return -1;
}

u64 Polynomial::eval(u64 x) const noexcept {
    u64 acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), coeffs_[i]);
    return acc;
}

Element Polynomial::operator()(const Element& x) const {
    if (x.modulus() != field_.modulus()) throw std::invalid_argument("evaluation point from a different field");
    return field_.from_residue(eval(x.value()));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(a.field_ == b.field_)) return false;
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        u64 x = i < a.coeffs_.size() ? a.coeffs_[i] : 0;
        u64 y = i < b.coeffs_.size() ? b.coeffs_[i] : 0;
        if (x != y) return false;
    }
    return true;
}

RSCode::RSCode(const PrimeField& field, std::size_t k, std::vector<u64> points)
    : field_(field), k_(k), points_(std::move(points)) {
    if (k_ == 0) throw std::invalid_argument("RS code dimension must be positive");
    if (points_.size() <= k_) throw std::invalid_argument("RS code needs n > k");
    if (points_.size() > field_.modulus()) throw std::invalid_argument("RS code needs n <= p");
    std::unordered_set<u64> seen;
    for (u64& x : points_) {
        x %= field_.modulus();
        if (!seen.insert(x).second) throw std::invalid_argument("RS evaluation points must be distinct");
    }
}

Codeword encode(const RSCode& code, const Polynomial& f) {
    if (!(f.field() == code.field())) throw std::invalid_argument("encode: polynomial over a different field");
    if (f.degree() >= static_cast<int>(code.k())) throw std::invalid_argument("encode: polynomial degree must be < k");
    Codeword out{code, {}};
    out.values.reserve(code.n());
    for (u64 x : code.points()) out.values.push_back(f.eval(x));
    return out;
}

Polynomial interpolate(const PrimeField& F, std::span<const u64> points, std::span<const u64> values) {
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("interpolate: need at least one pair");
    if (values.size() != n) throw std::invalid_argument("interpolate: points and values differ in length");
    {
        std::unordered_set<u64> seen;
        for (u64 x : points) {
            if (!seen.insert(x % F.modulus()).second) throw std::invalid_argument("interpolate: duplicate points");
        }
    }
    // master = prod (x - x_i), degree n
    std::vector<u64> master{1};
    for (u64 xi : points) {
        std::vector<u64> next(master.size() + 1, 0);
        for (std::size_t j = 0; j < master.size(); ++j) {
            next[j + 1] = F.add(next[j + 1], master[j]);
            next[j] = F.sub(next[j], F.mul(master[j], xi % F.modulus()));
        }
        master = std::move(next);
    }
    std::vector<u64> coeffs(n, 0);
    std::vector<u64> quotient(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const u64 xi = points[i] % F.modulus();
        // synthetic division of master by (x - xi)
        u64 carry = 0;
        for (std::size_t j = n; j-- > 0;) {
            carry = F.add(master[j + 1], F.mul(carry, xi));
            quotient[j] = carry;
        }
        u64 denom = 0;
        for (std::size_t j = n; j-- > 0;) denom = F.add(F.mul(denom, xi), quotient[j]);
        const u64 scale = F.mul(values[i] % F.modulus(), F.inv(denom));
        for (std::size_t j = 0; j < n; ++j) coeffs[j] = F.add(coeffs[j], F.mul(scale, quotient[j]));
    }
    return Polynomial(F, std::move(coeffs));
}

Polynomial interpolate(std::span<const std::pair<Element, Element>> pairs) {
    if (pairs.empty()) throw std::invalid_argument("interpolate: need at least one pair");
    const PrimeField F = pairs.front().first.field();
    std::vector<u64> xs, ys;
    for (const auto& [x, y] : pairs) {
        if (x.modulus() != F.modulus() || y.modulus() != F.modulus()) {
            throw std::invalid_argument("interpolate: pairs from different fields");
        }
        xs.push_back(x.value());
        ys.push_back(y.value());
    }
    return interpolate(F, xs, ys);
}

Punctured puncture(const RSCode& code, std::span<const std::size_t> keep) {
    std::vector<std::size_t> idx(keep.begin(), keep.end());
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
        throw std::invalid_argument("puncture: repeated index");
    }
    if (idx.size() <= code.k()) throw std::invalid_argument("puncture: must keep more than k points");
    std::vector<std::size_t> map(code.n(), Punctured::npos);
    std::vector<u64> pts;
    for (std::size_t i : idx) {
        if (i >= code.n()) throw std::out_of_range("puncture: index out of range");
        map[i] = pts.size();
        pts.push_back(code.points()[i]);
    }
    return Punctured{RSCode(code.field(), code.k(), std::move(pts)), std::move(map)};
}

u64 AffineMap::apply(u64 x) const {
    const PrimeField F = a.field();
    return F.add(F.mul(a.value(), x % F.modulus()), b.value());
}

AffineMap AffineMap::inverse() const {
    const Element ai = a.inverse();
    return AffineMap{ai, -(ai * b)};
}

AffineMap AffineMap::compose(const AffineMap& inner) const { return AffineMap{a * inner.a, a * inner.b + b}; }

MappedCode affine_map_code(const RSCode& code, const Element& a, const Element& b) {
    if (a.is_zero()) throw std::invalid_argument("affine_map_code: a must be nonzero");
    if (a.modulus() != code.field().modulus() || b.modulus() != code.field().modulus()) {
        throw std::invalid_argument("affine_map_code: map over a different field");
    }
    AffineMap map{a, b};
    std::vector<u64> pts;
    pts.reserve(code.n());
    for (u64 x : code.points()) pts.push_back(map.apply(x));
    return MappedCode{RSCode(code.field(), code.k(), std::move(pts)), map};
}

Polynomial compose_affine(const Polynomial& f, const AffineMap& map) {
    const PrimeField& F = f.field();
    const std::size_t n = f.size();
    std::vector<u64> acc(n, 0);
    // Horner in polynomial arithmetic: acc = acc * (a x + b) + c_i
    for (std::size_t i = n; i-- > 0;) {
        std::vector<u64> next(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (acc[j] == 0) continue;
            next[j] = F.add(next[j], F.mul(acc[j], map.b.value()));
            if (j + 1 < n) next[j + 1] = F.add(next[j + 1], F.mul(acc[j], map.a.value()));
        }
        next[0] = F.add(next[0], f.coeffs()[i]);
        acc = std::move(next);
    }
    return Polynomial(F, std::move(acc));
}

} // namespace rsrepair
