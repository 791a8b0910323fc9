#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rsrepair/field.hpp"

namespace rsrepair {

/// Coefficients over F_p, lowest degree first. Trailing zeros are allowed,
/// so the stored length is the ambient dimension rather than the degree.
class Polynomial {
  public:
    Polynomial(const PrimeField& field, std::vector<u64> coeffs);
    Polynomial(std::span<const Element> coeffs);

    const PrimeField& field() const noexcept { return field_; }
    const std::vector<u64>& coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// -1 for the zero polynomial.
    int degree() const noexcept;
    Element operator()(const Element& x) const;
    u64 eval(u64 x) const noexcept;

    friend bool operator==(const Polynomial& a, const Polynomial& b);

  private:
    PrimeField field_;
    std::vector<u64> coeffs_;
};

/// The [n, k] Reed-Solomon code with a fixed evaluation set.
class RSCode {
  public:
    RSCode(const PrimeField& field, std::size_t k, std::vector<u64> points);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t n() const noexcept { return points_.size(); }
    const std::vector<u64>& points() const noexcept { return points_; }
    Element point(std::size_t i) const { return field_.from_residue(points_.at(i)); }

    friend bool operator==(const RSCode&, const RSCode&) = default;

  private:
    PrimeField field_;
    std::size_t k_;
    std::vector<u64> points_;
};

/// Evaluations aligned with the points of the code that produced them.
struct Codeword {
    RSCode code;
    std::vector<u64> values;

    Element at(std::size_t i) const { return code.field().from_residue(values.at(i)); }
};

Codeword encode(const RSCode& code, const Polynomial& f);

/// Unique polynomial of degree < pairs.size() through every (point, value).
Polynomial interpolate(std::span<const std::pair<Element, Element>> pairs);
Polynomial interpolate(const PrimeField& field, std::span<const u64> points, std::span<const u64> values);

struct Punctured {
    RSCode code;
    /// old index -> new index, or npos when dropped.
    std::vector<std::size_t> index_map;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

Punctured puncture(const RSCode& code, std::span<const std::size_t> keep);

/// x -> a*x + b over F_p, a != 0.
struct AffineMap {
    Element a;
    Element b;

    Element operator()(const Element& x) const { return a * x + b; }
    u64 apply(u64 x) const;
    AffineMap inverse() const;
    /// (this o inner)(x) = this(inner(x)).
    AffineMap compose(const AffineMap& inner) const;
};

struct MappedCode {
    RSCode code;
    AffineMap map;
};

/// Code on {a*alpha + b}. A codeword f(alpha) of the original code equals
/// g(a*alpha + b) with g = f o map^{-1}, so codeword sets correspond.
MappedCode affine_map_code(const RSCode& code, const Element& a, const Element& b);

/// f o map, used to carry a polynomial across an affine reparameterization.
Polynomial compose_affine(const Polynomial& f, const AffineMap& map);

} // namespace rsrepair
