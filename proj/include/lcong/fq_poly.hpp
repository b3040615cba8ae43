#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lcong/galois_field.hpp"

namespace lcong::ff {

using Elem = GaloisField::Elem;

/// Dense polynomial over F_q, coefficients low to high, no trailing zeros.
/// The zero polynomial is the empty vector.
using Poly = std::vector<Elem>;

/// The constant field F_q of k = F_q(t). Cheap to copy (shared tables).
class GroundField {
public:
    GroundField(std::int64_t p, int f, std::vector<std::int64_t> modulus = {});

    std::int64_t characteristic() const { return gf_->characteristic(); }
    int degree() const { return gf_->degree(); }
    std::int64_t order() const { return gf_->order(); }
    const std::vector<std::int64_t>& modulus() const { return gf_->modulus(); }
    const GaloisField& field() const { return *gf_; }

    bool operator==(const GroundField& o) const { return gf_ == o.gf_ || *gf_ == *o.gf_; }
    std::string describe() const { return gf_->describe(); }

    // Polynomial arithmetic.
    Poly add(const Poly& a, const Poly& b) const;
    Poly sub(const Poly& a, const Poly& b) const;
    Poly neg(const Poly& a) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly scale(const Poly& a, Elem c) const;
    /// Quotient and remainder; b must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
    Poly div(const Poly& a, const Poly& b) const { return divmod(a, b).first; }
    Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
    Poly monic(const Poly& a) const;
    /// Monic gcd (zero when both inputs are zero).
    Poly gcd(const Poly& a, const Poly& b) const;
    /// (g, s, t) with s a + t b = g = gcd(a, b) monic.
    std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) const;
    /// Inverse of a modulo m (InvalidInput when not coprime).
    Poly inv_mod(const Poly& a, const Poly& m) const;
    Poly powmod(const Poly& a, const mpz_class& e, const Poly& m) const;
    Poly pow(const Poly& a, std::int64_t e) const;
    Poly derivative(const Poly& a) const;
    Elem evaluate(const Poly& a, Elem x) const;

    bool is_irreducible(const Poly& f) const;
    /// Monic irreducible factors with multiplicities, sorted by poly_compare.
    std::vector<std::pair<Poly, int>> factor(const Poly& f) const;
    /// All monic irreducibles of degree d in canonical order (TooLarge past cap).
    std::vector<Poly> monic_irreducibles(int d, std::size_t cap = 1'000'000) const;

    std::string to_string(const Poly& a, const std::string& var = "t") const;

private:
    std::vector<Poly> split_equal_degree(const Poly& f, int d, std::uint64_t& state) const;
    Poly random_poly(int deg_below, std::uint64_t& state) const;

    std::shared_ptr<const GaloisField> gf_;
};

inline std::int64_t degree(const Poly& a) { return static_cast<std::int64_t>(a.size()) - 1; }
void trim(Poly& a);
inline Poly constant_poly(Elem c) { return c == 0 ? Poly{} : Poly{c}; }
inline Poly monomial(Elem c, std::size_t k) {
    if (c == 0) return {};
    Poly p(k + 1, 0);
    p[k] = c;
    return p;
}

/// Canonical order: by degree, then coefficients compared from the top down.
std::strong_ordering poly_compare(const Poly& a, const Poly& b);

}  // namespace lcong::ff
