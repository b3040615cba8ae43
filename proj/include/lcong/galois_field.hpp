#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lcong {

bool is_prime(std::int64_t n);

/// Returns (p, f) with n = p^f, or (0, 0) when n is not a prime power.
std::pair<std::int64_t, int> prime_power_decomposition(std::int64_t n);

/// Integer power with overflow detection (throws TooLarge).
std::int64_t checked_pow(std::int64_t base, std::int64_t exp);

/// The finite field F_{p^f} = F_p[X]/(modulus).
///
/// Elements are encoded as integers 0..q-1: the element sum c_i X^i maps to
/// sum c_i p^i. Zero is 0 and one is 1 in this encoding. Multiplication goes
/// through discrete-log tables, so q is capped at 2^20.
class GaloisField {
public:
    using Elem = std::uint32_t;

    /// modulus: monic, degree f, coefficients low to high in [0, p). An empty
    /// modulus selects the default (lexicographically smallest irreducible).
    GaloisField(std::int64_t p, int f, std::vector<std::int64_t> modulus = {});

    std::int64_t characteristic() const { return p_; }
    int degree() const { return f_; }
    std::int64_t order() const { return q_; }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(std::int64_t n) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::int64_t e) const;

    /// Absolute trace to F_p, returned as an integer in [0, p).
    std::int64_t trace(Elem a) const;
    /// Coordinates over F_p in the power basis of the modulus.
    std::vector<std::int64_t> coords(Elem a) const;
    Elem from_coords(const std::vector<std::int64_t>& c) const;
    /// A fixed generator of the multiplicative group.
    Elem generator() const { return exp_table_.empty() ? 1 : exp_table_[1]; }

    bool operator==(const GaloisField& o) const {
        return p_ == o.p_ && f_ == o.f_ && modulus_ == o.modulus_;
    }

    std::string describe() const;

private:
    std::int64_t p_;
    int f_;
    std::int64_t q_;
    std::vector<std::int64_t> modulus_;
    std::vector<Elem> exp_table_;
    std::vector<std::uint32_t> log_table_;
};

/// Monic irreducibility over the prime field Z/p, for the coefficient vector
/// (low to high, leading coefficient 1).
bool is_irreducible_mod_p(const std::vector<std::int64_t>& poly, std::int64_t p);

/// Lexicographically smallest monic irreducible of degree d over Z/p, where
/// the non-leading coefficients (c_{d-1}, ..., c_0) are compared from the
/// highest degree down.
std::vector<std::int64_t> default_modulus(std::int64_t p, int d);

}  // namespace lcong
