#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "lcong/error.hpp"
#include "lcong/galois_field.hpp"

/// Capped-precision arithmetic in the unramified extension Q_{ell^d} of Q_ell.
///
/// The extension is Q_ell[X]/(F) where F is a monic integer lift (coefficients
/// in [0, ell)) of an irreducible polynomial over Z/ell. Because F stays
/// irreducible modulo ell, ell is inert in Z[X]/(F) and the valuation of
/// sum a_i X^i is min v_ell(a_i). Two representations coexist:
///
///  - exact numbers: elements of the number field Q[X]/(F) with rational
///    coefficients. Integers, rationals and everything built from them by ring
///    operations and inversion stay exact, so identities among exact inputs
///    hold on the nose and zero is decided exactly;
///  - capped numbers: ell^v * unit with the unit known modulo ell^r, r <= N.
///    Hensel roots (square roots of q, roots of unity) live here.
///
/// Mixing an exact number with a capped one first rounds the exact operand to
/// relative precision N.
namespace lcong::padic {

inline constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

class FieldConfig {
public:
    /// modulus: monic of degree d with coefficients in [0, ell); empty picks
    /// the lexicographically smallest irreducible.
    static FieldConfig make(std::int64_t ell, int d, int precision = 32, std::vector<std::int64_t> modulus = {});

    std::int64_t ell() const;
    int degree() const;
    int precision() const;
    const std::vector<std::int64_t>& modulus() const;
    const GaloisField& residue_field() const;
    /// ell^k for 0 <= k <= 4 * precision (cached), computed on demand beyond.
    mpz_class ell_pow(std::int64_t k) const;

    bool operator==(const FieldConfig& o) const;
    bool operator!=(const FieldConfig& o) const { return !(*this == o); }

    std::string describe() const;

private:
    struct Impl;
    explicit FieldConfig(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Throws ConfigMismatch when the two configurations differ.
void require_same_config(const FieldConfig& a, const FieldConfig& b);

/// An element of the residue field F_{ell^d}, coefficients in [0, ell).
class Residue {
public:
    Residue(FieldConfig cfg, std::vector<std::int64_t> coeffs);
    static Residue from_int(const FieldConfig& cfg, std::int64_t n);
    static Residue from_elem(const FieldConfig& cfg, GaloisField::Elem e);

    const FieldConfig& config() const { return cfg_; }
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    GaloisField::Elem elem() const;
    bool is_zero() const;

    friend Residue operator+(const Residue& a, const Residue& b);
    friend Residue operator-(const Residue& a, const Residue& b);
    friend Residue operator*(const Residue& a, const Residue& b);
    Residue operator-() const;
    Residue inv() const;
    Residue pow(std::int64_t e) const;

    bool operator==(const Residue& o) const;
    bool operator!=(const Residue& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    FieldConfig cfg_;
    std::vector<std::int64_t> coeffs_;
};

/// Lexicographic order on coefficient vectors (constant term first).
std::strong_ordering canonical_compare(const Residue& a, const Residue& b);

class LocalNumber {
public:
    enum class Kind { Zero, Exact, Capped };

    static LocalNumber zero(const FieldConfig& cfg);
    static LocalNumber one(const FieldConfig& cfg) { return from_integer(cfg, 1); }
    static LocalNumber from_integer(const FieldConfig& cfg, const mpz_class& n);
    static LocalNumber from_integer(const FieldConfig& cfg, std::int64_t n) { return from_integer(cfg, mpz_class(static_cast<long>(n))); }
    static LocalNumber from_rational(const FieldConfig& cfg, const mpq_class& r);
    /// Exact element sum coeffs[i] X^i of Q[X]/(F); coeffs may be longer than d.
    static LocalNumber from_coeffs(const FieldConfig& cfg, std::vector<mpq_class> coeffs);
    /// Capped number ell^valuation * unit, unit known modulo ell^precision.
    static LocalNumber from_unit(const FieldConfig& cfg, std::int64_t valuation, std::vector<mpz_class> unit,
                                 int precision);
    /// Exact lift of a residue with coefficients in [0, ell).
    static LocalNumber lift(const Residue& r);
    /// ell^k as an exact number.
    static LocalNumber ell_power(const FieldConfig& cfg, std::int64_t k);

    const FieldConfig& config() const { return cfg_; }
    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_exact() const { return kind_ != Kind::Capped; }

    /// kInfinity for exact zero.
    std::int64_t valuation() const { return valuation_; }
    /// Number of certified ell-adic digits of the unit; kInfinity when exact.
    std::int64_t relative_precision() const;
    /// The unit ell^{-v} x reduced modulo ell^k, k <= relative_precision().
    std::vector<mpz_class> unit_mod(int k) const;
    /// Exact coefficients (only for exact numbers).
    const std::vector<mpq_class>& exact_coeffs() const;

    Residue reduce() const;

    LocalNumber operator-() const;
    friend LocalNumber operator+(const LocalNumber& a, const LocalNumber& b);
    friend LocalNumber operator-(const LocalNumber& a, const LocalNumber& b);
    friend LocalNumber operator*(const LocalNumber& a, const LocalNumber& b);
    friend LocalNumber operator/(const LocalNumber& a, const LocalNumber& b);
    LocalNumber& operator+=(const LocalNumber& o) { return *this = *this + o; }
    LocalNumber& operator-=(const LocalNumber& o) { return *this = *this - o; }
    LocalNumber& operator*=(const LocalNumber& o) { return *this = *this * o; }

    LocalNumber inv() const;
    LocalNumber pow(std::int64_t e) const;
    /// Rounds to a capped number of relative precision min(k, N).
    LocalNumber to_capped(int k) const;

    /// Same kind, valuation, precision and digits.
    bool identical(const LocalNumber& o) const;
    /// Equal as far as the available digits can tell (ConfigMismatch across fields).
    bool agrees_with(const LocalNumber& o) const;
    /// True for an exact 1, or a capped number equal to 1 to its full precision.
    bool is_one() const;

    /// Exact numbers in Q: the rational value (throws InvalidInput otherwise).
    mpq_class to_rational() const;

    std::string to_string() const;

private:
    LocalNumber(FieldConfig cfg) : cfg_(std::move(cfg)) {}
    void normalize_exact();

    FieldConfig cfg_;
    Kind kind_ = Kind::Zero;
    std::int64_t valuation_ = kInfinity;
    int precision_ = 0;
    std::vector<mpq_class> exact_;
    std::vector<mpz_class> unit_;
};

inline LocalNumber add(const LocalNumber& a, const LocalNumber& b) { return a + b; }
inline LocalNumber sub(const LocalNumber& a, const LocalNumber& b) { return a - b; }
inline LocalNumber mul(const LocalNumber& a, const LocalNumber& b) { return a * b; }
inline LocalNumber neg(const LocalNumber& a) { return -a; }
inline std::int64_t valuation(const LocalNumber& x) { return x.valuation(); }
inline Residue reduce(const LocalNumber& x) { return x.reduce(); }

/// Polynomial with LocalNumber coefficients, constant term first.
using LocalPoly = std::vector<LocalNumber>;

LocalNumber evaluate(const LocalPoly& f, const LocalNumber& x);
LocalPoly derivative(const LocalPoly& f);
/// Certified lower bound for v(f(x)): the valuation itself when f(x) is known
/// to be nonzero, else the absolute precision to which it is known to vanish.
std::int64_t residual_valuation(const LocalPoly& f, const LocalNumber& x);

/// Newton lift of a simple residue root r0 of an integral polynomial f.
/// The result h satisfies reduce(h) = r0 and v(f(h)) >= N.
LocalNumber hensel_root(const LocalPoly& f, const Residue& r0);

/// All p-th roots of unity, sorted by canonical_compare of their residues.
/// Requires p prime, p != ell and p | ell^d - 1 (UnsupportedDegree otherwise).
std::vector<LocalNumber> pth_roots_of_unity(const FieldConfig& cfg, std::int64_t p);

/// A fixed primitive p-th root of unity: the one with the smallest residue
/// among the non-trivial roots.
LocalNumber primitive_pth_root(const FieldConfig& cfg, std::int64_t p);

/// A square root of the integer q (ell does not divide q), chosen as the lift
/// of the canonically smallest residue square root. UnsupportedDegree when q
/// is not a square in F_{ell^d}.
LocalNumber sqrt_of_integer(const FieldConfig& cfg, std::int64_t q);

}  // namespace lcong::padic
