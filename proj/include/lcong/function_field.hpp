#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcong/fq_poly.hpp"
#include "lcong/padic.hpp"

/// The rational function field k = F_q(t): places, Laurent expansions,
/// the additive character built from residues of x dt, Riemann-Roch spaces on
/// the projective line, weak approximation and the finite quotients of A/k.
namespace lcong::ff {

using padic::kInfinity;

/// A place of k: a monic irreducible P in F_q[t], or the place at infinity
/// with uniformizer 1/t. Finite places use P itself as uniformizer.
class Place {
public:
    /// Validates that p is monic and irreducible.
    static Place finite(const GroundField& F, Poly p);
    static Place infinity() { return Place(); }

    bool is_infinity() const { return poly_.empty(); }
    const Poly& poly() const { return poly_; }
    std::int64_t degree() const { return is_infinity() ? 1 : ff::degree(poly_); }

    /// Finite places by degree then coefficients from the top; infinity last.
    std::strong_ordering operator<=>(const Place& o) const;
    bool operator==(const Place& o) const { return poly_ == o.poly_; }

    std::string to_string(const GroundField& F) const;

private:
    Place() = default;
    explicit Place(Poly p) : poly_(std::move(p)) {}
    Poly poly_;
};

/// num / den with den monic and gcd(num, den) = 1; zero is 0 / 1.
class RationalFunction {
public:
    explicit RationalFunction(GroundField F) : F_(std::move(F)), den_{1} {}
    static RationalFunction make(const GroundField& F, Poly num, Poly den);
    static RationalFunction from_poly(const GroundField& F, Poly p) { return make(F, std::move(p), Poly{1}); }
    static RationalFunction constant(const GroundField& F, Elem c) { return make(F, constant_poly(c), Poly{1}); }
    static RationalFunction t(const GroundField& F) { return make(F, Poly{0, 1}, Poly{1}); }

    const GroundField& field() const { return F_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.empty(); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction inv() const;
    RationalFunction pow(std::int64_t e) const;

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

    /// ord_v; kInfinity for zero.
    std::int64_t valuation(const Place& v) const;

    std::string to_string() const;

private:
    GroundField F_;
    Poly num_, den_;
};

/// An element of the completion k_v, written sum_i c_i pi^i with pi the
/// uniformizer of v and every digit c_i a polynomial of degree < deg v (a
/// constant at infinity), so addition needs no carries.
///
///  - exact zero: valuation = precision = kInfinity, no digits;
///  - zero modulo p_v^n: valuation = precision = n, no digits;
///  - otherwise digits[0] != 0, and digits[i] multiplies pi^{valuation + i}.
///    With finite precision digits.size() == precision - valuation; with
///    precision == kInfinity the listed digits are the whole (terminating)
///    expansion and the last one is nonzero.
struct LocalElement {
    Place place = Place::infinity();
    std::int64_t valuation = kInfinity;
    std::int64_t precision = kInfinity;
    std::vector<Poly> digits;

    static LocalElement exact_zero(const Place& v) { return {v, kInfinity, kInfinity, {}}; }
    static LocalElement zero_mod(const Place& v, std::int64_t n) { return {v, n, n, {}}; }
    /// A terminating expansion; leading and trailing zero digits are stripped.
    static LocalElement exact(const Place& v, std::int64_t valuation, std::vector<Poly> digits);

    bool is_exact() const { return precision == kInfinity; }
    /// True when no nonzero digit is known (exact zero or zero to precision).
    bool is_zero() const { return digits.empty(); }
    /// Digit at pi^index; zero below the valuation and past a terminating
    /// expansion, InsufficientPrecision at or past the precision.
    Poly digit(std::int64_t index) const;
};

LocalElement expand_at(const RationalFunction& r, const Place& v, std::int64_t M = 16);
/// The rational function represented by the known digits.
RationalFunction to_rational(const GroundField& F, const LocalElement& x);
/// The same element known only modulo p_v^n (n <= precision).
LocalElement truncate(const LocalElement& x, std::int64_t n);
LocalElement add(const GroundField& F, const LocalElement& x, const LocalElement& y);
LocalElement neg(const GroundField& F, const LocalElement& x);
LocalElement sub(const GroundField& F, const LocalElement& x, const LocalElement& y);
/// pi^k x (pure shift of the expansion).
LocalElement shift(const LocalElement& x, std::int64_t k);
/// g x; exact inputs are re-expanded with M significant digits.
LocalElement mul(const RationalFunction& g, const LocalElement& x, std::int64_t M = 16);

/// Smallest n with psi_v trivial on p_v^n: 0 at finite places, 2 at infinity.
inline std::int64_t psi_conductor(const Place& v) { return v.is_infinity() ? 2 : 0; }

/// Tr_{F_q/F_p} of the residue of x dt at the place of x, in [0, p).
/// psi_v(x) = zeta^{psi_exponent(x)}.
std::int64_t psi_exponent(const GroundField& F, const LocalElement& x);
/// Exponent of psi_v(r) for r in k, computed from an expansion that is just
/// long enough.
std::int64_t psi_exponent(const RationalFunction& r, const Place& v);

/// psi_v(x) as a p-th root of unity in the coefficient field (exact 1 for the
/// trivial value). Requires p | ell^d - 1.
padic::LocalNumber psi_local(const GroundField& F, const padic::FieldConfig& cfg, const LocalElement& x);

/// Finitely supported adele; components not listed are 0.
using Adele = std::map<Place, LocalElement>;

/// gamma at each of its finite poles and at infinity, M digits each. All the
/// other components of the diagonal embedding lie in O_v, where psi is trivial.
Adele principal_adele(const RationalFunction& gamma, std::int64_t M = 16);

std::int64_t psi_global_exponent(const GroundField& F, const Adele& x);
padic::LocalNumber psi_global(const GroundField& F, const padic::FieldConfig& cfg, const Adele& x);

/// Finite formal sum of places with nonzero integer coefficients.
class Divisor {
public:
    Divisor() = default;

    std::int64_t operator[](const Place& v) const;
    void set(const Place& v, std::int64_t n);
    void add(const Place& v, std::int64_t n) { set(v, (*this)[v] + n); }
    const std::map<Place, std::int64_t>& terms() const { return terms_; }
    std::int64_t degree() const;

    friend Divisor operator+(const Divisor& a, const Divisor& b);
    friend Divisor operator-(const Divisor& a, const Divisor& b);
    bool operator==(const Divisor& o) const { return terms_ == o.terms_; }

    std::string to_string(const GroundField& F) const;

private:
    std::map<Place, std::int64_t> terms_;
};

/// div(r); r must be nonzero.
Divisor divisor_of(const RationalFunction& r);

/// Basis t^i Z / Den (i = 0..deg D) of L(D) = {f : div f >= -D} union {0},
/// where Den collects the positive and Z the negative finite part of D.
std::vector<RationalFunction> rr_space(const GroundField& F, const Divisor& D);
/// Every nonzero element of L(D), ordered by coefficient vector (TooLarge past cap).
std::vector<RationalFunction> rr_elements(const GroundField& F, const Divisor& D, std::size_t cap = 1'000'000);

/// U = prod p_v^{m_v} given by the divisor m. gamma U lies in ker psi exactly
/// when gamma is a nonzero element of L(K), K = sum m_v v + (m_inf - 2) inf.
Divisor psi_kernel_divisor(const Divisor& U);
std::vector<RationalFunction> psi_kernel_set(const GroundField& F, const Divisor& U, std::size_t cap = 1'000'000);

struct QuotientIndex {
    mpz_class value;
    std::int64_t p = 0;
    std::int64_t p_exponent = 0;  ///< value == p^p_exponent
};

/// Index of the image of U in A/k; all m_v >= 0.
QuotientIndex quotient_index(const GroundField& F, const Divisor& U);
/// Orbit count of F_q acting on prod O_v / p_v^{m_v} by translation.
std::int64_t quotient_index_bruteforce(const GroundField& F, const Divisor& U, std::size_t cap = 1'000'000);
/// Representatives of A/(k + U), as exact adeles supported on supp(U).
std::vector<Adele> coset_reps(const GroundField& F, const Divisor& U, std::size_t cap = 1'000'000);

struct ApproxConstraint {
    Place place;
    LocalElement target;
    std::int64_t precision;  ///< require ord_v(y - target) >= precision
};

/// y in k meeting every constraint (CRT over F_q[t], then a correction at
/// infinity that may add poles at one unconstrained place). Empty input gives 0.
RationalFunction weak_approx(const GroundField& F, const std::vector<ApproxConstraint>& constraints);

/// Finite places of degree d in canonical order.
std::vector<Place> places_of_degree(const GroundField& F, int d);

}  // namespace lcong::ff
