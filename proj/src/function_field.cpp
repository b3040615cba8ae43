#include "lcong/function_field.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lcong::ff {

// ---------------------------------------------------------------------------
// Places

Place Place::finite(const GroundField& F, Poly p) {
    trim(p);
    require(ff::degree(p) >= 1 && p.back() == 1, ErrorKind::InvalidInput, "place polynomial must be monic of degree >= 1");
    require(F.is_irreducible(p), ErrorKind::InvalidInput, "place polynomial " + F.to_string(p) + " is reducible");
    return Place(std::move(p));
}

std::strong_ordering Place::operator<=>(const Place& o) const {
    if (is_infinity() || o.is_infinity()) return is_infinity() <=> o.is_infinity();
    return poly_compare(poly_, o.poly_);
}

std::string Place::to_string(const GroundField& F) const { return is_infinity() ? "inf" : "(" + F.to_string(poly_) + ")"; }

std::vector<Place> places_of_degree(const GroundField& F, int d) {
    std::vector<Place> out;
    for (auto& p : F.monic_irreducibles(d)) out.push_back(Place::finite(F, std::move(p)));
    return out;
}

namespace {

// Multiplicity of the irreducible P in the nonzero polynomial a; a is divided out.
std::int64_t strip_factor(const GroundField& F, Poly& a, const Poly& P) {
    std::int64_t k = 0;
    for (;;) {
        auto [q, r] = F.divmod(a, P);
        if (!r.empty()) return k;
        a = std::move(q);
        ++k;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational functions

RationalFunction RationalFunction::make(const GroundField& F, Poly num, Poly den) {
    trim(num);
    trim(den);
    require(!den.empty(), ErrorKind::InvalidInput, "rational function with zero denominator");
    RationalFunction r(F);
    if (num.empty()) return r;
    Poly g = F.gcd(num, den);
    num = F.div(num, g);
    den = F.div(den, g);
    const Elem lead = den.back();
    if (lead != 1) {
        const Elem li = F.field().inv(lead);
        num = F.scale(num, li);
        den = F.scale(den, li);
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

RationalFunction RationalFunction::operator-() const { return make(F_, F_.neg(num_), den_); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    const auto& F = a.F_;
    if (a.den_ == b.den_) return RationalFunction::make(F, F.add(a.num_, b.num_), a.den_);
    return RationalFunction::make(F, F.add(F.mul(a.num_, b.den_), F.mul(b.num_, a.den_)), F.mul(a.den_, b.den_));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    const auto& F = a.F_;
    return RationalFunction::make(F, F.mul(a.num_, b.num_), F.mul(a.den_, b.den_));
}

RationalFunction RationalFunction::inv() const {
    require(!is_zero(), ErrorKind::InvalidInput, "inverse of the zero function");
    return make(F_, den_, num_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inv(); }

RationalFunction RationalFunction::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    return make(F_, F_.pow(num_, e), F_.pow(den_, e));
}

std::int64_t RationalFunction::valuation(const Place& v) const {
    if (is_zero()) return kInfinity;
    if (v.is_infinity()) return degree(den_) - degree(num_);
    Poly n = num_, d = den_;
    return strip_factor(F_, n, v.poly()) - strip_factor(F_, d, v.poly());
}

std::string RationalFunction::to_string() const {
    if (den_ == Poly{1}) return F_.to_string(num_);
    return "(" + F_.to_string(num_) + ")/(" + F_.to_string(den_) + ")";
}

// ---------------------------------------------------------------------------
// Local elements

LocalElement LocalElement::exact(const Place& v, std::int64_t valuation, std::vector<Poly> digits) {
    for (auto& d : digits) trim(d);
    std::size_t lo = 0;
    while (lo < digits.size() && digits[lo].empty()) ++lo;
    if (lo == digits.size()) return exact_zero(v);
    std::size_t hi = digits.size();
    while (digits[hi - 1].empty()) --hi;
    std::vector<Poly> kept(digits.begin() + static_cast<std::ptrdiff_t>(lo), digits.begin() + static_cast<std::ptrdiff_t>(hi));
    for (const auto& d : kept)
        require(degree(d) < v.degree(), ErrorKind::InvalidInput, "local digit has degree >= deg v");
    return {v, valuation + static_cast<std::int64_t>(lo), kInfinity, std::move(kept)};
}

Poly LocalElement::digit(std::int64_t index) const {
    require(index < precision, ErrorKind::InsufficientPrecision,
            "digit " + std::to_string(index) + " is beyond the known precision " + std::to_string(precision));
    if (digits.empty() || index < valuation) return {};
    const auto i = static_cast<std::size_t>(index - valuation);
    return i < digits.size() ? digits[i] : Poly{};
}

namespace {

// Builds a local element from digits at pi^{start}, pi^{start+1}, ..., known
// to absolute precision `precision` (kInfinity: terminating).
LocalElement normalize(const Place& v, std::int64_t start, std::vector<Poly> digits, std::int64_t precision) {
    if (precision == kInfinity) return LocalElement::exact(v, start, std::move(digits));
    std::size_t lo = 0;
    while (lo < digits.size() && digits[lo].empty()) ++lo;
    if (lo == digits.size()) return LocalElement::zero_mod(v, precision);
    digits.erase(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(lo));
    return {v, start + static_cast<std::int64_t>(lo), precision, std::move(digits)};
}

// Power series quotient a / b modulo u^M, b(0) != 0.
Poly series_div(const GroundField& F, const Poly& a, const Poly& b, std::int64_t M) {
    const auto& gf = F.field();
    const Elem b0inv = gf.inv(b.at(0));
    Poly out(static_cast<std::size_t>(M), 0);
    for (std::int64_t i = 0; i < M; ++i) {
        Elem acc = i < static_cast<std::int64_t>(a.size()) ? a[i] : 0;
        for (std::int64_t j = 1; j <= i && j < static_cast<std::int64_t>(b.size()); ++j)
            acc = gf.sub(acc, gf.mul(b[j], out[i - j]));
        out[i] = gf.mul(acc, b0inv);
    }
    return out;
}

Poly reversed(const Poly& a) { return Poly(a.rbegin(), a.rend()); }

}  // namespace

LocalElement expand_at(const RationalFunction& r, const Place& v, std::int64_t M) {
    require(M >= 1, ErrorKind::InvalidInput, "expansion length must be >= 1");
    if (r.is_zero()) return LocalElement::exact_zero(v);
    const GroundField& F = r.field();
    if (v.is_infinity()) {
        // r = u^{v0} N~(u) / D~(u) with u = 1/t and D~(0) = 1.
        const std::int64_t v0 = degree(r.den()) - degree(r.num());
        Poly s = series_div(F, reversed(r.num()), reversed(r.den()), M);
        std::vector<Poly> digits;
        for (auto c : s) digits.push_back(constant_poly(c));
        return {v, v0, v0 + M, std::move(digits)};
    }
    const Poly& P = v.poly();
    Poly n = r.num(), d = r.den();
    const std::int64_t v0 = strip_factor(F, n, P) - strip_factor(F, d, P);
    const Poly PM = F.pow(P, M);
    Poly a = F.mod(F.mul(n, F.inv_mod(d, PM)), PM);
    std::vector<Poly> digits;
    for (std::int64_t i = 0; i < M; ++i) {
        auto [q, rem] = F.divmod(a, P);
        digits.push_back(std::move(rem));
        a = std::move(q);
    }
    return {v, v0, v0 + M, std::move(digits)};
}

RationalFunction to_rational(const GroundField& F, const LocalElement& x) {
    if (x.digits.empty()) return RationalFunction(F);
    const auto len = static_cast<std::int64_t>(x.digits.size());
    if (x.place.is_infinity()) {
        // sum c_i t^{-(v+i)} = (sum c_i t^{K-v-i}) / t^K with K = max(0, v+len-1).
        const std::int64_t K = std::max<std::int64_t>(0, x.valuation + len - 1);
        Poly num;
        for (std::int64_t i = 0; i < len; ++i) {
            if (x.digits[i].empty()) continue;
            num = F.add(num, monomial(x.digits[i][0], static_cast<std::size_t>(K - x.valuation - i)));
        }
        return RationalFunction::make(F, num, monomial(1, static_cast<std::size_t>(K)));
    }
    const Poly& P = x.place.poly();
    Poly acc;
    for (std::int64_t i = len; i-- > 0;) acc = F.add(F.mul(acc, P), x.digits[i]);
    if (x.valuation >= 0) return RationalFunction::make(F, F.mul(acc, F.pow(P, x.valuation)), Poly{1});
    return RationalFunction::make(F, acc, F.pow(P, -x.valuation));
}

LocalElement truncate(const LocalElement& x, std::int64_t n) {
    require(n <= x.precision, ErrorKind::InsufficientPrecision, "cannot truncate beyond the known precision");
    if (x.digits.empty() || x.valuation >= n) return LocalElement::zero_mod(x.place, n);
    std::vector<Poly> d;
    for (std::int64_t i = x.valuation; i < n; ++i) d.push_back(x.digit(i));
    return normalize(x.place, x.valuation, std::move(d), n);
}

LocalElement add(const GroundField& F, const LocalElement& x, const LocalElement& y) {
    require(x.place == y.place, ErrorKind::InvalidInput, "adding local elements at different places");
    if (x.valuation == kInfinity) return y;
    if (y.valuation == kInfinity) return x;
    const std::int64_t prec = std::min(x.precision, y.precision);
    const std::int64_t lo = std::min(x.valuation, y.valuation);
    std::int64_t hi = prec;
    if (prec == kInfinity)
        hi = std::max(x.valuation + static_cast<std::int64_t>(x.digits.size()),
                      y.valuation + static_cast<std::int64_t>(y.digits.size()));
    if (lo >= hi) return LocalElement::zero_mod(x.place, prec);
    std::vector<Poly> d;
    for (std::int64_t i = lo; i < hi; ++i) d.push_back(F.add(x.digit(i), y.digit(i)));
    return normalize(x.place, lo, std::move(d), prec);
}

LocalElement neg(const GroundField& F, const LocalElement& x) {
    LocalElement r = x;
    for (auto& d : r.digits) d = F.neg(d);
    return r;
}

LocalElement sub(const GroundField& F, const LocalElement& x, const LocalElement& y) { return add(F, x, neg(F, y)); }

LocalElement shift(const LocalElement& x, std::int64_t k) {
    LocalElement r = x;
    if (r.valuation != kInfinity) r.valuation += k;
    if (r.precision != kInfinity) r.precision += k;
    return r;
}

LocalElement mul(const RationalFunction& g, const LocalElement& x, std::int64_t M) {
    const GroundField& F = g.field();
    if (g.is_zero() || x.valuation == kInfinity) return LocalElement::exact_zero(x.place);
    const std::int64_t og = g.valuation(x.place);
    if (x.is_exact()) {
        const std::int64_t len = std::max<std::int64_t>(M, static_cast<std::int64_t>(x.digits.size()));
        return expand_at(g * to_rational(F, x), x.place, len);
    }
    const std::int64_t prec = x.precision + og;
    const RationalFunction r = g * to_rational(F, x);
    if (r.is_zero()) return LocalElement::zero_mod(x.place, prec);
    const std::int64_t vr = r.valuation(x.place);
    if (vr >= prec) return LocalElement::zero_mod(x.place, prec);
    return expand_at(r, x.place, prec - vr);
}

// ---------------------------------------------------------------------------
// The character psi

std::int64_t psi_exponent(const GroundField& F, const LocalElement& x) {
    const Place& v = x.place;
    const std::int64_t cond = psi_conductor(v);
    if (x.valuation >= cond) return 0;
    require(x.precision >= cond, ErrorKind::InsufficientPrecision,
            "psi needs the element modulo p_v^" + std::to_string(cond) + " at " + v.to_string(F));
    const auto& gf = F.field();
    if (v.is_infinity()) {
        // x dt = -sum c_i u^{i-2} du, so the residue is -c_1.
        const Poly c = x.digit(1);
        return c.empty() ? 0 : gf.trace(gf.neg(c[0]));
    }
    // Only the digit at P^{-1} contributes; its t^{deg P - 1} coefficient is
    // the residue already traced down to F_q.
    const Poly c = x.digit(-1);
    const auto top = static_cast<std::size_t>(v.degree() - 1);
    return top < c.size() ? gf.trace(c[top]) : 0;
}

std::int64_t psi_exponent(const RationalFunction& r, const Place& v) {
    if (r.is_zero()) return 0;
    const std::int64_t vr = r.valuation(v), cond = psi_conductor(v);
    if (vr >= cond) return 0;
    return psi_exponent(r.field(), expand_at(r, v, cond - vr));
}

namespace {

padic::LocalNumber zeta_power(const GroundField& F, const padic::FieldConfig& cfg, std::int64_t k) {
    const std::int64_t p = F.characteristic();
    k = ((k % p) + p) % p;
    if (k == 0) return padic::LocalNumber::one(cfg);
    return padic::primitive_pth_root(cfg, p).pow(k);
}

}  // namespace

padic::LocalNumber psi_local(const GroundField& F, const padic::FieldConfig& cfg, const LocalElement& x) {
    return zeta_power(F, cfg, psi_exponent(F, x));
}

Adele principal_adele(const RationalFunction& gamma, std::int64_t M) {
    Adele a;
    if (gamma.is_zero()) return a;
    const GroundField& F = gamma.field();
    for (const auto& [P, mult] : F.factor(gamma.den())) {
        Place v = Place::finite(F, P);
        a.emplace(v, expand_at(gamma, v, M));
    }
    a.emplace(Place::infinity(), expand_at(gamma, Place::infinity(), M));
    return a;
}

std::int64_t psi_global_exponent(const GroundField& F, const Adele& x) {
    std::int64_t k = 0;
    for (const auto& [v, xv] : x) {
        require(xv.place == v, ErrorKind::InvalidInput, "adele component stored under the wrong place");
        k = (k + psi_exponent(F, xv)) % F.characteristic();
    }
    return k;
}

padic::LocalNumber psi_global(const GroundField& F, const padic::FieldConfig& cfg, const Adele& x) {
    return zeta_power(F, cfg, psi_global_exponent(F, x));
}

// ---------------------------------------------------------------------------
// Divisors and Riemann-Roch spaces

std::int64_t Divisor::operator[](const Place& v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? 0 : it->second;
}

void Divisor::set(const Place& v, std::int64_t n) {
    if (n == 0)
        terms_.erase(v);
    else
        terms_[v] = n;
}

std::int64_t Divisor::degree() const {
    std::int64_t d = 0;
    for (const auto& [v, n] : terms_) d += n * v.degree();
    return d;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (const auto& [v, n] : b.terms_) r.add(v, n);
    return r;
}

Divisor operator-(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (const auto& [v, n] : b.terms_) r.add(v, -n);
    return r;
}

std::string Divisor::to_string(const GroundField& F) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, n] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << n << "*" << v.to_string(F);
    }
    return os.str();
}

Divisor divisor_of(const RationalFunction& r) {
    require(!r.is_zero(), ErrorKind::InvalidInput, "the zero function has no divisor");
    const GroundField& F = r.field();
    Divisor D;
    for (const auto& [P, m] : F.factor(r.num())) D.add(Place::finite(F, P), m);
    for (const auto& [P, m] : F.factor(r.den())) D.add(Place::finite(F, P), -m);
    D.set(Place::infinity(), degree(r.den()) - degree(r.num()));
    return D;
}

namespace {

// L(D) = { g Z / Den : deg g <= deg D }.
std::pair<Poly, Poly> rr_frame(const GroundField& F, const Divisor& D) {
    Poly Z{1}, Den{1};
    for (const auto& [v, n] : D.terms()) {
        if (v.is_infinity()) continue;
        if (n > 0) Den = F.mul(Den, F.pow(v.poly(), n));
        if (n < 0) Z = F.mul(Z, F.pow(v.poly(), -n));
    }
    return {Z, Den};
}

}  // namespace

std::vector<RationalFunction> rr_space(const GroundField& F, const Divisor& D) {
    std::vector<RationalFunction> basis;
    const std::int64_t deg = D.degree();
    if (deg < 0) return basis;
    auto [Z, Den] = rr_frame(F, D);
    for (std::int64_t i = 0; i <= deg; ++i)
        basis.push_back(RationalFunction::make(F, F.mul(monomial(1, static_cast<std::size_t>(i)), Z), Den));
    return basis;
}

std::vector<RationalFunction> rr_elements(const GroundField& F, const Divisor& D, std::size_t cap) {
    std::vector<RationalFunction> out;
    const std::int64_t deg = D.degree();
    if (deg < 0) return out;
    const std::int64_t q = F.order();
    std::int64_t total = 1;
    for (std::int64_t i = 0; i <= deg; ++i) {
        total *= q;
        require(total - 1 <= static_cast<std::int64_t>(cap), ErrorKind::TooLarge,
                "Riemann-Roch space has more than " + std::to_string(cap) + " elements");
    }
    auto [Z, Den] = rr_frame(F, D);
    for (std::int64_t n = 1; n < total; ++n) {
        Poly g(static_cast<std::size_t>(deg) + 1);
        std::int64_t m = n;
        for (auto& c : g) {
            c = static_cast<Elem>(m % q);
            m /= q;
        }
        trim(g);
        out.push_back(RationalFunction::make(F, F.mul(g, Z), Den));
    }
    return out;
}

Divisor psi_kernel_divisor(const Divisor& U) {
    Divisor K = U;
    K.add(Place::infinity(), -psi_conductor(Place::infinity()));
    return K;
}

std::vector<RationalFunction> psi_kernel_set(const GroundField& F, const Divisor& U, std::size_t cap) {
    return rr_elements(F, psi_kernel_divisor(U), cap);
}

// ---------------------------------------------------------------------------
// The finite quotients of A/k

namespace {

struct Slot {
    Place place;
    std::int64_t digit;      // which P-adic digit
    std::int64_t coeff;      // which coefficient of that digit
};

std::vector<Slot> coset_slots(const Divisor& U) {
    std::vector<Slot> slots;
    for (const auto& [v, m] : U.terms()) {
        require(m >= 0, ErrorKind::InvalidInput, "U needs m_v >= 0 at every place");
        for (std::int64_t i = 0; i < m; ++i)
            for (std::int64_t c = 0; c < v.degree(); ++c) slots.push_back({v, i, c});
    }
    return slots;
}

std::int64_t index_exponent(const Divisor& U) {
    std::int64_t s = 0;
    for (const auto& [v, m] : U.terms()) {
        require(m >= 0, ErrorKind::InvalidInput, "U needs m_v >= 0 at every place");
        s += m * v.degree();
    }
    return s;
}

}  // namespace

QuotientIndex quotient_index(const GroundField& F, const Divisor& U) {
    const std::int64_t s = index_exponent(U);
    QuotientIndex out;
    out.p = F.characteristic();
    out.p_exponent = s == 0 ? 0 : (s - 1) * F.degree();
    mpz_ui_pow_ui(out.value.get_mpz_t(), static_cast<unsigned long>(out.p), static_cast<unsigned long>(out.p_exponent));
    return out;
}

std::int64_t quotient_index_bruteforce(const GroundField& F, const Divisor& U, std::size_t cap) {
    const auto slots = coset_slots(U);
    const std::int64_t q = F.order();
    std::int64_t total = 1;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        total *= q;
        require(total <= static_cast<std::int64_t>(cap), ErrorKind::TooLarge, "too many residues to enumerate");
    }
    // A constant c in F_q shifts the constant coefficient of digit 0 at every
    // place of the support and leaves all other slots alone.
    std::vector<std::size_t> shifted;
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i].digit == 0 && slots[i].coeff == 0) shifted.push_back(i);
    const auto& gf = F.field();
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    std::int64_t orbits = 0;
    std::vector<Elem> coords(slots.size());
    for (std::int64_t n = 0; n < total; ++n) {
        if (seen[n]) continue;
        ++orbits;
        std::int64_t m = n;
        for (auto& c : coords) {
            c = static_cast<Elem>(m % q);
            m /= q;
        }
        for (std::int64_t c = 0; c < q; ++c) {
            auto moved = coords;
            for (auto i : shifted) moved[i] = gf.add(moved[i], static_cast<Elem>(c));
            std::int64_t code = 0;
            for (std::size_t i = moved.size(); i-- > 0;) code = code * q + moved[i];
            seen[code] = 1;
        }
    }
    return orbits;
}

std::vector<Adele> coset_reps(const GroundField& F, const Divisor& U, std::size_t cap) {
    const auto slots = coset_slots(U);
    const std::int64_t q = F.order();
    // The constant coefficient of digit 0 at the first place is fixed to 0;
    // that slot is slot 0 whenever the support is nonempty.
    const std::size_t free_from = slots.empty() ? 0 : 1;
    std::int64_t total = 1;
    for (std::size_t i = free_from; i < slots.size(); ++i) {
        total *= q;
        require(total <= static_cast<std::int64_t>(cap), ErrorKind::TooLarge,
                "quotient has more than " + std::to_string(cap) + " cosets");
    }
    std::vector<Adele> reps;
    reps.reserve(static_cast<std::size_t>(total));
    for (std::int64_t n = 0; n < total; ++n) {
        std::map<Place, std::vector<Poly>> digits;
        for (const auto& [v, m] : U.terms())
            if (m > 0) digits[v] = std::vector<Poly>(static_cast<std::size_t>(m), Poly(static_cast<std::size_t>(v.degree()), 0));
        // Most significant slot first, so the list is lexicographic in slot order.
        std::int64_t m = n;
        for (std::size_t i = slots.size(); i-- > free_from;) {
            const auto& s = slots[i];
            digits[s.place][s.digit][s.coeff] = static_cast<Elem>(m % q);
            m /= q;
        }
        Adele a;
        for (auto& [v, d] : digits) {
            LocalElement e = LocalElement::exact(v, 0, std::move(d));
            if (!e.is_zero()) a.emplace(v, std::move(e));
        }
        reps.push_back(std::move(a));
    }
    return reps;
}

// ---------------------------------------------------------------------------
// Weak approximation

RationalFunction weak_approx(const GroundField& F, const std::vector<ApproxConstraint>& constraints) {
    std::set<Place> seen;
    const ApproxConstraint* at_inf = nullptr;
    for (const auto& c : constraints) {
        require(seen.insert(c.place).second, ErrorKind::InvalidInput, "weak approximation with a repeated place");
        require(c.target.place == c.place, ErrorKind::InvalidInput, "constraint target lives at another place");
        require(c.target.precision >= c.precision || c.target.valuation >= c.precision, ErrorKind::InsufficientPrecision,
                "target at " + c.place.to_string(F) + " is not known to the requested precision");
        if (c.place.is_infinity()) at_inf = &c;
    }

    // Finite places: y0 = A / B with B clearing the poles of the targets and A
    // fixed by CRT modulo prod P_i^{n_i + b_i}.
    Poly B{1}, A{}, Mod{1};
    struct Local {
        Poly P;
        std::int64_t b, N;
        RationalFunction tau;
    };
    std::vector<Local> locals;
    for (const auto& c : constraints) {
        if (c.place.is_infinity()) continue;
        RationalFunction tau = to_rational(F, truncate(c.target, c.precision));
        const std::int64_t b = tau.is_zero() ? 0 : std::max<std::int64_t>(0, -tau.valuation(c.place));
        const std::int64_t N = c.precision + b;
        if (N <= 0) continue;  // any integral y is close enough
        locals.push_back({c.place.poly(), b, N, tau});
        B = F.mul(B, F.pow(c.place.poly(), b));
    }
    for (const auto& l : locals) {
        const Poly Mi = F.pow(l.P, l.N);
        const RationalFunction scaled = RationalFunction::from_poly(F, B) * l.tau;
        const Poly R = F.mod(F.mul(scaled.num(), F.inv_mod(scaled.den(), Mi)), Mi);
        const Poly step = F.mod(F.mul(F.sub(R, A), F.inv_mod(Mod, Mi)), Mi);
        A = F.add(A, F.mul(Mod, step));
        Mod = F.mul(Mod, Mi);
    }
    RationalFunction y = RationalFunction::make(F, A, B);
    if (!at_inf) return y;

    const Place inf = Place::infinity();
    const std::int64_t n = at_inf->precision;
    const RationalFunction delta = to_rational(F, truncate(at_inf->target, n)) - y;
    if (delta.is_zero() || delta.valuation(inf) >= n) return y;

    // Correction H w with w = Mod / (B Q^s) vanishing to the required order at
    // every constrained finite place; Q^s supplies poles when needed.
    RationalFunction w = RationalFunction::make(F, Mod, B);
    std::int64_t omega = w.valuation(inf);
    if (omega < n - 1) {
        std::optional<Poly> Q;
        for (int d = 1; !Q; ++d)
            for (auto& cand : F.monic_irreducibles(d))
                if (!seen.count(Place::finite(F, cand))) {
                    Q = cand;
                    break;
                }
        const std::int64_t dq = degree(*Q);
        const std::int64_t s = (n - 1 - omega + dq - 1) / dq;
        w = w / RationalFunction::from_poly(F, F.pow(*Q, s));
        omega += s * dq;
    }
    const std::int64_t od = delta.valuation(inf);
    const std::int64_t K = std::max<std::int64_t>(0, omega - od);
    const std::int64_t L = n - omega + K;  // <= K + 1
    const LocalElement de = expand_at(delta, inf, n - od);
    Poly target_series(static_cast<std::size_t>(L), 0);
    for (std::int64_t j = 0; j < L; ++j) {
        const Poly c = de.digit(omega - K + j);
        target_series[j] = c.empty() ? 0 : c[0];
    }
    const LocalElement we = expand_at(w, inf, L);
    Poly wser;
    for (const auto& c : we.digits) wser.push_back(c.empty() ? 0 : c[0]);
    const Poly G = series_div(F, target_series, wser, L);
    Poly H;
    for (std::int64_t j = 0; j < L; ++j) H = F.add(H, monomial(G[j], static_cast<std::size_t>(K - j)));
    return y + RationalFunction::from_poly(F, H) * w;
}

}  // namespace lcong::ff
