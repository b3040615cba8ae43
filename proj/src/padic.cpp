#include "lcong/padic.hpp"

#include <algorithm>
#include <sstream>

namespace lcong::padic {

struct FieldConfig::Impl {
    std::int64_t ell = 0;
    int d = 0;
    int precision = 0;
    std::vector<std::int64_t> modulus;
    std::vector<mpz_class> modulus_z;
    GaloisField residue;
    std::vector<mpz_class> powers;

    Impl(std::int64_t e, int deg, int prec, std::vector<std::int64_t> mod)
        : ell(e), d(deg), precision(prec), residue(e, deg, std::move(mod)) {
        modulus = residue.modulus();
        for (auto c : modulus) modulus_z.emplace_back(static_cast<long>(c));
        mpz_class p = 1;
        for (int k = 0; k <= 4 * prec + 4; ++k) {
            powers.push_back(p);
            p *= static_cast<long>(ell);
        }
    }
};

FieldConfig FieldConfig::make(std::int64_t ell, int d, int precision, std::vector<std::int64_t> modulus) {
    require(is_prime(ell), ErrorKind::InvalidInput, "ell = " + std::to_string(ell) + " is not prime");
    require(d >= 1, ErrorKind::InvalidInput, "residue degree must be >= 1");
    require(precision >= 1, ErrorKind::InvalidInput, "precision must be >= 1");
    return FieldConfig(std::make_shared<const Impl>(ell, d, precision, std::move(modulus)));
}

std::int64_t FieldConfig::ell() const { return impl_->ell; }
int FieldConfig::degree() const { return impl_->d; }
int FieldConfig::precision() const { return impl_->precision; }
const std::vector<std::int64_t>& FieldConfig::modulus() const { return impl_->modulus; }
const GaloisField& FieldConfig::residue_field() const { return impl_->residue; }

mpz_class FieldConfig::ell_pow(std::int64_t k) const {
    require(k >= 0, ErrorKind::InvalidInput, "negative power of ell");
    if (k < static_cast<std::int64_t>(impl_->powers.size())) return impl_->powers[k];
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(impl_->ell), static_cast<unsigned long>(k));
    return r;
}

bool FieldConfig::operator==(const FieldConfig& o) const {
    if (impl_ == o.impl_) return true;
    return impl_->ell == o.impl_->ell && impl_->d == o.impl_->d && impl_->precision == o.impl_->precision &&
           impl_->modulus == o.impl_->modulus;
}

std::string FieldConfig::describe() const {
    std::ostringstream os;
    os << "Q_" << impl_->ell;
    if (impl_->d > 1) os << "^" << impl_->d;
    os << " (residue " << impl_->residue.describe() << ", precision " << impl_->precision << ")";
    return os.str();
}

void require_same_config(const FieldConfig& a, const FieldConfig& b) {
    require(a == b, ErrorKind::ConfigMismatch, "values live in different field configurations");
}

// ---------------------------------------------------------------------------
// Residue

Residue::Residue(FieldConfig cfg, std::vector<std::int64_t> coeffs) : cfg_(std::move(cfg)), coeffs_(std::move(coeffs)) {
    const auto ell = cfg_.ell();
    require(static_cast<int>(coeffs_.size()) <= cfg_.degree(), ErrorKind::InvalidInput,
            "residue has more than d coefficients");
    coeffs_.resize(cfg_.degree(), 0);
    for (auto& c : coeffs_) {
        c %= ell;
        if (c < 0) c += ell;
    }
}

Residue Residue::from_int(const FieldConfig& cfg, std::int64_t n) { return Residue(cfg, {n}); }

Residue Residue::from_elem(const FieldConfig& cfg, GaloisField::Elem e) {
    return Residue(cfg, cfg.residue_field().coords(e));
}

GaloisField::Elem Residue::elem() const { return cfg_.residue_field().from_coords(coeffs_); }

bool Residue::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
}

Residue operator+(const Residue& a, const Residue& b) {
    require_same_config(a.cfg_, b.cfg_);
    return Residue::from_elem(a.cfg_, a.cfg_.residue_field().add(a.elem(), b.elem()));
}

Residue operator-(const Residue& a, const Residue& b) {
    require_same_config(a.cfg_, b.cfg_);
    return Residue::from_elem(a.cfg_, a.cfg_.residue_field().sub(a.elem(), b.elem()));
}

Residue operator*(const Residue& a, const Residue& b) {
    require_same_config(a.cfg_, b.cfg_);
    return Residue::from_elem(a.cfg_, a.cfg_.residue_field().mul(a.elem(), b.elem()));
}

Residue Residue::operator-() const { return from_elem(cfg_, cfg_.residue_field().neg(elem())); }
Residue Residue::inv() const { return from_elem(cfg_, cfg_.residue_field().inv(elem())); }
Residue Residue::pow(std::int64_t e) const { return from_elem(cfg_, cfg_.residue_field().pow(elem(), e)); }

bool Residue::operator==(const Residue& o) const {
    require_same_config(cfg_, o.cfg_);
    return coeffs_ == o.coeffs_;
}

std::string Residue::to_string() const {
    if (coeffs_.size() == 1) return std::to_string(coeffs_[0]);
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
    os << "]";
    return os.str();
}

std::strong_ordering canonical_compare(const Residue& a, const Residue& b) {
    require_same_config(a.config(), b.config());
    return std::lexicographical_compare_three_way(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                                  b.coeffs().end());
}

// ---------------------------------------------------------------------------
// Polynomial helpers over Z/ell^k and Q, modulo the lifted modulus F.

namespace {

using ZVec = std::vector<mpz_class>;
using QVec = std::vector<mpq_class>;

std::int64_t val_z(const mpz_class& n, std::int64_t ell) {
    if (n == 0) return kInfinity;
    mpz_class t = n;
    std::int64_t v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(ell))) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(ell));
        ++v;
    }
    return v;
}

std::int64_t val_q(const mpq_class& x, std::int64_t ell) {
    if (x == 0) return kInfinity;
    return val_z(x.get_num(), ell) - val_z(x.get_den(), ell);
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Reduce a coefficient vector (any length) modulo the monic modulus F.
template <class T>
std::vector<T> reduce_mod_f(std::vector<T> a, const std::vector<mpz_class>& f) {
    const std::size_t d = f.size() - 1;
    for (std::size_t i = a.size(); i-- > d;) {
        if (a[i] == 0) continue;
        T c = a[i];
        for (std::size_t j = 0; j < d; ++j) a[i - d + j] -= c * T(f[j]);
        a[i] = 0;
    }
    a.resize(d, T(0));
    return a;
}

template <class T>
std::vector<T> mul_mod_f(const std::vector<T>& a, const std::vector<T>& b, const std::vector<mpz_class>& f) {
    std::vector<T> r(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return reduce_mod_f(std::move(r), f);
}

ZVec mod_vec(ZVec a, const mpz_class& m) {
    for (auto& c : a) c = mod_pos(c, m);
    return a;
}

bool all_zero_z(const ZVec& a) {
    return std::all_of(a.begin(), a.end(), [](const mpz_class& c) { return c == 0; });
}

// Polynomial arithmetic over Q for inversion in Q[X]/(F).
void trim_q(QVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::pair<QVec, QVec> divmod_q(QVec a, const QVec& b) {
    trim_q(a);
    QVec quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a.pop_back();
        trim_q(a);
    }
    return {quot, a};
}

QVec sub_q(QVec a, const QVec& b) {
    if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim_q(a);
    return a;
}

QVec mul_q(const QVec& a, const QVec& b) {
    if (a.empty() || b.empty()) return {};
    QVec r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim_q(r);
    return r;
}

/// s with s * a = 1 modulo F, for nonzero a in Q[X]/(F) (F irreducible over Q).
QVec inverse_mod_f(const QVec& a, const std::vector<mpz_class>& fz) {
    QVec f(fz.begin(), fz.end());
    QVec r0 = f, r1 = a;
    trim_q(r1);
    QVec s0, s1{mpq_class(1)};
    while (r1.size() > 1) {
        auto [qt, rem] = divmod_q(r0, r1);
        QVec s2 = sub_q(s0, mul_q(qt, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    require(r1.size() == 1, ErrorKind::InvalidInput, "element is not invertible in the number field");
    for (auto& c : s1) c /= r1[0];
    return reduce_mod_f(s1, fz);
}

/// Inverse of a unit modulo ell^k in (Z/ell^k)[X]/(F).
ZVec unit_inverse(const ZVec& u, int k, const FieldConfig& cfg, const std::vector<mpz_class>& fz) {
    const auto& gf = cfg.residue_field();
    const std::int64_t ell = cfg.ell();
    std::vector<std::int64_t> red(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) red[i] = mod_pos(u[i], mpz_class(static_cast<long>(ell))).get_si();
    auto inv_el = gf.inv(gf.from_coords(red));
    auto coords = gf.coords(inv_el);
    ZVec y(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) y[i] = static_cast<long>(coords[i]);
    int have = 1;
    while (have < k) {
        have = std::min(2 * have, k);
        const mpz_class m = cfg.ell_pow(have);
        ZVec uy = mod_vec(mul_mod_f(u, y, fz), m);
        ZVec two_minus(uy.size());
        for (std::size_t i = 0; i < uy.size(); ++i) two_minus[i] = -uy[i];
        two_minus[0] += 2;
        y = mod_vec(mul_mod_f(y, two_minus, fz), m);
    }
    return mod_vec(y, cfg.ell_pow(k));
}

std::vector<mpz_class> modulus_z(const FieldConfig& cfg) {
    std::vector<mpz_class> f;
    for (auto c : cfg.modulus()) f.emplace_back(static_cast<long>(c));
    return f;
}

struct Raw {
    std::int64_t val;
    int prec;
    ZVec unit;
};

}  // namespace

// ---------------------------------------------------------------------------
// LocalNumber

LocalNumber LocalNumber::zero(const FieldConfig& cfg) { return LocalNumber(cfg); }

LocalNumber LocalNumber::from_integer(const FieldConfig& cfg, const mpz_class& n) {
    return from_coeffs(cfg, {mpq_class(n)});
}

LocalNumber LocalNumber::from_rational(const FieldConfig& cfg, const mpq_class& r) { return from_coeffs(cfg, {r}); }

LocalNumber LocalNumber::from_coeffs(const FieldConfig& cfg, std::vector<mpq_class> coeffs) {
    LocalNumber x(cfg);
    for (auto& c : coeffs) c.canonicalize();
    if (coeffs.size() < static_cast<std::size_t>(cfg.degree())) coeffs.resize(cfg.degree(), mpq_class(0));
    x.exact_ = reduce_mod_f(std::move(coeffs), modulus_z(cfg));
    x.kind_ = Kind::Exact;
    x.normalize_exact();
    return x;
}

LocalNumber LocalNumber::from_unit(const FieldConfig& cfg, std::int64_t valuation, std::vector<mpz_class> unit,
                                   int precision) {
    require(precision >= 1, ErrorKind::InvalidInput, "capped precision must be >= 1");
    precision = std::min(precision, cfg.precision());
    unit.resize(cfg.degree(), mpz_class(0));
    const mpz_class m = cfg.ell_pow(precision);
    unit = mod_vec(std::move(unit), m);
    const mpz_class ell(static_cast<long>(cfg.ell()));
    bool is_unit = std::any_of(unit.begin(), unit.end(), [&](const mpz_class& c) { return mod_pos(c, ell) != 0; });
    require(is_unit, ErrorKind::InvalidInput, "unit part is divisible by ell");
    LocalNumber x(cfg);
    x.kind_ = Kind::Capped;
    x.valuation_ = valuation;
    x.precision_ = precision;
    x.unit_ = std::move(unit);
    return x;
}

LocalNumber LocalNumber::lift(const Residue& r) {
    std::vector<mpq_class> c;
    for (auto v : r.coeffs()) c.emplace_back(static_cast<long>(v));
    return from_coeffs(r.config(), std::move(c));
}

LocalNumber LocalNumber::ell_power(const FieldConfig& cfg, std::int64_t k) {
    mpq_class r(cfg.ell_pow(k < 0 ? -k : k));
    if (k < 0) r = 1 / r;
    return from_rational(cfg, r);
}

void LocalNumber::normalize_exact() {
    std::int64_t v = kInfinity;
    for (const auto& c : exact_) v = std::min(v, val_q(c, cfg_.ell()));
    if (v == kInfinity) {
        kind_ = Kind::Zero;
        exact_.clear();
    }
    valuation_ = v;
}

std::int64_t LocalNumber::relative_precision() const { return kind_ == Kind::Capped ? precision_ : kInfinity; }

const std::vector<mpq_class>& LocalNumber::exact_coeffs() const {
    require(kind_ == Kind::Exact, ErrorKind::InvalidInput, "not an exact nonzero number");
    return exact_;
}

std::vector<mpz_class> LocalNumber::unit_mod(int k) const {
    require(kind_ != Kind::Zero, ErrorKind::InvalidInput, "zero has no unit part");
    const mpz_class m = cfg_.ell_pow(k);
    if (kind_ == Kind::Capped) {
        require(k <= precision_, ErrorKind::InsufficientPrecision, "unit requested beyond known digits");
        return mod_vec(unit_, m);
    }
    ZVec out(exact_.size());
    const mpq_class scale = valuation_ >= 0 ? mpq_class(1, 1) / mpq_class(cfg_.ell_pow(valuation_))
                                            : mpq_class(cfg_.ell_pow(-valuation_));
    for (std::size_t i = 0; i < exact_.size(); ++i) {
        mpq_class c = exact_[i] * scale;
        c.canonicalize();
        mpz_class den_inv;
        mpz_class den = c.get_den();
        if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0 && m != 1)
            fail(ErrorKind::InvalidInput, "denominator not invertible modulo ell^k");
        out[i] = mod_pos(c.get_num() * den_inv, m);
    }
    return out;
}

LocalNumber LocalNumber::to_capped(int k) const {
    if (kind_ == Kind::Zero) return *this;
    k = std::min<int>(k, cfg_.precision());
    if (kind_ == Kind::Capped) k = std::min(k, precision_);
    return from_unit(cfg_, valuation_, unit_mod(k), k);
}

namespace {

Raw to_raw(const LocalNumber& x) {
    const int k = static_cast<int>(std::min<std::int64_t>(x.relative_precision(), x.config().precision()));
    return Raw{x.valuation(), k, x.unit_mod(k)};
}

/// Sum of two capped numbers; nullopt-like flag when all digits cancel.
struct RawSum {
    bool cancelled;
    Raw value;
};

RawSum raw_add(const FieldConfig& cfg, const Raw& a, const Raw& b) {
    const std::int64_t v = std::min(a.val, b.val);
    const std::int64_t abs = std::min(a.val + a.prec, b.val + b.prec);
    const int k = static_cast<int>(abs - v);
    const mpz_class m = cfg.ell_pow(k);
    ZVec s(a.unit.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        mpz_class t = 0;
        if (a.val - v < k) t += cfg.ell_pow(a.val - v) * a.unit[i];
        if (b.val - v < k) t += cfg.ell_pow(b.val - v) * b.unit[i];
        s[i] = mod_pos(t, m);
    }
    if (all_zero_z(s)) return {true, Raw{abs, 0, {}}};
    std::int64_t shift = kInfinity;
    for (const auto& c : s)
        if (c != 0) shift = std::min(shift, val_z(c, cfg.ell()));
    const mpz_class div = cfg.ell_pow(shift);
    for (auto& c : s) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
    const int prec = static_cast<int>(k - shift);
    return {false, Raw{v + shift, prec, mod_vec(std::move(s), cfg.ell_pow(prec))}};
}

}  // namespace

LocalNumber operator+(const LocalNumber& a, const LocalNumber& b) {
    require_same_config(a.cfg_, b.cfg_);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_exact() && b.is_exact()) {
        std::vector<mpq_class> c(a.exact_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.exact_[i] + b.exact_[i];
        LocalNumber r(a.cfg_);
        r.exact_ = std::move(c);
        r.kind_ = LocalNumber::Kind::Exact;
        r.normalize_exact();
        return r;
    }
    Raw ra = to_raw(a), rb = to_raw(b);
    RawSum s = raw_add(a.cfg_, ra, rb);
    if (s.cancelled) {
        // Operands with the same valuation and precision whose digits cancel,
        // e.g. x + (-x), sum to an exact zero.
        if (ra.val == rb.val && ra.prec == rb.prec) return LocalNumber::zero(a.cfg_);
        fail(ErrorKind::PrecisionLoss, "cancellation exhausted all known digits (absolute precision " +
                                           std::to_string(s.value.val) + ")");
    }
    return LocalNumber::from_unit(a.cfg_, s.value.val, std::move(s.value.unit), s.value.prec);
}

LocalNumber LocalNumber::operator-() const {
    if (kind_ == Kind::Zero) return *this;
    LocalNumber r = *this;
    if (kind_ == Kind::Exact) {
        for (auto& c : r.exact_) c = -c;
    } else {
        const mpz_class m = cfg_.ell_pow(precision_);
        for (auto& c : r.unit_) c = mod_pos(-c, m);
    }
    return r;
}

LocalNumber operator-(const LocalNumber& a, const LocalNumber& b) { return a + (-b); }

LocalNumber operator*(const LocalNumber& a, const LocalNumber& b) {
    require_same_config(a.cfg_, b.cfg_);
    if (a.is_zero() || b.is_zero()) return LocalNumber::zero(a.cfg_);
    const auto fz = modulus_z(a.cfg_);
    if (a.is_exact() && b.is_exact()) {
        LocalNumber r(a.cfg_);
        r.exact_ = mul_mod_f(a.exact_, b.exact_, fz);
        r.kind_ = LocalNumber::Kind::Exact;
        r.normalize_exact();
        return r;
    }
    Raw ra = to_raw(a), rb = to_raw(b);
    const int k = std::min(ra.prec, rb.prec);
    const mpz_class m = a.cfg_.ell_pow(k);
    ZVec u = mod_vec(mul_mod_f(mod_vec(ra.unit, m), mod_vec(rb.unit, m), fz), m);
    return LocalNumber::from_unit(a.cfg_, ra.val + rb.val, std::move(u), k);
}

LocalNumber LocalNumber::inv() const {
    require(kind_ != Kind::Zero, ErrorKind::InvalidInput, "division by exact zero");
    const auto fz = modulus_z(cfg_);
    if (kind_ == Kind::Exact) {
        LocalNumber r(cfg_);
        r.exact_ = inverse_mod_f(exact_, fz);
        r.kind_ = Kind::Exact;
        r.normalize_exact();
        return r;
    }
    return from_unit(cfg_, -valuation_, unit_inverse(unit_, precision_, cfg_, fz), precision_);
}

LocalNumber operator/(const LocalNumber& a, const LocalNumber& b) { return a * b.inv(); }

LocalNumber LocalNumber::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    LocalNumber result = one(cfg_), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

Residue LocalNumber::reduce() const {
    if (kind_ == Kind::Zero) return Residue(cfg_, {});
    require(valuation_ >= 0, ErrorKind::NotIntegral,
            "cannot reduce a number of valuation " + std::to_string(valuation_));
    if (valuation_ > 0) return Residue(cfg_, {});
    auto u = unit_mod(1);
    std::vector<std::int64_t> c;
    for (auto& x : u) c.push_back(x.get_si());
    return Residue(cfg_, std::move(c));
}

bool LocalNumber::identical(const LocalNumber& o) const {
    if (!(cfg_ == o.cfg_) || kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Zero: return true;
        case Kind::Exact: return exact_ == o.exact_;
        case Kind::Capped: return valuation_ == o.valuation_ && precision_ == o.precision_ && unit_ == o.unit_;
    }
    return false;
}

bool LocalNumber::agrees_with(const LocalNumber& o) const {
    require_same_config(cfg_, o.cfg_);
    if (is_exact() && o.is_exact()) return is_zero() ? o.is_zero() : (!o.is_zero() && exact_ == o.exact_);
    if (is_zero() || o.is_zero()) return false;
    Raw a = to_raw(*this), b = to_raw(-o);
    return raw_add(cfg_, a, b).cancelled;
}

bool LocalNumber::is_one() const {
    if (kind_ == Kind::Zero) return false;
    if (kind_ == Kind::Exact) {
        if (exact_[0] != 1) return false;
        return std::all_of(exact_.begin() + 1, exact_.end(), [](const mpq_class& c) { return c == 0; });
    }
    if (valuation_ != 0) return false;
    if (unit_[0] != 1) return false;
    return std::all_of(unit_.begin() + 1, unit_.end(), [](const mpz_class& c) { return c == 0; });
}

mpq_class LocalNumber::to_rational() const {
    if (kind_ == Kind::Zero) return 0;
    require(kind_ == Kind::Exact, ErrorKind::InvalidInput, "capped number has no exact rational value");
    for (std::size_t i = 1; i < exact_.size(); ++i)
        require(exact_[i] == 0, ErrorKind::InvalidInput, "number does not lie in Q");
    return exact_[0];
}

std::string LocalNumber::to_string() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Zero: return "0";
        case Kind::Exact: {
            if (cfg_.degree() == 1) return exact_[0].get_str();
            bool first = true;
            for (std::size_t i = 0; i < exact_.size(); ++i) {
                if (exact_[i] == 0) continue;
                if (!first) os << " + ";
                first = false;
                os << "(" << exact_[i].get_str() << ")";
                if (i >= 1) os << "*a";
                if (i >= 2) os << "^" << i;
            }
            return os.str();
        }
        case Kind::Capped: {
            os << cfg_.ell() << "^" << valuation_ << "*";
            if (unit_.size() == 1) {
                os << unit_[0].get_str();
            } else {
                os << "[";
                for (std::size_t i = 0; i < unit_.size(); ++i) os << (i ? "," : "") << unit_[i].get_str();
                os << "]";
            }
            os << " + O(" << cfg_.ell() << "^" << (valuation_ + precision_) << ")";
            return os.str();
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Polynomials, Hensel lifting, roots of unity

LocalNumber evaluate(const LocalPoly& f, const LocalNumber& x) {
    LocalNumber acc = LocalNumber::zero(x.config());
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

std::int64_t residual_valuation(const LocalPoly& f, const LocalNumber& x) {
    try {
        return evaluate(f, x).valuation();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PrecisionLoss || f.empty()) throw;
    }
    // f(x) cancelled completely: compare the non-constant part with -f_0.
    LocalNumber head = LocalNumber::zero(x.config());
    for (std::size_t i = f.size(); i-- > 1;) head = head * x + f[i];
    head = head * x;
    const LocalNumber target = -f[0];
    require(head.agrees_with(target), ErrorKind::PrecisionLoss, "cannot bound the valuation of f(x)");
    auto absolute = [](const LocalNumber& y) {
        return y.is_exact() ? kInfinity : y.valuation() + y.relative_precision();
    };
    return std::min(absolute(head), absolute(target));
}

LocalPoly derivative(const LocalPoly& f) {
    LocalPoly d;
    for (std::size_t i = 1; i < f.size(); ++i)
        d.push_back(f[i] * LocalNumber::from_integer(f[i].config(), static_cast<std::int64_t>(i)));
    return d;
}

LocalNumber hensel_root(const LocalPoly& f, const Residue& r0) {
    require(!f.empty(), ErrorKind::InvalidInput, "empty polynomial");
    const FieldConfig& cfg = r0.config();
    for (const auto& c : f) {
        require_same_config(c.config(), cfg);
        require(c.is_zero() || c.valuation() >= 0, ErrorKind::NotIntegral, "Hensel lifting needs integral coefficients");
    }
    std::size_t deg = f.size() - 1;
    while (deg > 0 && f[deg].is_zero()) --deg;
    require(deg >= 1, ErrorKind::InvalidInput, "constant polynomial has no roots");

    // Residue checks: simple root of the reduction.
    Residue fr = Residue::from_int(cfg, 0), dfr = Residue::from_int(cfg, 0);
    {
        Residue pw = Residue::from_int(cfg, 1);
        for (std::size_t i = 0; i <= deg; ++i) {
            fr = fr + f[i].reduce() * pw;
            if (i >= 1) {
                Residue pw_prev = (i == 1) ? Residue::from_int(cfg, 1) : r0.pow(static_cast<std::int64_t>(i - 1));
                dfr = dfr + f[i].reduce() * Residue::from_int(cfg, static_cast<std::int64_t>(i % cfg.ell())) * pw_prev;
            }
            pw = pw * r0;
        }
    }
    require(fr.is_zero(), ErrorKind::NoSimpleRoot, "residue " + r0.to_string() + " is not a root of the reduction");
    require(!dfr.is_zero(), ErrorKind::NoSimpleRoot, "residue " + r0.to_string() + " is a multiple root");

    if (deg == 1 && f[0].is_exact() && f[1].is_exact()) return -f[0] / f[1];

    // Working absolute precision: every coefficient must be known that far.
    std::int64_t work = cfg.precision();
    for (std::size_t i = 0; i <= deg; ++i)
        if (!f[i].is_exact()) work = std::min(work, f[i].valuation() + f[i].relative_precision());
    require(work >= 1, ErrorKind::InsufficientPrecision, "coefficients known to less than one digit");
    const int w = static_cast<int>(work);
    const mpz_class m = cfg.ell_pow(w);
    const auto fz = modulus_z(cfg);

    auto as_integral = [&](const LocalNumber& c) -> ZVec {
        if (c.is_zero() || c.valuation() >= w) return ZVec(cfg.degree(), mpz_class(0));
        const int k = static_cast<int>(w - c.valuation());
        ZVec u = c.unit_mod(k);
        const mpz_class s = cfg.ell_pow(c.valuation());
        for (auto& x : u) x = mod_pos(x * s, m);
        return u;
    };
    std::vector<ZVec> fc, dc;
    for (std::size_t i = 0; i <= deg; ++i) fc.push_back(as_integral(f[i]));
    for (std::size_t i = 1; i <= deg; ++i) {
        ZVec t = fc[i];
        for (auto& x : t) x = mod_pos(x * static_cast<long>(i), m);
        dc.push_back(std::move(t));
    }
    auto horner = [&](const std::vector<ZVec>& p, const ZVec& x) {
        ZVec acc(cfg.degree(), mpz_class(0));
        for (std::size_t i = p.size(); i-- > 0;) {
            acc = mod_vec(mul_mod_f(acc, x, fz), m);
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = mod_pos(acc[j] + p[i][j], m);
        }
        return acc;
    };

    ZVec x(cfg.degree());
    for (int i = 0; i < cfg.degree(); ++i) x[i] = static_cast<long>(r0.coeffs()[i]);
    for (int iter = 0; iter < 2 * w + 2; ++iter) {
        ZVec fx = horner(fc, x);
        if (all_zero_z(fx)) break;
        ZVec dfx = horner(dc, x);
        ZVec step = mod_vec(mul_mod_f(fx, unit_inverse(dfx, w, cfg, fz), fz), m);
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = mod_pos(x[j] - step[j], m);
    }
    require(all_zero_z(horner(fc, x)), ErrorKind::NoSimpleRoot, "Newton iteration failed to converge");

    if (all_zero_z(x)) {
        if (f[0].is_zero()) return LocalNumber::zero(cfg);
        fail(ErrorKind::PrecisionLoss, "root is zero to the working precision");
    }
    std::int64_t shift = kInfinity;
    for (const auto& c : x)
        if (c != 0) shift = std::min(shift, val_z(c, cfg.ell()));
    const mpz_class div = cfg.ell_pow(shift);
    for (auto& c : x) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
    return LocalNumber::from_unit(cfg, shift, std::move(x), static_cast<int>(w - shift));
}

std::vector<LocalNumber> pth_roots_of_unity(const FieldConfig& cfg, std::int64_t p) {
    require(is_prime(p), ErrorKind::InvalidInput, "p = " + std::to_string(p) + " is not prime");
    require(p != cfg.ell(), ErrorKind::UnsupportedDegree, "p-th roots of unity with p = ell are not unramified");
    const GaloisField& gf = cfg.residue_field();
    const std::int64_t order = gf.order() - 1;
    require(order % p == 0, ErrorKind::UnsupportedDegree,
            std::to_string(p) + " does not divide ell^d - 1 = " + std::to_string(order));
    std::vector<Residue> residues;
    const auto g = gf.pow(gf.generator(), order / p);
    for (std::int64_t k = 0; k < p; ++k) residues.push_back(Residue::from_elem(cfg, gf.pow(g, k)));
    std::sort(residues.begin(), residues.end(),
              [](const Residue& a, const Residue& b) { return canonical_compare(a, b) < 0; });

    LocalPoly f(p + 1, LocalNumber::zero(cfg));
    f[0] = LocalNumber::from_integer(cfg, -1);
    f[p] = LocalNumber::one(cfg);
    std::vector<LocalNumber> roots;
    for (const auto& r : residues) {
        if (r == Residue::from_int(cfg, 1))
            roots.push_back(LocalNumber::one(cfg));
        else
            roots.push_back(hensel_root(f, r));
    }
    return roots;
}

LocalNumber primitive_pth_root(const FieldConfig& cfg, std::int64_t p) {
    for (auto& z : pth_roots_of_unity(cfg, p))
        if (!z.is_one()) return z;
    fail(ErrorKind::UnsupportedDegree, "no primitive p-th root of unity");
}

LocalNumber sqrt_of_integer(const FieldConfig& cfg, std::int64_t q) {
    require(q > 0, ErrorKind::InvalidInput, "square root of a non-positive integer");
    require(q % cfg.ell() != 0, ErrorKind::InvalidInput, "ell divides q");
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), mpz_class(static_cast<long>(q)).get_mpz_t());
    if (root * root == q) return LocalNumber::from_integer(cfg, root);
    const GaloisField& gf = cfg.residue_field();
    const auto target = gf.from_int(q);
    std::vector<Residue> cands;
    for (std::int64_t e = 0; e < gf.order(); ++e) {
        auto el = static_cast<GaloisField::Elem>(e);
        if (gf.mul(el, el) == target) cands.push_back(Residue::from_elem(cfg, el));
    }
    require(!cands.empty(), ErrorKind::UnsupportedDegree,
            std::to_string(q) + " is not a square in the residue field; enlarge d");
    std::sort(cands.begin(), cands.end(), [](const Residue& a, const Residue& b) { return canonical_compare(a, b) < 0; });
    LocalPoly f{LocalNumber::from_integer(cfg, -q), LocalNumber::zero(cfg), LocalNumber::one(cfg)};
    return hensel_root(f, cands.front());
}

}  // namespace lcong::padic
