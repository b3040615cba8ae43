#include "lcong/galois_field.hpp"

#include <sstream>
#include <tuple>

#include "lcong/error.hpp"

namespace lcong {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::PrecisionLoss: return "PrecisionLoss";
        case ErrorKind::NotIntegral: return "NotIntegral";
        case ErrorKind::NoSimpleRoot: return "NoSimpleRoot";
        case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
        case ErrorKind::ConfigMismatch: return "ConfigMismatch";
        case ErrorKind::NoMatching: return "NoMatching";
        case ErrorKind::NotCongruent: return "NotCongruent";
        case ErrorKind::BadSquareRoot: return "BadSquareRoot";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
        case ErrorKind::UnsupportedPoint: return "UnsupportedPoint";
        case ErrorKind::SpecMismatch: return "SpecMismatch";
        case ErrorKind::IncompleteData: return "IncompleteData";
    }
    return "Unknown";
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<std::int64_t, int> prime_power_decomposition(std::int64_t n) {
    if (n < 2) return {0, 0};
    std::int64_t p = 0;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return {n, 1};
    int f = 0;
    while (n % p == 0) {
        n /= p;
        ++f;
    }
    if (n != 1) return {0, 0};
    return {p, f};
}

std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
    require(exp >= 0, ErrorKind::InvalidInput, "negative exponent in checked_pow");
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        if (base != 0 && (r > INT64_MAX / (base < 0 ? -base : base)))
            fail(ErrorKind::TooLarge, "integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

namespace {

using ModPoly = std::vector<std::int64_t>;

std::int64_t mod(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
    while (nr != 0) {
        std::int64_t qt = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - qt * nt);
        std::tie(r, nr) = std::make_pair(nr, r - qt * nr);
    }
    return mod(t, p);
}

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly poly_mod(ModPoly a, const ModPoly& m, std::int64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::int64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        std::int64_t c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - c * m[i], p);
        trim(a);
    }
    return a;
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), m, p);
}

ModPoly poly_gcd(ModPoly a, ModPoly b, std::int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

ModPoly poly_powmod(ModPoly base, std::int64_t e, const ModPoly& m, std::int64_t p) {
    ModPoly r{1};
    base = poly_mod(base, m, p);
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::int64_t>& poly, std::int64_t p) {
    ModPoly f = poly;
    for (auto& c : f) c = mod(c, p);
    trim(f);
    if (f.size() < 2) return false;
    const int n = static_cast<int>(f.size()) - 1;
    ModPoly x{0, 1};
    ModPoly xp = x;
    for (int i = 1; i <= n / 2; ++i) {
        xp = poly_powmod(xp, p, f, p);
        ModPoly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = mod(diff[1] - 1, p);
        trim(diff);
        if (diff.empty()) return false;
        ModPoly g = poly_gcd(f, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

std::vector<std::int64_t> default_modulus(std::int64_t p, int d) {
    require(d >= 1, ErrorKind::InvalidInput, "field degree must be >= 1");
    require(is_prime(p), ErrorKind::InvalidInput, "characteristic must be prime");
    const std::int64_t count = checked_pow(p, d);
    for (std::int64_t idx = 0; idx < count; ++idx) {
        std::vector<std::int64_t> m(d + 1, 0);
        std::int64_t t = idx;
        for (int i = 0; i < d; ++i) {
            m[i] = t % p;
            t /= p;
        }
        m[d] = 1;
        if (is_irreducible_mod_p(m, p)) return m;
    }
    fail(ErrorKind::InvalidInput, "no irreducible polynomial found");
}

GaloisField::GaloisField(std::int64_t p, int f, std::vector<std::int64_t> modulus)
    : p_(p), f_(f), q_(0), modulus_(std::move(modulus)) {
    require(is_prime(p), ErrorKind::InvalidInput, "field characteristic " + std::to_string(p) + " is not prime");
    require(f >= 1, ErrorKind::InvalidInput, "field degree must be >= 1");
    q_ = checked_pow(p, f);
    require(q_ <= (std::int64_t{1} << 20), ErrorKind::TooLarge, "finite field order exceeds 2^20");
    if (modulus_.empty()) modulus_ = default_modulus(p, f);
    require(static_cast<int>(modulus_.size()) == f + 1 && modulus_.back() == 1, ErrorKind::InvalidInput,
            "modulus must be monic of degree " + std::to_string(f));
    for (auto c : modulus_)
        require(c >= 0 && c < p, ErrorKind::InvalidInput, "modulus coefficients must lie in [0, p)");
    require(is_irreducible_mod_p(modulus_, p), ErrorKind::InvalidInput, "modulus is not irreducible");

    // Search a primitive element and fill exp/log tables.
    const std::uint64_t order = static_cast<std::uint64_t>(q_ - 1);
    std::vector<std::uint64_t> prime_factors;
    {
        std::uint64_t n = order;
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                prime_factors.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1) prime_factors.push_back(n);
    }
    auto slow_mul = [&](Elem a, Elem b) {
        ModPoly x = coords(a), y = coords(b);
        return from_coords(poly_mulmod(x, y, modulus_, p_));
    };
    auto slow_pow = [&](Elem a, std::uint64_t e) {
        Elem r = 1;
        while (e > 0) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    Elem gen = 0;
    for (Elem cand = 1; cand < static_cast<Elem>(q_); ++cand) {
        bool primitive = true;
        for (auto pf : prime_factors) {
            if (slow_pow(cand, order / pf) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = cand;
            break;
        }
    }
    exp_table_.assign(order, 0);
    log_table_.assign(q_, 0);
    Elem cur = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
        exp_table_[i] = cur;
        log_table_[cur] = static_cast<std::uint32_t>(i);
        cur = slow_mul(cur, gen);
    }
}

GaloisField::Elem GaloisField::from_int(std::int64_t n) const { return static_cast<Elem>(mod(n, p_)); }

std::vector<std::int64_t> GaloisField::coords(Elem a) const {
    std::vector<std::int64_t> c(f_, 0);
    for (int i = 0; i < f_; ++i) {
        c[i] = a % p_;
        a = static_cast<Elem>(a / p_);
    }
    return c;
}

GaloisField::Elem GaloisField::from_coords(const std::vector<std::int64_t>& c) const {
    std::int64_t r = 0, w = 1;
    for (int i = 0; i < f_; ++i) {
        std::int64_t ci = i < static_cast<int>(c.size()) ? mod(c[i], p_) : 0;
        r += ci * w;
        w *= p_;
    }
    return static_cast<Elem>(r);
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem r = 0, w = 1;
    const Elem p = static_cast<Elem>(p_);
    for (int i = 0; i < f_; ++i) {
        Elem s = (a % p + b % p) % p;
        r += s * w;
        w *= p;
        a /= p;
        b /= p;
    }
    return r;
}

GaloisField::Elem GaloisField::neg(Elem a) const {
    if (p_ == 2) return a;
    Elem r = 0, w = 1;
    const Elem p = static_cast<Elem>(p_);
    for (int i = 0; i < f_; ++i) {
        Elem d = a % p;
        r += ((p - d) % p) * w;
        w *= p;
        a /= p;
    }
    return r;
}

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    const std::uint64_t order = static_cast<std::uint64_t>(q_ - 1);
    return exp_table_[(static_cast<std::uint64_t>(log_table_[a]) + log_table_[b]) % order];
}

GaloisField::Elem GaloisField::inv(Elem a) const {
    require(a != 0, ErrorKind::InvalidInput, "inverse of zero in finite field");
    const std::uint64_t order = static_cast<std::uint64_t>(q_ - 1);
    return exp_table_[(order - log_table_[a]) % order];
}

GaloisField::Elem GaloisField::pow(Elem a, std::int64_t e) const {
    if (a == 0) {
        require(e >= 0, ErrorKind::InvalidInput, "negative power of zero");
        return e == 0 ? 1 : 0;
    }
    const std::int64_t order = q_ - 1;
    std::int64_t l = (static_cast<std::int64_t>(log_table_[a]) * mod(e, order)) % order;
    return exp_table_[l];
}

std::int64_t GaloisField::trace(Elem a) const {
    Elem s = 0, x = a;
    for (int i = 0; i < f_; ++i) {
        s = add(s, x);
        x = pow(x, p_);
    }
    // The trace lies in the prime field, encoded as its constant coordinate.
    return static_cast<std::int64_t>(s);
}

std::string GaloisField::describe() const {
    std::ostringstream os;
    os << "F_" << q_ << " = F_" << p_ << "[X]/(";
    bool first = true;
    for (int i = f_; i >= 0; --i) {
        if (modulus_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || modulus_[i] != 1) os << modulus_[i];
        if (i >= 1) os << "X";
        if (i >= 2) os << "^" << i;
    }
    os << ")";
    return os.str();
}

}  // namespace lcong
