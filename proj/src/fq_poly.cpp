#include "lcong/fq_poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

#include "lcong/error.hpp"

namespace lcong::ff {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::strong_ordering poly_compare(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] <=> b[i];
    return std::strong_ordering::equal;
}

GroundField::GroundField(std::int64_t p, int f, std::vector<std::int64_t> modulus)
    : gf_(std::make_shared<const GaloisField>(p, f, std::move(modulus))) {}

Poly GroundField::add(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = gf_->add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

Poly GroundField::neg(const Poly& a) const {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = gf_->neg(a[i]);
    return r;
}

Poly GroundField::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly GroundField::mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = gf_->add(r[i + j], gf_->mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly GroundField::scale(const Poly& a, Elem c) const {
    if (c == 0) return {};
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = gf_->mul(a[i], c);
    return r;
}

std::pair<Poly, Poly> GroundField::divmod(const Poly& a, const Poly& b) const {
    require(!b.empty(), ErrorKind::InvalidInput, "polynomial division by zero");
    Poly r = a;
    if (r.size() < b.size()) return {{}, r};
    Poly q(r.size() - b.size() + 1, 0);
    const Elem lead_inv = gf_->inv(b.back());
    for (std::size_t k = q.size(); k-- > 0;) {
        const Elem c = gf_->mul(r[k + b.size() - 1], lead_inv);
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = gf_->sub(r[k + j], gf_->mul(c, b[j]));
    }
    trim(q);
    trim(r);
    return {q, r};
}

Poly GroundField::monic(const Poly& a) const {
    if (a.empty()) return a;
    return scale(a, gf_->inv(a.back()));
}

Poly GroundField::gcd(const Poly& a, const Poly& b) const {
    Poly x = a, y = b;
    while (!y.empty()) {
        Poly r = mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

std::tuple<Poly, Poly, Poly> GroundField::xgcd(const Poly& a, const Poly& b) const {
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, sub(s0, mul(q, s1)));
        t0 = std::exchange(t1, sub(t0, mul(q, t1)));
    }
    if (r0.empty()) return {r0, s0, t0};
    const Elem c = gf_->inv(r0.back());
    return {scale(r0, c), scale(s0, c), scale(t0, c)};
}

Poly GroundField::inv_mod(const Poly& a, const Poly& m) const {
    auto [g, s, t] = xgcd(mod(a, m), m);
    require(g == Poly{1}, ErrorKind::InvalidInput, "polynomial is not invertible modulo the given modulus");
    return mod(s, m);
}

Poly GroundField::powmod(const Poly& a, const mpz_class& e, const Poly& m) const {
    require(e >= 0, ErrorKind::InvalidInput, "negative exponent in powmod");
    Poly result = mod(Poly{1}, m), base = mod(a, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mod(mul(result, result), m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, base), m);
    }
    return result;
}

Poly GroundField::pow(const Poly& a, std::int64_t e) const {
    require(e >= 0, ErrorKind::InvalidInput, "negative exponent");
    Poly result{1}, base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return result;
}

Poly GroundField::derivative(const Poly& a) const {
    Poly d;
    for (std::size_t i = 1; i < a.size(); ++i)
        d.push_back(gf_->mul(a[i], gf_->from_int(static_cast<std::int64_t>(i))));
    trim(d);
    return d;
}

Elem GroundField::evaluate(const Poly& a, Elem x) const {
    Elem acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = gf_->add(gf_->mul(acc, x), a[i]);
    return acc;
}

bool GroundField::is_irreducible(const Poly& f) const {
    if (ff::degree(f) < 1) return false;
    if (ff::degree(f) == 1) return true;
    const Poly g = monic(f), t{0, 1};
    Poly h = t;
    const mpz_class q = static_cast<long>(order());
    for (std::int64_t i = 1; 2 * i <= ff::degree(g); ++i) {
        h = powmod(h, q, g);
        if (ff::degree(gcd(g, sub(h, t))) > 0) return false;
    }
    return true;
}

Poly GroundField::random_poly(int deg_below, std::uint64_t& state) const {
    Poly r(static_cast<std::size_t>(deg_below));
    for (auto& c : r) {
        // splitmix64
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        c = static_cast<Elem>(z % static_cast<std::uint64_t>(order()));
    }
    trim(r);
    return r;
}

std::vector<Poly> GroundField::split_equal_degree(const Poly& f, int d, std::uint64_t& state) const {
    const std::int64_t n = ff::degree(f);
    if (n == d) return {f};
    const std::int64_t p = characteristic();
    mpz_class qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(order()), static_cast<unsigned long>(d));
    for (;;) {
        Poly a = random_poly(static_cast<int>(n), state);
        if (ff::degree(a) < 1) continue;
        Poly b;
        if (p == 2) {
            // Absolute trace of F_{q^d} to F_2, evaluated in F_q[t]/(f).
            Poly term = a;
            b = a;
            for (std::int64_t i = 1; i < static_cast<std::int64_t>(degree()) * d; ++i) {
                term = mod(mul(term, term), f);
                b = add(b, term);
            }
        } else {
            b = sub(powmod(a, (qd - 1) / 2, f), Poly{1});
        }
        Poly g = gcd(f, b);
        if (ff::degree(g) > 0 && ff::degree(g) < n) {
            auto left = split_equal_degree(g, d, state);
            auto right = split_equal_degree(div(f, g), d, state);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

std::vector<std::pair<Poly, int>> GroundField::factor(const Poly& f_in) const {
    require(!f_in.empty(), ErrorKind::InvalidInput, "cannot factor the zero polynomial");
    const Poly f = monic(f_in);
    std::map<Poly, int, decltype([](const Poly& a, const Poly& b) { return poly_compare(a, b) < 0; })> acc;
    const std::int64_t p = characteristic();
    // x -> x^{1/p} on F_q is x -> x^{q/p}.
    const std::int64_t root_exp = order() / p;

    // Squarefree decomposition; the p-th power part is handled by recursion.
    std::vector<std::pair<Poly, int>> sqfree;
    std::function<void(const Poly&, int)> sff = [&](const Poly& g, int mult) {
        if (ff::degree(g) < 1) return;
        Poly c = gcd(g, derivative(g));
        Poly w = div(g, c);
        int i = 1;
        while (ff::degree(w) > 0) {
            Poly y = gcd(w, c);
            Poly fac = div(w, y);
            if (ff::degree(fac) > 0) sqfree.emplace_back(monic(fac), i * mult);
            w = y;
            c = div(c, y);
            ++i;
        }
        if (ff::degree(c) > 0) {
            Poly r;
            for (std::size_t k = 0; k < c.size(); k += static_cast<std::size_t>(p))
                r.push_back(gf_->pow(c[k], root_exp));
            trim(r);
            sff(monic(r), mult * static_cast<int>(p));
        }
    };
    sff(f, 1);

    std::uint64_t state = 0x5eed1234abcdULL;
    const Poly t{0, 1};
    const mpz_class q = static_cast<long>(order());
    for (const auto& [g0, mult] : sqfree) {
        Poly g = g0, h = t;
        for (int d = 1; 2 * d <= ff::degree(g); ++d) {
            h = powmod(h, q, g);
            Poly fac = gcd(g, sub(h, t));
            if (ff::degree(fac) > 0) {
                for (auto& irr : split_equal_degree(fac, d, state)) acc[monic(irr)] += mult;
                g = div(g, fac);
                h = mod(h, g);
            }
        }
        if (ff::degree(g) > 0) acc[monic(g)] += mult;
    }
    return {acc.begin(), acc.end()};
}

std::vector<Poly> GroundField::monic_irreducibles(int d, std::size_t cap) const {
    require(d >= 1, ErrorKind::InvalidInput, "degree must be >= 1");
    const std::int64_t q = order();
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= q;
        require(count <= static_cast<std::int64_t>(cap), ErrorKind::TooLarge, "too many candidate polynomials");
    }
    std::vector<Poly> out;
    for (std::int64_t n = 0; n < count; ++n) {
        Poly f(static_cast<std::size_t>(d) + 1);
        std::int64_t m = n;
        for (int i = 0; i < d; ++i) {
            f[i] = static_cast<Elem>(m % q);
            m /= q;
        }
        f[d] = 1;
        if (is_irreducible(f)) out.push_back(std::move(f));
    }
    return out;
}

std::string GroundField::to_string(const Poly& a, const std::string& var) const {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        const bool unit = a[i] == 1;
        if (i == 0 || !unit) os << a[i];
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace lcong::ff
