#include "lcong/cyclo.hpp"

#include "lcong/galois_field.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lcong {

using padic::LocalNumber;
using padic::Residue;

std::int64_t difference_valuation(const LocalNumber& a, const LocalNumber& b) {
    try {
        return (a - b).valuation();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PrecisionLoss) throw;
    }
    auto absolute = [](const LocalNumber& x) { return x.is_exact() ? padic::kInfinity : x.valuation() + x.relative_precision(); };
    return std::min(absolute(a), absolute(b));
}

LocalNumber default_sqrt_q(const padic::FieldConfig& cfg, std::int64_t q) {
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(q))));
    while (r * r > q) --r;
    while ((r + 1) * (r + 1) <= q) ++r;
    if (r * r == q) return LocalNumber::from_integer(cfg, r);
    return padic::sqrt_of_integer(cfg, q);
}

CycloValue::CycloValue(padic::FieldConfig cfg, std::int64_t p, std::int64_t q) : cfg_(std::move(cfg)), p_(p), q_(q) {
    require(p >= 2 && is_prime(p), ErrorKind::InvalidInput, "cyclotomic order must be prime");
    for (auto& slot : c_) slot.assign(static_cast<std::size_t>(p), LocalNumber::zero(cfg_));
}

CycloValue CycloValue::term(const LocalNumber& coef, std::int64_t p, std::int64_t q, std::int64_t zeta_exp,
                            std::int64_t half_exp) {
    CycloValue v(coef.config(), p, q);
    if (coef.is_zero()) return v;
    // q^{h/2} = q^{floor(h/2)} sqrt(q)^{h mod 2}.
    const std::int64_t s = ((half_exp % 2) + 2) % 2;
    const std::int64_t whole = (half_exp - s) / 2;
    LocalNumber c = coef;
    if (whole != 0) c = c * LocalNumber::from_integer(coef.config(), q).pow(whole);
    const std::int64_t j = ((zeta_exp % p) + p) % p;
    v.c_[s][static_cast<std::size_t>(j)] = c;
    v.fold();
    return v;
}

void CycloValue::fold() {
    if (p_ != 2) return;
    for (auto& slot : c_) {
        if (slot[1].is_zero()) continue;
        slot[0] = slot[0] - slot[1];
        slot[1] = LocalNumber::zero(cfg_);
    }
}

CycloValue CycloValue::operator-() const {
    CycloValue r = *this;
    for (auto& slot : r.c_)
        for (auto& x : slot) x = -x;
    return r;
}

CycloValue operator+(const CycloValue& a, const CycloValue& b) {
    padic::require_same_config(a.cfg_, b.cfg_);
    require(a.p_ == b.p_ && a.q_ == b.q_, ErrorKind::ConfigMismatch, "cyclotomic values over different (p, q)");
    CycloValue r = a;
    for (int s = 0; s < 2; ++s)
        for (std::size_t j = 0; j < r.c_[s].size(); ++j) r.c_[s][j] = r.c_[s][j] + b.c_[s][j];
    return r;
}

CycloValue operator-(const CycloValue& a, const CycloValue& b) { return a + (-b); }

CycloValue CycloValue::scaled(const LocalNumber& x) const {
    CycloValue r = *this;
    for (auto& slot : r.c_)
        for (auto& c : slot) c = c * x;
    return r;
}

CycloValue CycloValue::times_zeta(std::int64_t k) const {
    CycloValue r(cfg_, p_, q_);
    k = ((k % p_) + p_) % p_;
    for (int s = 0; s < 2; ++s)
        for (std::int64_t j = 0; j < p_; ++j) r.c_[s][static_cast<std::size_t>((j + k) % p_)] = c_[s][static_cast<std::size_t>(j)];
    r.fold();
    return r;
}

bool CycloValue::is_zero() const {
    for (const auto& slot : c_)
        for (const auto& x : slot)
            if (!x.identical(slot[0]) && !(x - slot[0]).is_zero()) return false;
    return true;
}

std::pair<std::size_t, std::int64_t> CycloValue::best_shift(int s) const {
    const auto& slot = c_[s];
    std::pair<std::size_t, std::int64_t> best{0, std::numeric_limits<std::int64_t>::min()};
    for (std::size_t j0 = 0; j0 < slot.size(); ++j0) {
        std::int64_t m = padic::kInfinity;
        for (std::size_t j = 0; j < slot.size(); ++j)
            if (j != j0) m = std::min(m, difference_valuation(slot[j], slot[j0]));
        if (m > best.second) best = {j0, m};
    }
    return best;
}

std::int64_t CycloValue::valuation_bound() const {
    if (is_zero()) return padic::kInfinity;
    std::int64_t m = padic::kInfinity;
    for (int s = 0; s < 2; ++s) m = std::min(m, best_shift(s).second);
    return m;
}

LocalNumber CycloValue::resolve_sqrt_q(const std::optional<LocalNumber>& sqrt_q) const {
    if (!sqrt_q) return default_sqrt_q(cfg_, q_);
    padic::require_same_config(sqrt_q->config(), cfg_);
    require(!sqrt_q->is_zero() && ((*sqrt_q) * (*sqrt_q)).agrees_with(LocalNumber::from_integer(cfg_, q_)),
            ErrorKind::BadSquareRoot, "supplied square root does not square to q = " + std::to_string(q_));
    return *sqrt_q;
}

namespace {

bool slot_is_zero(const std::vector<LocalNumber>& slot) {
    for (const auto& x : slot)
        if (!(x - slot[0]).is_zero()) return false;
    return true;
}

}  // namespace

LocalNumber CycloValue::embed(const std::optional<LocalNumber>& sqrt_q) const {
    if (is_zero()) return LocalNumber::zero(cfg_);
    LocalNumber total = LocalNumber::zero(cfg_);
    std::optional<LocalNumber> zeta;
    for (int s = 0; s < 2; ++s) {
        if (slot_is_zero(c_[s])) continue;
        bool tail_constant = true;
        for (std::size_t j = 2; j < c_[s].size() && tail_constant; ++j) tail_constant = (c_[s][j] - c_[s][1]).is_zero();
        // With c_1 = ... = c_{p-1} the value is c_0 - c_1 exactly.
        const std::size_t j0 = tail_constant ? 1 : best_shift(s).first;
        LocalNumber part = LocalNumber::zero(cfg_);
        for (std::size_t j = 0; j < c_[s].size(); ++j) {
            if (j == j0 || (tail_constant && j > 0)) continue;
            LocalNumber d = c_[s][j] - c_[s][j0];
            if (d.is_zero()) continue;
            if (j == 0) {
                part = part + d;
                continue;
            }
            if (!zeta) zeta = p_ == 2 ? LocalNumber::from_integer(cfg_, -1) : padic::primitive_pth_root(cfg_, p_);
            part = part + d * zeta->pow(static_cast<std::int64_t>(j));
        }
        if (p_ == 2) part = c_[s][0];
        if (s == 1) part = part * resolve_sqrt_q(sqrt_q);
        total = total + part;
    }
    return total;
}

Residue CycloValue::reduce(const std::optional<LocalNumber>& sqrt_q) const {
    if (is_zero()) return Residue::from_int(cfg_, 0);
    if (valuation_bound() < 0) {
        // The formal bound is not conclusive; decide on the actual value.
        return embed(sqrt_q).reduce();
    }
    Residue total = Residue::from_int(cfg_, 0);
    std::optional<Residue> zeta;
    for (int s = 0; s < 2; ++s) {
        if (slot_is_zero(c_[s])) continue;
        const std::size_t j0 = best_shift(s).first;
        Residue part = Residue::from_int(cfg_, 0);
        for (std::size_t j = 0; j < c_[s].size(); ++j) {
            if (j == j0 && p_ != 2) continue;
            LocalNumber d = p_ == 2 ? c_[s][j] : c_[s][j] - c_[s][j0];
            if (d.is_zero() || d.valuation() >= 1) continue;
            if (!zeta) zeta = (p_ == 2 ? LocalNumber::from_integer(cfg_, -1) : padic::primitive_pth_root(cfg_, p_)).reduce();
            part = part + d.reduce() * zeta->pow(static_cast<std::int64_t>(j));
        }
        if (s == 1) part = part * resolve_sqrt_q(sqrt_q).reduce();
        total = total + part;
    }
    return total;
}

std::string CycloValue::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int s = 0; s < 2; ++s) {
        for (std::size_t j = 0; j < c_[s].size(); ++j) {
            if (c_[s][j].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[s][j].to_string() << ")";
            if (j > 0) os << "*z^" << j;
            if (s == 1) os << "*sqrt(q)";
        }
    }
    return os.str();
}

}  // namespace lcong
