#include "lcong/satake.hpp"

#include <algorithm>
#include <numeric>

namespace lcong::satake {

SatakeParam::SatakeParam(std::int64_t q, std::vector<LocalNumber> mu) : q_(q), mu_(std::move(mu)) {
    require(!mu_.empty(), ErrorKind::InvalidInput, "Satake parameter needs rank >= 1");
    require(q_ >= 2 && prime_power_decomposition(q_).first != 0, ErrorKind::InvalidInput,
            "q = " + std::to_string(q_) + " is not a prime power");
    const FieldConfig& cfg = mu_.front().config();
    require(std::gcd(q_, cfg.ell()) == 1, ErrorKind::InvalidInput, "q must be prime to ell");
    for (const auto& m : mu_) {
        padic::require_same_config(m.config(), cfg);
        require(!m.is_zero(), ErrorKind::InvalidInput, "Satake parameters must be nonzero");
    }
}

SatakeParam SatakeParam::permuted(const std::vector<std::size_t>& perm) const {
    require(perm.size() == mu_.size(), ErrorKind::InvalidInput, "permutation has the wrong length");
    std::vector<LocalNumber> out;
    out.reserve(mu_.size());
    for (auto j : perm) out.push_back(mu_.at(j));
    return SatakeParam(q_, std::move(out));
}

std::vector<LocalNumber> elementary_symmetric_all(const SatakeParam& s) {
    const auto& cfg = s.config();
    const std::size_t n = s.rank();
    // Coefficients of prod (1 + mu_i T).
    std::vector<LocalNumber> e(n + 1, LocalNumber::zero(cfg));
    e[0] = LocalNumber::one(cfg);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = i + 1; r >= 1; --r) e[r] = e[r] + e[r - 1] * s.mu()[i];
    return e;
}

LocalNumber elementary_symmetric(const SatakeParam& s, std::size_t r) {
    require(r <= s.rank(), ErrorKind::InvalidInput, "r exceeds the rank");
    return elementary_symmetric_all(s)[r];
}

CharPoly char_poly(const SatakeParam& s) {
    auto e = elementary_symmetric_all(s);
    CharPoly p;
    for (std::size_t r = 1; r < e.size(); ++r) p.coeffs.push_back(r % 2 ? -e[r] : e[r]);
    return p;
}

bool is_integral(const CharPoly& p) {
    return std::all_of(p.coeffs.begin(), p.coeffs.end(),
                       [](const LocalNumber& c) { return c.is_zero() || c.valuation() >= 0; });
}

ReducedPoly reduce_char_poly(const CharPoly& p) {
    require(is_integral(p), ErrorKind::NotIntegral, "characteristic polynomial has a non-integral coefficient");
    ReducedPoly r;
    r.coeffs.push_back(Residue::from_int(p.config(), 1));
    for (const auto& c : p.coeffs) r.coeffs.push_back(c.reduce());
    return r;
}

bool congruent(const CharPoly& p1, const CharPoly& p2) {
    padic::require_same_config(p1.config(), p2.config());
    require(p1.degree() == p2.degree(), ErrorKind::InvalidInput, "characteristic polynomials of different degree");
    return reduce_char_poly(p1) == reduce_char_poly(p2);
}

ReducedPoly residue_poly_from_roots(const std::vector<Residue>& roots) {
    require(!roots.empty(), ErrorKind::InvalidInput, "no roots");
    const auto& cfg = roots.front().config();
    // Coefficients of prod (1 - r_i T) equal those of prod (X - r_i) read from the top.
    std::vector<Residue> c(roots.size() + 1, Residue::from_int(cfg, 0));
    c[0] = Residue::from_int(cfg, 1);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t r = i + 1; r >= 1; --r) c[r] = c[r] - c[r - 1] * roots[i];
    return ReducedPoly{std::move(c)};
}

std::vector<std::size_t> match_residues(const SatakeParam& s1, const SatakeParam& s2) {
    padic::require_same_config(s1.config(), s2.config());
    require(s1.rank() == s2.rank(), ErrorKind::NoMatching, "parameters of different rank");
    const std::size_t n = s1.rank();
    std::vector<Residue> r1, r2;
    for (std::size_t i = 0; i < n; ++i) {
        r1.push_back(s1.mu()[i].reduce());
        r2.push_back(s2.mu()[i].reduce());
    }
    auto sorted_order = [](const std::vector<Residue>& r) {
        std::vector<std::size_t> idx(r.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return padic::canonical_compare(r[a], r[b]) < 0; });
        return idx;
    };
    const auto o1 = sorted_order(r1), o2 = sorted_order(r2);
    std::vector<std::size_t> sigma(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (r1[o1[k]] != r2[o2[k]])
            fail(ErrorKind::NoMatching, "residue multisets differ (" + r1[o1[k]].to_string() + " vs " +
                                            r2[o2[k]].to_string() + ")");
        sigma[o1[k]] = o2[k];
    }
    return sigma;
}

std::vector<LocalNumber> complete_homogeneous_all(const SatakeParam& s, std::int64_t kmax) {
    require(kmax >= 0, ErrorKind::InvalidInput, "negative degree for h_k");
    const auto e = elementary_symmetric_all(s);
    const auto& cfg = s.config();
    const std::int64_t n = static_cast<std::int64_t>(s.rank());
    std::vector<LocalNumber> h;
    h.reserve(kmax + 1);
    h.push_back(LocalNumber::one(cfg));
    for (std::int64_t k = 1; k <= kmax; ++k) {
        LocalNumber acc = LocalNumber::zero(cfg);
        for (std::int64_t i = 1; i <= std::min(k, n); ++i) {
            LocalNumber term = e[i] * h[k - i];
            acc = (i % 2) ? acc + term : acc - term;
        }
        h.push_back(acc);
    }
    return h;
}

LocalNumber complete_homogeneous(const SatakeParam& s, std::int64_t k) { return complete_homogeneous_all(s, k)[k]; }

}  // namespace lcong::satake
