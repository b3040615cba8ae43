#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lcong/padic.hpp"

namespace lcong::satake {

using padic::FieldConfig;
using padic::LocalNumber;
using padic::Residue;

/// A representative (mu_1, ..., mu_n) of an unramified Satake parameter at a
/// place with residual cardinality q.
class SatakeParam {
public:
    SatakeParam(std::int64_t q, std::vector<LocalNumber> mu);

    std::size_t rank() const { return mu_.size(); }
    std::int64_t q() const { return q_; }
    const std::vector<LocalNumber>& mu() const { return mu_; }
    const FieldConfig& config() const { return mu_.front().config(); }

    /// Same parameter with the entries permuted: result[j] = mu[perm[j]].
    SatakeParam permuted(const std::vector<std::size_t>& perm) const;

private:
    std::int64_t q_;
    std::vector<LocalNumber> mu_;
};

/// Monic X^n + c_1 X^{n-1} + ... + c_n, stored as (c_1, ..., c_n).
struct CharPoly {
    std::vector<LocalNumber> coeffs;

    std::size_t degree() const { return coeffs.size(); }
    const FieldConfig& config() const { return coeffs.front().config(); }
};

/// Reduction of a CharPoly: residues of (1, c_1, ..., c_n).
struct ReducedPoly {
    std::vector<Residue> coeffs;

    bool operator==(const ReducedPoly& o) const { return coeffs == o.coeffs; }
};

/// e_0 .. e_n in one pass.
std::vector<LocalNumber> elementary_symmetric_all(const SatakeParam& s);
LocalNumber elementary_symmetric(const SatakeParam& s, std::size_t r);

CharPoly char_poly(const SatakeParam& s);
bool is_integral(const CharPoly& p);
ReducedPoly reduce_char_poly(const CharPoly& p);
bool congruent(const CharPoly& p1, const CharPoly& p2);

/// prod (X - r_i) over the residue field, as (1, c_1, ..., c_n).
ReducedPoly residue_poly_from_roots(const std::vector<Residue>& roots);

/// sigma with reduce(mu1[j]) == reduce(mu2[sigma[j]]); ties are broken by the
/// canonical order of residues, then by index.
std::vector<std::size_t> match_residues(const SatakeParam& s1, const SatakeParam& s2);

/// h_k(mu) from e_1..e_n via sum_{i=0..k} (-1)^i e_i h_{k-i} = 0.
LocalNumber complete_homogeneous(const SatakeParam& s, std::int64_t k);
/// h_0 .. h_kmax.
std::vector<LocalNumber> complete_homogeneous_all(const SatakeParam& s, std::int64_t kmax);

}  // namespace lcong::satake
