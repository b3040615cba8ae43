#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lcong/cyclo.hpp"
#include "lcong/function_field.hpp"
#include "lcong/satake.hpp"
#include "lcong/whittaker.hpp"

/// Global Whittaker functions for GL_2 over k = F_q(t): pure tensors built from
/// per-place data, the expansion phi(g) = sum_gamma W(diag(gamma, 1) g), Fourier
/// coefficients over finite quotients of A/k, and the congruence pipeline.
namespace lcong::global {

using ff::Divisor;
using ff::GroundField;
using ff::LocalElement;
using ff::Place;
using ff::Poly;
using ff::RationalFunction;
using padic::FieldConfig;
using padic::LocalNumber;

constexpr std::size_t kDefaultCap = 200'000;

/// value on the coset pi^j * rep * (1 + p^m); rep lists the first m unit digits.
struct KirillovEntry {
    std::int64_t j = 0;
    std::int64_t m = 0;
    std::vector<Poly> rep;
    LocalNumber value;

    bool operator==(const KirillovEntry& o) const;
};

/// A compactly supported locally constant function on k_v^x.
class KirillovTable {
public:
    KirillovTable() = default;
    /// Rejects overlapping cosets and malformed representatives.
    explicit KirillovTable(std::vector<KirillovEntry> entries);

    const std::vector<KirillovEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    /// Every value has valuation >= 0.
    bool a_valued() const;
    std::optional<std::int64_t> min_valuation() const;
    std::int64_t max_level() const;
    /// Digits must be reduced for the place (degree < deg v).
    void validate(const GroundField& F, const Place& v) const;
    /// f(y) for nonzero y; zero off the support.
    LocalNumber lookup(const FieldConfig& cfg, const LocalElement& y) const;

    bool operator==(const KirillovTable& o) const;

private:
    std::vector<KirillovEntry> entries_;
};

struct Unramified {
    satake::SatakeParam satake;
};

/// Table of the Kirillov function together with omega_v(pi_v).
struct Tabulated {
    KirillovTable table;
    LocalNumber central;
};

using LocalWhittakerDatum = std::variant<Unramified, Tabulated>;

/// g_v = pi^central * n(x) * diag(y, pi^a2).
struct LocalPoint {
    LocalElement x;
    LocalElement y;
    std::int64_t a2 = 0;
    std::int64_t central = 0;

    static LocalPoint identity(const Place& v);
    /// y = pi^a1 exactly.
    static LocalPoint make(const Place& v, LocalElement x, std::int64_t a1, std::int64_t a2 = 0,
                           std::int64_t central = 0);
};

/// Places not listed carry the identity.
using MirabolicPoint = std::map<Place, LocalPoint>;

/// coef * zeta^zeta_exp * q^{half_exp / 2}, q the order of the constant field.
struct LocalValue {
    LocalNumber coef;
    std::int64_t zeta_exp = 0;
    std::int64_t half_exp = 0;
};

LocalValue local_value(const GroundField& F, const FieldConfig& cfg, const LocalWhittakerDatum& d, const Place& v,
                       const LocalPoint& pt);
LocalValue local_value(const GroundField& F, const FieldConfig& cfg, const LocalWhittakerDatum& d, const Place& v,
                       const LocalElement& x, std::int64_t a1, std::int64_t a2, std::int64_t central);

/// Explicit per-place data plus Satake rules keyed by place degree for the
/// remaining places. Infinity must be tabulated, since psi has conductor 2 there.
class GlobalWhittakerSpec {
public:
    GlobalWhittakerSpec(GroundField F, FieldConfig cfg, Place w);

    void set_place(const Place& v, LocalWhittakerDatum d);
    void set_degree_rule(std::int64_t degree, std::vector<LocalNumber> mu);
    void set_default_rule(std::vector<LocalNumber> mu);

    const GroundField& field() const { return F_; }
    const FieldConfig& config() const { return cfg_; }
    const Place& distinguished() const { return w_; }
    const std::map<Place, LocalWhittakerDatum>& places() const { return places_; }
    const std::map<std::int64_t, std::vector<LocalNumber>>& degree_rules() const { return rules_; }
    const std::optional<std::vector<LocalNumber>>& default_rule() const { return default_rule_; }

    /// IncompleteData when neither explicit data nor a rule covers v.
    LocalWhittakerDatum datum(const Place& v) const;
    std::optional<std::vector<LocalNumber>> rule_for_degree(std::int64_t degree) const;
    /// Tabulated places.
    std::vector<Place> S() const;
    /// InvalidInput on structural problems (missing infinity table, rank != 2,
    /// f_v(1) != 1 away from w, ...).
    void validate() const;

private:
    GroundField F_;
    FieldConfig cfg_;
    Place w_;
    std::map<Place, LocalWhittakerDatum> places_;
    std::map<std::int64_t, std::vector<LocalNumber>> rules_;
    std::optional<std::vector<LocalNumber>> default_rule_;
};

/// Evaluates one spec with cached Hecke data per place.
class Evaluator {
public:
    explicit Evaluator(const GlobalWhittakerSpec& spec);

    const GlobalWhittakerSpec& spec() const { return spec_; }
    LocalValue local(const Place& v, const LocalPoint& pt, const RationalFunction& gamma);
    /// W(diag(gamma, 1) g) as an exact cyclotomic value.
    CycloValue term(const RationalFunction& gamma, const MirabolicPoint& g);
    /// D with every nonzero term in L(D); nullopt when every term vanishes.
    std::optional<Divisor> support_divisor(const MirabolicPoint& g) const;
    std::vector<RationalFunction> gamma_support(const MirabolicPoint& g, std::size_t cap = kDefaultCap) const;
    CycloValue expand(const MirabolicPoint& g, std::size_t cap = kDefaultCap);
    CycloValue zero() const;

private:
    whittaker::WhittakerEvaluator& hecke(const Place& v, const satake::SatakeParam& s);

    GlobalWhittakerSpec spec_;
    std::map<Place, whittaker::WhittakerEvaluator> cache_;
};

std::vector<RationalFunction> gamma_support(const GlobalWhittakerSpec& spec, const MirabolicPoint& g,
                                            std::size_t cap = kDefaultCap);
CycloValue mirabolic_expand_exact(const GlobalWhittakerSpec& spec, const MirabolicPoint& g,
                                  std::size_t cap = kDefaultCap);
LocalNumber mirabolic_expand(const GlobalWhittakerSpec& spec, const MirabolicPoint& g,
                             const std::optional<LocalNumber>& sqrt_q = std::nullopt, std::size_t cap = kDefaultCap);

/// n(u) g for a finitely supported adele u.
MirabolicPoint translate(const GroundField& F, const MirabolicPoint& g, const ff::Adele& u);

/// U = prod p_v^{m_v} small enough that gamma U lies in ker psi for all gamma in L(D).
Divisor fourier_level(const Divisor& D);

using PhiOracle = std::function<CycloValue(const MirabolicPoint&)>;

/// Average of psi^{-1}(gamma u) phi(n(u) g) over representatives of A/(k + U).
/// Exact zero when gamma U is not inside ker psi.
CycloValue fourier_coefficient(const GroundField& F, const FieldConfig& cfg, const PhiOracle& phi,
                               const RationalFunction& gamma, const MirabolicPoint& g, const Divisor& U,
                               std::size_t cap = kDefaultCap);

/// SpecMismatch unless the specs share S, the tables and central values on S,
/// and have congruent integral Satake data everywhere off S.
void check_pipeline_compatible(const GlobalWhittakerSpec& a, const GlobalWhittakerSpec& b);

struct PointReport {
    std::size_t index = 0;
    CycloValue W1, W2, phi1, phi2;
    std::int64_t v_W1 = 0, v_W2 = 0, v_phi1 = 0, v_phi2 = 0;
    // Residues exist only for values of valuation >= 0.
    std::optional<padic::Residue> r_W1, r_W2, r_phi1, r_phi2;
    std::size_t support_size = 0;
    bool congruent = false;
};

struct PipelineReport {
    std::vector<PointReport> points;
    bool passed() const;
};

PipelineReport congruence_pipeline(const GlobalWhittakerSpec& spec1, const GlobalWhittakerSpec& spec2,
                                   const std::vector<MirabolicPoint>& samples,
                                   const std::optional<LocalNumber>& sqrt_q = std::nullopt,
                                   std::size_t cap = kDefaultCap);

/// Points with support in places of degree <= 2, |a1| <= 2, ord x >= -1 and
/// central exponents in [-1, 1]; points whose gamma support would exceed
/// max_support_degree are skipped.
std::vector<MirabolicPoint> default_sample_points(const GlobalWhittakerSpec& spec, std::uint64_t seed,
                                                  std::size_t count = 50, std::int64_t max_support_degree = 6);

/// Unramified idele class character data: chi_v(pi_v) explicitly or as
/// base^{deg v}.
struct CharacterData {
    std::optional<LocalNumber> degree_base;
    std::map<Place, LocalNumber> values;

    /// IncompleteData when v is not covered.
    LocalNumber at(const Place& v) const;
};

struct ProductCheck {
    RationalFunction y;
    LocalNumber product1, product2;
    bool ok = false;
};

struct RatioCheck {
    Place place;
    RationalFunction y;
    LocalNumber chi1, chi2, ratio;
    bool congruent = false;
};

struct CentralCharReport {
    std::vector<ProductCheck> products;
    std::vector<RatioCheck> ratios;
    bool passed() const;
};

/// Checks prod_v chi_v(y) = 1 on the samples and derives chi_w(pi_w) for each
/// w in S from a principal y with ord_w y = 1 and y a unit at the rest of S.
CentralCharReport central_char_propagate(const GroundField& F, const CharacterData& chi1, const CharacterData& chi2,
                                         const std::vector<Place>& S, const std::vector<RationalFunction>& samples);

}  // namespace lcong::global
