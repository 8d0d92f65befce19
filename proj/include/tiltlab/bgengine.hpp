#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tiltlab/chern.hpp"
#include "tiltlab/nsgeom.hpp"
#include "tiltlab/rational.hpp"

namespace tiltlab {

struct HNFactor {
    Int rank;        // >= 1
    Rational slope;

    friend bool operator==(const HNFactor&, const HNFactor&) = default;
};

/// Canonical Harder–Narasimhan shape: positive ranks, strictly decreasing
/// slopes. Torsion (+infinity slope) pieces are excluded here; they only
/// appear in the tilting machinery.
class HNProfile {
public:
    HNProfile() = default;
    explicit HNProfile(std::vector<HNFactor> factors) : factors_(std::move(factors)) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i].rank < 1) throw std::invalid_argument("HNProfile: ranks must be >= 1");
            if (i > 0 && factors_[i - 1].slope <= factors_[i].slope)
                throw std::invalid_argument("HNProfile: slopes must strictly decrease");
        }
    }

    const std::vector<HNFactor>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }
    std::size_t size() const { return factors_.size(); }

    Int total_rank() const {
        Int r = 0;
        for (const auto& f : factors_) r += f.rank;
        return r;
    }

private:
    std::vector<HNFactor> factors_;
};

/// Sorts by slope descending and merges equal slopes by adding ranks.
inline HNProfile hn_merge(std::vector<HNFactor> factors) {
    for (const auto& f : factors)
        if (f.rank < 1) throw std::invalid_argument("hn_merge: ranks must be >= 1");
    std::stable_sort(factors.begin(), factors.end(),
                     [](const HNFactor& a, const HNFactor& b) { return b.slope < a.slope; });
    std::vector<HNFactor> merged;
    for (auto& f : factors) {
        if (!merged.empty() && merged.back().slope == f.slope)
            merged.back().rank += f.rank;
        else
            merged.push_back(std::move(f));
    }
    return HNProfile(std::move(merged));
}

/// Cumulative (rank, degree) vertices of the profile, starting at (0,0).
/// Concave for every canonical profile.
inline std::vector<std::pair<Rational, Rational>> hn_polygon(const HNProfile& profile) {
    std::vector<std::pair<Rational, Rational>> vertices{{0, 0}};
    Rational r = 0, d = 0;
    for (const auto& f : profile.factors()) {
        r += Rational(f.rank);
        d += Rational(f.rank) * f.slope;
        vertices.emplace_back(r, d);
    }
    return vertices;
}

struct BGReport {
    Rational value;     // delta + C ch0^2
    bool holds;         // value >= 0
    Rational c_used;
};

/// Necessary-condition check for the corrected discriminant inequality.
/// holds = false certifies that no slope-semistable torsion-free sheaf has
/// this character; holds = true certifies consistency only, never
/// semistability.
inline BGReport check_bg(const ChernCharacter& ch, const SurfaceModel& s) {
    if (ch.ch0 <= 0) throw std::invalid_argument("check_bg: requires ch0 > 0");
    const Rational c = c_constant(s);
    const Rational value = delta_tilde(ch, c);
    return {value, value >= 0, c};
}

struct ConvexityReport {
    Rational lhs;        // corrected discriminant of the extension, over its rank
    Rational rhs_sum;    // sum of the two sub-object terms
    Rational defect;     // (r1 r2 / r) * (ch1/r1 - ch1/r2)^2
    bool identity_holds; // lhs == rhs_sum - defect (exact; always true)
    // Set when a polarization was supplied: whether L.(ch1/r1 - ch1/r2) = 0,
    // and in that case whether defect <= 0 (Hodge index).
    std::optional<bool> slopes_match_along;
    std::optional<bool> defect_nonpositive;
};

/// Exact three-term relation for an extension of torsion-free classes:
///   D(E)/r = D(E1)/r1 + D(E2)/r2 - (r1 r2 / r) (ch1(E1)/r1 - ch1(E2)/r2)^2
/// with D the corrected discriminant for the constant c. When the two
/// sub-objects have equal slope along a supplied nef class, the defect term
/// is nonpositive by the Hodge index theorem and the relation becomes the
/// convexity inequality.
inline ConvexityReport strss_identity(const ChernCharacter& e1, const ChernCharacter& e2,
                                      const Rational& c,
                                      const std::optional<DivisorClass>& along = std::nullopt) {
    if (e1.ch0 <= 0 || e2.ch0 <= 0) throw std::invalid_argument("strss_identity: ranks must be positive");
    const ChernCharacter e = e1 + e2;
    const Rational r1(e1.ch0), r2(e2.ch0), r(e.ch0);
    ConvexityReport rep{delta_tilde(e, c) / r,
                        delta_tilde(e1, c) / r1 + delta_tilde(e2, c) / r2,
                        0, false, std::nullopt, std::nullopt};
    const DivisorClass diff = (Rational(1) / r1) * e1.ch1 - (Rational(1) / r2) * e2.ch1;
    rep.defect = (r1 * r2 / r) * self_intersection(diff);
    rep.identity_holds = (rep.lhs == rep.rhs_sum - rep.defect);
    if (along) {
        rep.slopes_match_along = (pair(*along, diff) == 0);
        if (*rep.slopes_match_along) rep.defect_nonpositive = (rep.defect <= 0);
    }
    return rep;
}

/// Restriction bound: sum_{i<j} r_i r_j (mu_i - mu_j)^2 <= L^2 * corrected
/// discriminant. Both sides evaluated exactly.
inline bool check_restriction_bound(const HNProfile& profile, const Rational& l2,
                                    const Rational& delta_tilde_value) {
    if (l2 <= 0) throw std::invalid_argument("check_restriction_bound: L^2 must be positive");
    const auto& fs = profile.factors();
    Rational lhs = 0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
            const Rational d = fs[i].slope - fs[j].slope;
            lhs += Rational(fs[i].rank) * Rational(fs[j].rank) * d * d;
        }
    return lhs <= l2 * delta_tilde_value;
}

struct AbelReport {
    Rational lhs;         // sum r_i mu_i^2 - r mubar^2
    Rational rhs;         // sum_{i<j} (r_i r_j / r)(mu_i - mu_j)^2
    Rational abel_route;  // partial-sum form of the same quantity
    bool equal;
};

/// Verifies the two evaluation routes of the slope-variance identity:
///   sum r_i mu_i^2 - r mubar^2
///     = sum_{i<j} (r_i r_j / r)(mu_i - mu_j)^2
///     = sum_i ( sum_{j<=i} r_j (mu_j - mubar) ) (mu_i - mu_{i+1}),
/// where the trailing slope is taken as 0; the last partial sum vanishes, so
/// that convention is immaterial. Exact for every input.
inline AbelReport abel_summation_check(const std::vector<HNFactor>& factors) {
    if (factors.empty()) throw std::invalid_argument("abel_summation_check: empty profile");
    Rational r = 0, total_deg = 0;
    for (const auto& f : factors) {
        if (f.rank < 1) throw std::invalid_argument("abel_summation_check: ranks must be >= 1");
        r += Rational(f.rank);
        total_deg += Rational(f.rank) * f.slope;
    }
    const Rational mean = total_deg / r;

    Rational lhs = -r * mean * mean;
    for (const auto& f : factors) lhs += Rational(f.rank) * f.slope * f.slope;

    Rational rhs = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            const Rational d = factors[i].slope - factors[j].slope;
            rhs += Rational(factors[i].rank) * Rational(factors[j].rank) / r * d * d;
        }

    Rational abel = 0, partial = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        partial += Rational(factors[i].rank) * (factors[i].slope - mean);
        const Rational next = (i + 1 < factors.size()) ? factors[i + 1].slope : Rational(0);
        abel += partial * (factors[i].slope - next);
    }

    return {lhs, rhs, abel, lhs == rhs && rhs == abel};
}

/// Data of a restriction to a general pencil member: HN factors of the
/// restricted sheaf together with the pencil degree d = L^2, the averaged
/// exceptional coefficients b_i, and the base-degrees M_i.L. Consistency
/// means r_i mu_i = M_i.L + b_i d for every i.
struct RestrictionData {
    HNProfile factors;
    Rational l2;
    std::vector<Rational> b;
    std::vector<Rational> m_dot_l;
};

struct ChainReport {
    std::vector<bool> partial_holds;  // sum_{j<=i} b_j d >= sum_{j<=i} r_j (mu_j - mu_E)
    bool all_partials_hold = true;
    Rational final_lhs;               // sum_i d b_i mu_i
    Rational final_rhs;               // sum_{i<j} (r_i r_j / r)(mu_i - mu_j)^2
    bool final_holds = false;
};

/// Replays the partial-sum inequality chain behind the restriction theorem:
/// every prefix inequality is checked exactly, and the concluding bound
/// sum d b_i mu_i >= sum_{i<j} (r_i r_j / r)(mu_i - mu_j)^2 is evaluated on
/// both sides.
inline ChainReport restriction_chain_check(const RestrictionData& data, const Rational& mu_e) {
    const auto& fs = data.factors.factors();
    if (data.b.size() != fs.size() || data.m_dot_l.size() != fs.size())
        throw std::invalid_argument("restriction_chain_check: list lengths disagree");
    if (data.l2 <= 0) throw std::invalid_argument("restriction_chain_check: L^2 must be positive");
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (Rational(fs[i].rank) * fs[i].slope != data.m_dot_l[i] + data.b[i] * data.l2)
            throw std::invalid_argument(
                "restriction_chain_check: inconsistent data (r_i mu_i != M_i.L + b_i d)");

    ChainReport rep;
    Rational sum_b = 0, sum_r_mu = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        sum_b += data.b[i] * data.l2;
        sum_r_mu += Rational(fs[i].rank) * (fs[i].slope - mu_e);
        const bool ok = sum_b >= sum_r_mu;
        rep.partial_holds.push_back(ok);
        rep.all_partials_hold = rep.all_partials_hold && ok;
    }

    rep.final_lhs = 0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        rep.final_lhs += data.l2 * data.b[i] * fs[i].slope;
    Rational r = 0;
    for (const auto& f : fs) r += Rational(f.rank);
    rep.final_rhs = 0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
            const Rational d = fs[i].slope - fs[j].slope;
            rep.final_rhs += Rational(fs[i].rank) * Rational(fs[j].rank) / r * d * d;
        }
    rep.final_holds = rep.final_lhs >= rep.final_rhs;
    return rep;
}

/// Euler pairing chi(E,E) = chi(O) ch0^2 - delta(E).
inline Rational euler_pairing_self(const ChernCharacter& ch, const Int& chi_o) {
    return Rational(chi_o) * Rational(ch.ch0) * Rational(ch.ch0) - delta(ch);
}

struct VanishingReport {
    Rational bound;   // 4 * C
    bool consistent;  // L^2 <= bound
};

/// Upper bound on L^2 for an ample L with nonvanishing H^1(L^{-1}): the
/// rank-two extension trick forces L^2 <= 4C. consistent = false means no
/// such divisor exists for this L.
inline VanishingReport kodaira_vanishing_bound(const DivisorClass& l, const SurfaceModel& s) {
    if (self_intersection(l) <= 0)
        throw std::invalid_argument("kodaira_vanishing_bound: L^2 must be positive");
    const Rational bound = 4 * c_constant(s);
    return {bound, self_intersection(l) <= bound};
}

enum class WallKind {
    Wall,        // unique t in (0,1)
    None,        // solution exists but falls outside (0,1), or no solution
    Degenerate,  // slope difference pairs to zero with both endpoints
};

struct WallResult {
    WallKind kind;
    std::optional<Rational> t;
};

/// Solves (tM + (1-t)L).(ch1F/rF - ch1E/rE) = 0 on the polarization segment.
/// Degenerate means the two classes have equal slope for every t.
inline WallResult polarization_wall(const ChernCharacter& ch_e, const ChernCharacter& ch_f,
                                    const DivisorClass& l, const DivisorClass& m) {
    if (ch_e.ch0 <= 0 || ch_f.ch0 <= 0)
        throw std::invalid_argument("polarization_wall: ranks must be positive");
    const DivisorClass diff =
        (Rational(1) / Rational(ch_f.ch0)) * ch_f.ch1 - (Rational(1) / Rational(ch_e.ch0)) * ch_e.ch1;
    const Rational l_d = pair(l, diff);
    const Rational m_d = pair(m, diff);
    if (l_d == 0 && m_d == 0) return {WallKind::Degenerate, std::nullopt};
    if (l_d == m_d) return {WallKind::None, std::nullopt};  // constant nonzero along the segment
    const Rational t = l_d / (l_d - m_d);
    if (t > 0 && t < 1) return {WallKind::Wall, t};
    return {WallKind::None, std::nullopt};
}

}  // namespace tiltlab
