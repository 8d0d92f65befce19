#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tiltlab/bgengine.hpp"
#include "tiltlab/charge.hpp"
#include "tiltlab/chern.hpp"
#include "tiltlab/exactform.hpp"
#include "tiltlab/nsgeom.hpp"
#include "tiltlab/rational.hpp"

namespace tiltlab {

/// One candidate stability condition: a surface model, an ample class H, an
/// arbitrary rational class B, the discriminant constant of the model and a
/// nonnegative effective-divisor constant. H and B are restricted to
/// rational classes so that every charge value stays exact.
class StabilityPoint {
public:
    StabilityPoint(SurfaceModel model, DivisorClass h, DivisorClass b, Rational c_h,
                   std::optional<Rational> c_s_override = std::nullopt)
        : model_(std::move(model)), h_(std::move(h)), b_(std::move(b)), c_h_(std::move(c_h)) {
        h_.require_same(model_.canonical());
        b_.require_same(model_.canonical());
        h_sq_ = self_intersection(h_);
        if (h_sq_ <= 0) throw std::invalid_argument("StabilityPoint: H^2 must be positive");
        if (c_h_ < 0) throw std::invalid_argument("StabilityPoint: C_H must be nonnegative");
        c_s_ = c_s_override ? *c_s_override : c_constant(model_);
    }

    const SurfaceModel& model() const { return model_; }
    const DivisorClass& h() const { return h_; }
    const DivisorClass& b() const { return b_; }
    const Rational& c_s() const { return c_s_; }
    const Rational& c_h() const { return c_h_; }
    const Rational& h_sq() const { return h_sq_; }
    Rational hb() const { return pair(h_, b_); }

private:
    SurfaceModel model_;
    DivisorClass h_;
    DivisorClass b_;
    Rational c_h_;
    Rational c_s_;
    Rational h_sq_;
};

/// Central charge Z = -ch2^B + (C/(2H^2) + 1/2) H^2 ch0^B + i H.ch1^B.
inline Charge central_charge(const StabilityPoint& pt, const ChernCharacter& ch) {
    const ChernCharacter tw = twist_B(ch, pt.b());
    const Rational re =
        -tw.ch2 + (pt.c_s() / (2 * pt.h_sq()) + Rational(1, 2)) * pt.h_sq() * Rational(tw.ch0);
    return {re, pair(pt.h(), tw.ch1)};
}

/// Coefficient rows of the central charge as linear functionals on
/// Q^{rank+2} with coordinates (ch0, ch1-coordinates, ch2). Row 0 is the
/// real part, row 1 the imaginary part.
inline std::array<RationalVector, 2> central_charge_rows(const StabilityPoint& pt) {
    const std::size_t rho = pt.model().lattice()->rank();
    const SymmetricForm& gram = pt.model().lattice()->gram();
    RationalVector re(rho + 2), im(rho + 2);
    const Rational b_sq = self_intersection(pt.b());
    re[0] = (pt.c_s() + pt.h_sq() - b_sq) / 2;
    im[0] = -pt.hb();
    for (std::size_t i = 0; i < rho; ++i) {
        Rational hb_i = 0, bb_i = 0;
        for (std::size_t j = 0; j < rho; ++j) {
            hb_i += gram.at(i, j) * pt.h().coords()[j];
            bb_i += gram.at(i, j) * pt.b().coords()[j];
        }
        re[1 + i] = bb_i;
        im[1 + i] = hb_i;
    }
    re[rho + 1] = -1;
    return {std::move(re), std::move(im)};
}

enum class HeartSide { T, F, BoundaryF };

inline std::string to_string(HeartSide s) {
    switch (s) {
        case HeartSide::T: return "T";
        case HeartSide::F: return "F";
        case HeartSide::BoundaryF: return "boundary-F";
    }
    return "?";
}

/// Torsion-pair side of a declared-semistable class: torsion or slope above
/// H.B lands in T, slope at most H.B lands in F (boundary-F at equality).
inline HeartSide classify_torsion_pair(const ChernCharacter& ch, const StabilityPoint& pt) {
    if (ch.ch0 < 0) throw std::invalid_argument("classify_torsion_pair: negative rank");
    if (ch.ch0 == 0) return HeartSide::T;
    const Rational deg = pair(pt.h(), ch.ch1);
    const Rational threshold = pt.hb() * Rational(ch.ch0);
    if (deg > threshold) return HeartSide::T;
    return deg == threshold ? HeartSide::BoundaryF : HeartSide::F;
}

/// Numerical stand-in for an object of the tilted heart: a list of
/// declared-semistable characters sitting in the shifted part (slope <= H.B)
/// and a list sitting in the unshifted part (torsion, or slope > H.B).
class MockObject {
public:
    static MockObject create(const StabilityPoint& pt, std::vector<ChernCharacter> shifted,
                             std::vector<ChernCharacter> unshifted) {
        MockObject obj(std::move(shifted), std::move(unshifted));
        obj.validate(pt);
        return obj;
    }

    const std::vector<ChernCharacter>& shifted_factors() const { return shifted_; }
    const std::vector<ChernCharacter>& unshifted_factors() const { return unshifted_; }

    /// Checks every construction invariant against the given point; throws on
    /// the first violation.
    void validate(const StabilityPoint& pt) const {
        if (shifted_.empty() && unshifted_.empty())
            throw std::invalid_argument("MockObject: the zero object is excluded");
        const Rational c = pt.c_s();
        for (const auto& ch : shifted_) {
            if (ch.ch0 <= 0)
                throw std::invalid_argument("MockObject: shifted factors must have positive rank");
            const HeartSide side = classify_torsion_pair(ch, pt);
            if (side == HeartSide::T)
                throw std::invalid_argument("MockObject: shifted factor has slope above H.B");
            if (delta_tilde(ch, c) < 0)
                throw std::invalid_argument(
                    "MockObject: declared-semistable factor violates the discriminant bound");
        }
        for (const auto& ch : unshifted_) {
            if (ch.ch0 < 0) throw std::invalid_argument("MockObject: negative rank factor");
            if (ch.ch0 == 0) {
                const Rational deg = pair(pt.h(), ch.ch1);
                const bool pointlike = ch.ch1.is_zero() && ch.ch2 > 0;
                if (!pointlike && deg <= 0)
                    throw std::invalid_argument(
                        "MockObject: torsion factor must have positive degree or be point-like");
            } else {
                if (classify_torsion_pair(ch, pt) != HeartSide::T)
                    throw std::invalid_argument("MockObject: unshifted factor has slope at most H.B");
                if (delta_tilde(ch, c) < 0)
                    throw std::invalid_argument(
                        "MockObject: declared-semistable factor violates the discriminant bound");
            }
        }
    }

private:
    MockObject(std::vector<ChernCharacter> shifted, std::vector<ChernCharacter> unshifted)
        : shifted_(std::move(shifted)), unshifted_(std::move(unshifted)) {}

    std::vector<ChernCharacter> shifted_;
    std::vector<ChernCharacter> unshifted_;
};

struct StabilityFunctionReport {
    Charge z;
    bool in_allowed_region;  // im > 0, or im = 0 and re < 0
};

/// Charge of a mock heart object: unshifted factors count positively, the
/// shift negates the shifted ones. Under the object invariants the value must
/// land in the upper half plane or on the negative real axis; a violation is
/// a counterexample candidate, not an input error.
inline StabilityFunctionReport stability_function_check(const MockObject& obj,
                                                        const StabilityPoint& pt) {
    obj.validate(pt);
    Charge z{0, 0};
    for (const auto& ch : obj.unshifted_factors()) z = z + central_charge(pt, ch);
    for (const auto& ch : obj.shifted_factors()) z = z - central_charge(pt, ch);
    const bool allowed = z.im > 0 || (z.im == 0 && z.re < 0);
    return {z, allowed};
}

enum class BoundaryVerdict {
    Certified,               // every chain link holds and re(Z) > 0
    NotApplicable,           // a comparison link fails; the class is outside the chain's reach
    CounterexampleCandidate  // links hold but re(Z) <= 0 (must not happen)
};

struct BoundaryTrace {
    Rational discriminant;       // delta
    Rational corrected;          // delta + C ch0^2
    Rational hb_discriminant;    // (H.ch1^B)^2 - 2 H^2 ch0^B ch2^B
    Rational middle;             // hb_discriminant + C ch0^2
    Rational factored_middle;    // ch0^B (-2 H^2 ch2^B + C ch0^B)
    bool link_nonneg;            // 0 <= corrected
    bool link_chain;             // corrected <= middle
    bool link_scaled;            // discriminant <= hb_discriminant / H^2 (Hodge form)
    Rational re_z;
    bool re_positive;
    BoundaryVerdict verdict;
    std::string note;
};

/// Audited trace of the boundary positivity chain for a class with
/// H.ch1^B = 0 and nonnegative corrected discriminant:
///   0 <= delta + C ch0^2 <= hb-discriminant + C ch0^2 = ch0^B(-2H^2 ch2^B + C ch0^B),
/// concluding re(Z) > 0. Every link is evaluated exactly and reported; the
/// scaled Hodge comparison delta <= hb-discriminant / H^2 is reported
/// alongside because the middle link can fail for classes that no actual
/// sheaf realizes, and the trace is then the whole point of the call.
inline BoundaryTrace boundary_positivity_check(const ChernCharacter& ch,
                                               const StabilityPoint& pt) {
    if (ch.ch0 <= 0) throw std::invalid_argument("boundary_positivity_check: requires ch0 > 0");
    const ChernCharacter tw = twist_B(ch, pt.b());
    if (pair(pt.h(), tw.ch1) != 0)
        throw std::invalid_argument("boundary_positivity_check: requires H.ch1^B = 0");
    const Rational c = pt.c_s();
    BoundaryTrace tr{};
    tr.discriminant = delta(ch);
    tr.corrected = delta_tilde(ch, c);
    if (tr.corrected < 0)
        throw std::invalid_argument("boundary_positivity_check: corrected discriminant is negative");
    const Rational r(tw.ch0);
    tr.hb_discriminant = -2 * pt.h_sq() * r * tw.ch2;  // (H.ch1^B)^2 term vanishes here
    tr.middle = tr.hb_discriminant + c * r * r;
    tr.factored_middle = r * (-2 * pt.h_sq() * tw.ch2 + c * r);
    tr.link_nonneg = tr.corrected >= 0;
    tr.link_chain = tr.corrected <= tr.middle;
    tr.link_scaled = tr.discriminant <= tr.hb_discriminant / pt.h_sq();
    tr.re_z = central_charge(pt, ch).re;
    tr.re_positive = tr.re_z > 0;
    if (tr.link_nonneg && tr.link_chain) {
        tr.verdict = tr.re_positive ? BoundaryVerdict::Certified : BoundaryVerdict::CounterexampleCandidate;
        if (!tr.re_positive) tr.note = "chain holds but re(Z) <= 0";
    } else {
        tr.verdict = BoundaryVerdict::NotApplicable;
        tr.note =
            "comparison link fails: the contracted discriminant falls below the corrected one, "
            "so no slope-semistable sheaf realizes this class at the boundary";
    }
    return tr;
}

/// Machine-checked support data for a stability point.
struct SupportCertificate {
    std::vector<RationalVector> kernel_basis;  // basis of ker Z in (ch0, ch1, ch2) coordinates
    Signature restricted_signature;
    Definiteness verdict;
};

/// Support quadratic form delta + C_S ch0^2 + C_H (H.ch1^B)^2 as a symmetric
/// form on Q^{rank+2} with coordinates (ch0, ch1-coordinates, ch2).
inline SymmetricForm support_quadratic_form(const StabilityPoint& pt) {
    const std::size_t rho = pt.model().lattice()->rank();
    const std::size_t dim = rho + 2;
    std::vector<std::vector<Rational>> q(dim, std::vector<Rational>(dim));
    const SymmetricForm& gram = pt.model().lattice()->gram();
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < rho; ++j) q[1 + i][1 + j] = gram.at(i, j);
    q[0][dim - 1] -= 1;  // -2 ch0 ch2, split across the two symmetric slots
    q[dim - 1][0] -= 1;
    q[0][0] += pt.c_s();
    const RationalVector w = central_charge_rows(pt)[1];  // H.ch1^B as a row
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) q[i][j] += pt.c_h() * w[i] * w[j];
    return SymmetricForm(std::move(q));
}

/// Builds the charge kernel inside (ch0, ch1, ch2)-space, restricts the
/// support form to it and classifies. The kernel always has dimension rank;
/// the expected verdict on a valid model is negative definite.
inline SupportCertificate support_property_check(const StabilityPoint& pt) {
    const std::size_t rho = pt.model().lattice()->rank();
    const auto rows = central_charge_rows(pt);
    auto kernel = kernel_of_linear_map({rows[0], rows[1]}, rho + 2);
    const SymmetricForm q = support_quadratic_form(pt);
    const Signature sig = signature(restrict_to_subspace(q, kernel));
    const Definiteness verdict = definiteness_on_subspace(q, kernel);
    return {std::move(kernel), sig, verdict};
}

struct SupportConstantEstimate {
    Rational value;
    bool from_generators;  // false: no generators were supplied, the value 0 is unverified
};

/// Smallest C_H with C_H (H.D)^2 + D^2 >= 0 across the supplied effective
/// generators. Valid for every class in their nonnegative span; with no
/// generators the estimate degenerates to 0 and is flagged unverified.
inline SupportConstantEstimate estimate_support_constant(const SurfaceModel& s) {
    const auto& gens = s.effective_generators();
    if (gens.empty()) return {0, false};
    Rational best = 0;
    for (const auto& d : gens) {
        const Rational hd = pair(s.ample(), d);
        if (hd <= 0)
            throw std::invalid_argument("estimate_support_constant: generator with H.D <= 0");
        const Rational need = -self_intersection(d) / (hd * hd);
        if (need > best) best = need;
    }
    return {best, true};
}

}  // namespace tiltlab
