#pragma once

#include <stdexcept>
#include <utility>

#include "tiltlab/nsgeom.hpp"
#include "tiltlab/rational.hpp"

namespace tiltlab {

/// Truncated Chern character (ch0, ch1, ch2) on a surface model. ch2 is the
/// integrated degree-four component; nothing above degree four ever enters a
/// formula in this library.
struct ChernCharacter {
    Int ch0;
    DivisorClass ch1;
    Rational ch2;

    ChernCharacter(Int c0, DivisorClass c1, Rational c2)
        : ch0(std::move(c0)), ch1(std::move(c1)), ch2(std::move(c2)) {}

    friend ChernCharacter operator+(const ChernCharacter& a, const ChernCharacter& b) {
        return ChernCharacter(a.ch0 + b.ch0, a.ch1 + b.ch1, a.ch2 + b.ch2);
    }
    friend bool operator==(const ChernCharacter& a, const ChernCharacter& b) {
        return a.ch0 == b.ch0 && a.ch1 == b.ch1 && a.ch2 == b.ch2;
    }
};

/// Contracted character data of an n-fold class (n >= 2): only the numbers
/// H^n, H^{n-1}ch1, ch0 and H^{n-2}ch2 survive the contraction.
struct ReducedCharacter {
    Rational h_n;     // H^n > 0
    Rational h_ch1;   // H^{n-1}.ch1
    Int ch0;
    Rational h_ch2;   // H^{n-2}.ch2

    ReducedCharacter(Rational hn, Rational hc1, Int c0, Rational hc2)
        : h_n(std::move(hn)), h_ch1(std::move(hc1)), ch0(std::move(c0)), h_ch2(std::move(hc2)) {
        if (h_n <= 0) throw std::invalid_argument("ReducedCharacter: H^n must be positive");
    }
};

/// B-twist ch -> e^{-B}.ch. Leaves ch0 and the discriminant unchanged.
inline ChernCharacter twist_B(const ChernCharacter& ch, const DivisorClass& b) {
    ch.ch1.require_same(b);
    const Rational bb = self_intersection(b);
    return ChernCharacter(ch.ch0, ch.ch1 - Rational(ch.ch0) * b,
                          ch.ch2 - pair(b, ch.ch1) + Rational(ch.ch0) * bb / 2);
}

/// Discriminant ch1^2 - 2 ch0 ch2.
inline Rational delta(const ChernCharacter& ch) {
    return self_intersection(ch.ch1) - 2 * Rational(ch.ch0) * ch.ch2;
}

/// Corrected discriminant: delta + C ch0^2 with the surface constant C.
inline Rational delta_tilde(const ChernCharacter& ch, const Rational& c) {
    return delta(ch) + c * Rational(ch.ch0) * Rational(ch.ch0);
}

/// H-contracted discriminant (H^{n-1}ch1)^2 - 2 H^n ch0 H^{n-2}ch2.
inline Rational delta_bar(const ReducedCharacter& rc) {
    return rc.h_ch1 * rc.h_ch1 - 2 * rc.h_n * Rational(rc.ch0) * rc.h_ch2;
}

/// Slope value: a rational or +infinity (torsion classes).
class Slope {
public:
    static Slope infinity() { return Slope(true, 0); }
    explicit Slope(Rational v) : Slope(false, std::move(v)) {}

    bool is_infinite() const { return infinite_; }
    const Rational& value() const {
        if (infinite_) throw std::logic_error("Slope: +infinity has no finite value");
        return value_;
    }

    friend bool operator==(const Slope& a, const Slope& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend bool operator<(const Slope& a, const Slope& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const Slope& a, const Slope& b) { return a == b || a < b; }

private:
    Slope(bool inf, Rational v) : infinite_(inf), value_(std::move(v)) {}
    bool infinite_;
    Rational value_;
};

/// (polarization.ch1)/ch0, with the torsion convention: ch0 = 0 and
/// polarization.ch1 > 0 gives +infinity. A torsion class whose ch1 pairs
/// nonpositively is not a slope-measurable sheaf class and is rejected.
inline Slope slope(const ChernCharacter& ch, const DivisorClass& polarization) {
    if (polarization.is_zero())
        throw std::invalid_argument("slope: polarization must be numerically nontrivial");
    const Rational deg = pair(polarization, ch.ch1);
    if (ch.ch0 == 0) {
        if (deg > 0) return Slope::infinity();
        throw std::domain_error("slope: torsion class with nonpositive degree");
    }
    return Slope(deg / Rational(ch.ch0));
}

/// ch -> ch . e^{D}, the character of a twist by the line bundle O(D).
inline ChernCharacter tensor_line_bundle(const ChernCharacter& ch, const DivisorClass& d) {
    ch.ch1.require_same(d);
    const Rational dd = self_intersection(d);
    return ChernCharacter(ch.ch0, ch.ch1 + Rational(ch.ch0) * d,
                          ch.ch2 + pair(d, ch.ch1) + Rational(ch.ch0) * dd / 2);
}

/// Twists by multiples of the exceptional classes, in index order, until
/// every exceptional coefficient lies in [0, ch0). The twists commute, so the
/// result does not depend on the processing order.
inline ChernCharacter normalize_exceptional_coefficients(const BlowupModel& model,
                                                         const ChernCharacter& ch) {
    if (ch.ch0 <= 0)
        throw std::invalid_argument("normalize_exceptional_coefficients: requires ch0 > 0");
    ChernCharacter out = ch;
    const Rational r(ch.ch0);
    for (std::size_t i = 0; i < model.num_points(); ++i) {
        const auto [m, a] = model.decompose(out.ch1);
        (void)m;
        const Rational ai = a[i];
        // floor(ai / ch0) as an exact integer
        Int q = numerator_of(ai / r) / denominator_of(ai / r);
        if (ai / r < 0 && Rational(q) * r != ai) q -= 1;
        if (q != 0) out = tensor_line_bundle(out, Rational(-q) * model.exceptional(i));
    }
    return out;
}

/// Numerical class of the derived push-forward along the blow-down: with
/// ch1 = psi*M + sum a_i E_i and 0 <= a_i < ch0, the class on the base is
/// (ch0, M, ch2 + (sum a_i)/2). ch0 and H.ch1 are preserved. When
/// assume_normalized is set, out-of-range coefficients are an error instead
/// of being normalized first.
inline ChernCharacter pushforward_blowup(const BlowupModel& model, const ChernCharacter& ch,
                                         bool assume_normalized = false) {
    if (ch.ch0 <= 0) throw std::invalid_argument("pushforward_blowup: requires ch0 > 0");
    if (!same_lattice(ch.ch1.lattice(), model.lattice()))
        throw std::invalid_argument("pushforward_blowup: class does not live on the blow-up lattice");
    ChernCharacter work = ch;
    {
        const auto [m, a] = model.decompose(ch.ch1);
        (void)m;
        bool in_range = true;
        for (const auto& ai : a)
            if (ai < 0 || ai >= Rational(ch.ch0)) in_range = false;
        if (!in_range) {
            if (assume_normalized)
                throw std::invalid_argument(
                    "pushforward_blowup: exceptional coefficients outside [0, ch0)");
            work = normalize_exceptional_coefficients(model, ch);
        }
    }
    auto [m, a] = model.decompose(work.ch1);
    Rational sum_a = 0;
    for (const auto& ai : a) sum_a += ai;
    return ChernCharacter(work.ch0, std::move(m), work.ch2 + sum_a / 2);
}

}  // namespace tiltlab
