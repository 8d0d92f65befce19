#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tiltlab/exactform.hpp"
#include "tiltlab/rational.hpp"

namespace tiltlab {

/// Néron–Severi lattice: integral symmetric pairing of signature (1, rank-1, 0).
/// The signature condition is the Hodge index theorem and is enforced at
/// construction, so every downstream Hodge-type inequality is unconditional.
class NSLattice {
public:
    explicit NSLattice(SymmetricForm gram) : gram_(std::move(gram)) {
        if (gram_.dim() == 0) throw std::invalid_argument("NSLattice: rank must be positive");
        if (!gram_.all_entries_integral())
            throw std::invalid_argument("NSLattice: intersection numbers must be integers");
        const Signature sig = signature(gram_);
        if (sig != Signature{1, gram_.dim() - 1, 0})
            throw std::invalid_argument("NSLattice: pairing must have signature (1, rank-1, 0)");
    }

    std::size_t rank() const { return gram_.dim(); }
    const SymmetricForm& gram() const { return gram_; }

    friend bool operator==(const NSLattice& a, const NSLattice& b) { return a.gram_ == b.gram_; }

private:
    SymmetricForm gram_;
};

using LatticePtr = std::shared_ptr<const NSLattice>;

inline LatticePtr make_lattice(std::vector<std::vector<Rational>> gram) {
    return std::make_shared<const NSLattice>(SymmetricForm(std::move(gram)));
}

inline bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Rational divisor class in a fixed Néron–Severi lattice.
class DivisorClass {
public:
    DivisorClass(LatticePtr lattice, RationalVector coords)
        : lattice_(std::move(lattice)), coords_(std::move(coords)) {
        if (!lattice_) throw std::invalid_argument("DivisorClass: null lattice");
        if (coords_.size() != lattice_->rank())
            throw std::invalid_argument("DivisorClass: coordinate dimension mismatch");
    }

    static DivisorClass zero(LatticePtr lattice) {
        RationalVector c(lattice->rank());
        return DivisorClass(std::move(lattice), std::move(c));
    }

    const LatticePtr& lattice() const { return lattice_; }
    const RationalVector& coords() const { return coords_; }
    bool is_zero() const {
        for (const auto& x : coords_)
            if (x != 0) return false;
        return true;
    }

    DivisorClass& operator+=(const DivisorClass& rhs) {
        require_same(rhs);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& rhs) {
        require_same(rhs);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
        return *this;
    }
    DivisorClass& operator*=(const Rational& s) {
        for (auto& x : coords_) x *= s;
        return *this;
    }

    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
    friend DivisorClass operator-(DivisorClass a) {
        for (auto& x : a.coords_) x = -x;
        return a;
    }
    friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
        return same_lattice(a.lattice_, b.lattice_) && a.coords_ == b.coords_;
    }

    void require_same(const DivisorClass& rhs) const {
        if (!same_lattice(lattice_, rhs.lattice_))
            throw std::invalid_argument("DivisorClass: lattice mismatch");
    }

private:
    LatticePtr lattice_;
    RationalVector coords_;
};

/// Intersection product a.b through the lattice Gram matrix.
inline Rational pair(const DivisorClass& a, const DivisorClass& b) {
    a.require_same(b);
    return a.lattice()->gram().pairing(a.coords(), b.coords());
}

inline Rational self_intersection(const DivisorClass& a) { return pair(a, a); }

/// Hodge index statement for one vector: H.v = 0 implies v^2 <= 0. Holds for
/// every vector on a valid lattice; exposed so callers can assert it.
inline bool hodge_index_check(const DivisorClass& h, const DivisorClass& v) {
    if (self_intersection(h) <= 0) throw std::invalid_argument("hodge_index_check: H^2 must be positive");
    return pair(h, v) != 0 || self_intersection(v) <= 0;
}

enum class Kodaira { MinusInfinity, Zero, One, Two };

inline std::string to_string(Kodaira k) {
    switch (k) {
        case Kodaira::MinusInfinity: return "minus_infinity";
        case Kodaira::Zero: return "0";
        case Kodaira::One: return "1";
        case Kodaira::Two: return "2";
    }
    return "?";
}

namespace detail {
inline bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}
}  // namespace detail

/// Numerical descriptor of a smooth projective surface over a field of
/// characteristic p > 0. The characteristic is validated (quasi-elliptic
/// surfaces exist only for p in {2,3}) but deliberately enters no formula:
/// every downstream computation is characteristic independent.
///
/// K^2 and chi(O) of the minimal model are user inputs; they are not
/// determined by the lattice data.
class SurfaceModel {
public:
    SurfaceModel(std::string name, unsigned char_p, Kodaira kodaira, bool quasi_elliptic,
                 Int k2_min, Int chi_o_min, DivisorClass canonical, DivisorClass ample,
                 std::vector<DivisorClass> bd_candidates = {},
                 std::vector<DivisorClass> effective_generators = {}, bool minimal = true)
        : name_(std::move(name)),
          char_p_(char_p),
          kodaira_(kodaira),
          quasi_elliptic_(quasi_elliptic),
          k2_min_(std::move(k2_min)),
          chi_o_min_(std::move(chi_o_min)),
          canonical_(std::move(canonical)),
          ample_(std::move(ample)),
          bd_candidates_(std::move(bd_candidates)),
          effective_generators_(std::move(effective_generators)),
          minimal_(minimal) {
        if (!detail::is_prime(char_p_))
            throw std::invalid_argument("SurfaceModel: characteristic must be a prime");
        canonical_.require_same(ample_);
        if (quasi_elliptic_) {
            if (kodaira_ != Kodaira::One)
                throw std::invalid_argument("SurfaceModel: quasi-elliptic requires kodaira = 1");
            if (char_p_ != 2 && char_p_ != 3)
                throw std::invalid_argument("SurfaceModel: quasi-elliptic requires char p in {2,3}");
        }
        if (self_intersection(ample_) <= 0)
            throw std::invalid_argument("SurfaceModel: ample class must have positive self-intersection");
        if (minimal_ && self_intersection(canonical_) != Rational(k2_min_))
            throw std::invalid_argument("SurfaceModel: minimal model declared but K^2 != K2_min");
        for (auto& d : bd_candidates_) d.require_same(canonical_);
        for (auto& d : effective_generators_) d.require_same(canonical_);
    }

    const std::string& name() const { return name_; }
    unsigned char_p() const { return char_p_; }
    Kodaira kodaira() const { return kodaira_; }
    bool quasi_elliptic() const { return quasi_elliptic_; }
    const Int& k2_min() const { return k2_min_; }
    const Int& chi_o_min() const { return chi_o_min_; }
    const LatticePtr& lattice() const { return canonical_.lattice(); }
    const DivisorClass& canonical() const { return canonical_; }
    const DivisorClass& ample() const { return ample_; }
    const std::vector<DivisorClass>& bd_candidates() const { return bd_candidates_; }
    const std::vector<DivisorClass>& effective_generators() const { return effective_generators_; }
    bool minimal() const { return minimal_; }

private:
    std::string name_;
    unsigned char_p_;
    Kodaira kodaira_;
    bool quasi_elliptic_;
    Int k2_min_;
    Int chi_o_min_;
    DivisorClass canonical_;
    DivisorClass ample_;
    std::vector<DivisorClass> bd_candidates_;
    std::vector<DivisorClass> effective_generators_;
    bool minimal_;
};

struct DConstantResult {
    Rational value;
    bool used_fallback = false;  // no admissible candidate; value is 5*K2_min
};

/// The minimum of K.H over the supplied candidate classes subject to the
/// admissibility filter H^2 >= K.H. The candidate list stands in for the
/// (infinite) set of birational pull-backs of very ample divisors; when no
/// candidate is admissible the value falls back to K.(5K) = 5*K2_min, which
/// is always available on a minimal surface of general type.
inline DConstantResult d_constant(const SurfaceModel& s) {
    if (s.kodaira() != Kodaira::Two)
        throw std::invalid_argument("d_constant: defined only for kodaira dimension 2");
    std::optional<Rational> best;
    for (const auto& h : s.bd_candidates()) {
        const Rational kh = pair(s.canonical(), h);
        if (self_intersection(h) < kh) continue;
        if (!best || kh < *best) best = kh;
    }
    if (best) return {*best, false};
    if (s.k2_min() <= 0)
        throw std::invalid_argument(
            "d_constant: no admissible candidate and fallback 5*K2_min requires K2_min > 0");
    return {Rational(5 * s.k2_min()), true};
}

/// Discriminant correction constant of the birational equivalence class:
///   kodaira 2                -> d_constant - chi(O) + 2
///   kodaira 1, quasi-elliptic -> 2 - chi(O)
///   otherwise                -> 0
/// The value is returned as computed; it is not clamped to be nonnegative.
inline Rational c_constant(const SurfaceModel& s) {
    switch (s.kodaira()) {
        case Kodaira::Two:
            return d_constant(s).value - Rational(s.chi_o_min()) + 2;
        case Kodaira::One:
            if (s.quasi_elliptic()) return Rational(2 - s.chi_o_min());
            return 0;
        default:
            return 0;
    }
}

/// Closed form of the correction constant for a smooth degree-d surface in
/// P^3 (d >= 5): (5/6)d^3 - 7d^2 + (85/6)d + 2.
inline Rational hypersurface_constant(const Int& d) {
    if (d < 5) throw std::invalid_argument("hypersurface_constant: requires d >= 5");
    const Rational dd(d);
    return Rational(5, 6) * dd * dd * dd - 7 * dd * dd + Rational(85, 6) * dd + 2;
}

/// Synthesized numerical model of a smooth degree-d surface in P^3:
/// Pic = Z[H] with H^2 = d, K = (d-4)H, chi(O) = 1 + binom(d-1, 3),
/// candidate pull-backs mH for 1 <= m <= d.
inline SurfaceModel degree_d_surface_model(const Int& d, unsigned char_p = 5) {
    if (d < 5) throw std::invalid_argument("degree_d_surface_model: requires d >= 5");
    auto lattice = make_lattice({{Rational(d)}});
    const DivisorClass h(lattice, {1});
    const DivisorClass k(lattice, {Rational(d - 4)});
    std::vector<DivisorClass> candidates;
    for (Int m = 1; m <= d; ++m) candidates.emplace_back(lattice, RationalVector{Rational(m)});
    const Int k2 = (d - 4) * (d - 4) * d;
    const Int chi = 1 + binomial(d - 1, 3);
    return SurfaceModel("degree_" + d.str() + "_surface", char_p, Kodaira::Two,
                        /*quasi_elliptic=*/false, k2, chi, k, h, std::move(candidates), {h});
}

/// Constant for an n-fold cut down to a general linear-section surface with
/// the given invariants: 0 when the section has kodaira dimension <= 0,
/// otherwise 5*K^2 - chi(O) + 2 of its minimal model.
inline Rational higher_dim_constant(int kappa_fiber, const Int& k2_r, const Int& chi_r) {
    if (kappa_fiber <= 0) return 0;
    return Rational(5 * k2_r - chi_r + 2);
}

/// Blow-up of a surface model at l general points: the lattice gains an
/// orthogonal -Identity(l) exceptional block; all birational invariants are
/// carried over unchanged.
class BlowupModel {
public:
    BlowupModel(SurfaceModel base, std::size_t points) : base_(std::move(base)), points_(points) {
        const std::size_t rho = base_.lattice()->rank();
        const std::size_t n = rho + points_;
        std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < rho; ++i)
            for (std::size_t j = 0; j < rho; ++j) gram[i][j] = base_.lattice()->gram().at(i, j);
        for (std::size_t i = rho; i < n; ++i) gram[i][i] = -1;
        extended_ = make_lattice(std::move(gram));
    }

    const SurfaceModel& base() const { return base_; }
    std::size_t num_points() const { return points_; }
    const LatticePtr& lattice() const { return extended_; }

    DivisorClass pullback(const DivisorClass& d) const {
        d.require_same(base_.canonical());
        RationalVector c = d.coords();
        c.resize(extended_->rank());
        return DivisorClass(extended_, std::move(c));
    }

    DivisorClass exceptional(std::size_t i) const {
        if (i >= points_) throw std::invalid_argument("BlowupModel: exceptional index out of range");
        RationalVector c(extended_->rank());
        c[base_.lattice()->rank() + i] = 1;
        return DivisorClass(extended_, std::move(c));
    }

    /// Splits a class into its pull-back part and exceptional coefficients.
    std::pair<DivisorClass, RationalVector> decompose(const DivisorClass& d) const {
        if (!same_lattice(d.lattice(), extended_))
            throw std::invalid_argument("BlowupModel: class does not live on the blow-up lattice");
        const std::size_t rho = base_.lattice()->rank();
        RationalVector m(d.coords().begin(), d.coords().begin() + rho);
        RationalVector a(d.coords().begin() + rho, d.coords().end());
        return {DivisorClass(base_.lattice(), std::move(m)), std::move(a)};
    }

    /// The blown-up surface as a model of its own: K picks up the sum of the
    /// exceptional curves, minimal-model invariants are untouched.
    SurfaceModel as_surface() const {
        DivisorClass k = pullback(base_.canonical());
        for (std::size_t i = 0; i < points_; ++i) k += exceptional(i);
        std::vector<DivisorClass> candidates;
        candidates.reserve(base_.bd_candidates().size());
        for (const auto& c : base_.bd_candidates()) candidates.push_back(pullback(c));
        std::vector<DivisorClass> gens;
        gens.reserve(base_.effective_generators().size());
        for (const auto& g : base_.effective_generators()) gens.push_back(pullback(g));
        return SurfaceModel(base_.name() + "_blowup" + std::to_string(points_), base_.char_p(),
                            base_.kodaira(), base_.quasi_elliptic(), base_.k2_min(),
                            base_.chi_o_min(), std::move(k), pullback(base_.ample()),
                            std::move(candidates), std::move(gens),
                            /*minimal=*/points_ == 0 && base_.minimal());
    }

private:
    SurfaceModel base_;
    std::size_t points_;
    LatticePtr extended_;
};

inline BlowupModel make_blowup(const SurfaceModel& s, std::size_t points) {
    return BlowupModel(s, points);
}

}  // namespace tiltlab
