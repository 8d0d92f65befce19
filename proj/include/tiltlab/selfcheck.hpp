#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tiltlab/bgengine.hpp"
#include "tiltlab/chern.hpp"
#include "tiltlab/exactform.hpp"
#include "tiltlab/hyperquad.hpp"
#include "tiltlab/nsgeom.hpp"
#include "tiltlab/rational.hpp"
#include "tiltlab/stabkit.hpp"

// Randomized exact-identity suites. Every case either holds exactly or is a
// failure; there are no tolerances. The same suites back the CLI self-test
// mode and the acceptance runs.
namespace tiltlab::selfcheck {

using Rng = std::mt19937_64;

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;

    bool passed() const { return failures == 0; }
};

namespace gen {

inline long uniform(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational rand_rational(Rng& rng, long num_range = 9, long den_range = 4) {
    return Rational(Int(uniform(rng, -num_range, num_range)), Int(uniform(rng, 1, den_range)));
}

inline RationalVector rand_vector(Rng& rng, std::size_t dim, long num_range = 9,
                                  long den_range = 4) {
    RationalVector v(dim);
    for (auto& x : v) x = rand_rational(rng, num_range, den_range);
    return v;
}

inline Int ceil_of(const Rational& q) {
    Int t = numerator_of(q) / denominator_of(q);
    if (q > 0 && Rational(t) != q) t += 1;
    return t;
}

/// A valid lattice together with a class of positive self-intersection.
struct LatticeSample {
    LatticePtr lattice;
    DivisorClass positive;
};

/// Fixed seed forms per rank, mixed by random unimodular congruences; the
/// known positive vector is carried through the inverse transforms so the
/// sample never needs rejection.
inline LatticeSample sample_lattice(Rng& rng, std::size_t rank) {
    std::vector<std::vector<Rational>> g;
    RationalVector pos(rank);
    if (rank == 1) {
        g = {{Rational(uniform(rng, 1, 9))}};
        pos[0] = 1;
    } else if (rank == 2) {
        if (uniform(rng, 0, 1) == 0) {
            g = {{0, 1}, {1, 0}};
            pos = {1, 1};
        } else {
            g = {{Rational(uniform(rng, 1, 4)), 0}, {0, Rational(uniform(rng, -4, -1))}};
            pos = {1, 0};
        }
    } else {
        g.assign(rank, std::vector<Rational>(rank));
        g[0][0] = Rational(uniform(rng, 1, 4));
        for (std::size_t i = 1; i < rank; ++i) g[i][i] = Rational(uniform(rng, -4, -1));
        pos[0] = 1;
    }
    const int mixes = rank >= 2 ? static_cast<int>(uniform(rng, 0, 3)) : 0;
    for (int s = 0; s < mixes; ++s) {
        const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(rank) - 1));
        std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(rank) - 1));
        if (i == j) j = (j + 1) % rank;
        const Rational c(uniform(rng, 0, 1) == 0 ? 1 : -1);
        // congruence by T = I + c E_{ij}: column j of G gains c * column i
        for (std::size_t r = 0; r < rank; ++r) g[r][j] += c * g[r][i];
        for (std::size_t cidx = 0; cidx < rank; ++cidx) g[j][cidx] += c * g[i][cidx];
        // new coordinates of the tracked vector: x = T^{-1} y
        pos[i] -= c * pos[j];
    }
    auto lattice = make_lattice(std::move(g));
    return {lattice, DivisorClass(lattice, std::move(pos))};
}

inline ChernCharacter rand_character(Rng& rng, const LatticePtr& lattice, long rank_lo = -3,
                                     long rank_hi = 3) {
    return ChernCharacter(Int(uniform(rng, rank_lo, rank_hi)),
                          DivisorClass(lattice, rand_vector(rng, lattice->rank())),
                          rand_rational(rng));
}

}  // namespace gen

/// delta(twist(ch, B)) == delta(ch), the twist is invertible and the
/// corrected discriminant inherits the invariance.
inline SuiteResult twist_invariance_suite(Rng& rng, std::size_t cases_per_rank) {
    SuiteResult res{"twist-invariance"};
    for (std::size_t rank = 1; rank <= 3; ++rank) {
        for (std::size_t k = 0; k < cases_per_rank; ++k) {
            const auto sample = gen::sample_lattice(rng, rank);
            const ChernCharacter ch = gen::rand_character(rng, sample.lattice);
            const DivisorClass b(sample.lattice, gen::rand_vector(rng, rank));
            const ChernCharacter tw = twist_B(ch, b);
            const Rational c = gen::rand_rational(rng, 5, 2);
            ++res.cases;
            if (delta(tw) != delta(ch) || twist_B(tw, -b) != ch ||
                delta_tilde(tw, c) != delta_tilde(ch, c))
                ++res.failures;
        }
    }
    return res;
}

/// Exact three-term relation of the extension convexity identity, plus the
/// Hodge sign of the defect when the sub-objects share their slope along a
/// positive class.
inline SuiteResult convexity_identity_suite(Rng& rng, std::size_t cases) {
    SuiteResult res{"convexity-identity"};
    for (std::size_t k = 0; k < cases; ++k) {
        const std::size_t rank = 1 + k % 3;
        const auto sample = gen::sample_lattice(rng, rank);
        const Rational c = Rational(gen::uniform(rng, 0, 8));
        ChernCharacter e1 = gen::rand_character(rng, sample.lattice, 1, 4);
        ChernCharacter e2 = gen::rand_character(rng, sample.lattice, 1, 4);
        ++res.cases;
        bool ok = strss_identity(e1, e2, c).identity_holds;

        // equal-slope pair along the positive class: force ch1(E2)/r2 =
        // ch1(E1)/r1 + w with w orthogonal to it
        RationalVector h_row(rank);
        for (std::size_t i = 0; i < rank; ++i) {
            Rational acc = 0;
            for (std::size_t j = 0; j < rank; ++j)
                acc += sample.lattice->gram().at(i, j) * sample.positive.coords()[j];
            h_row[i] = acc;
        }
        const auto perp = kernel_of_linear_map({h_row}, rank);
        DivisorClass w = DivisorClass::zero(sample.lattice);
        for (const auto& basis_vec : perp)
            w += gen::rand_rational(rng, 3, 2) * DivisorClass(sample.lattice, basis_vec);
        const Rational r1(e1.ch0), r2(e2.ch0);
        const DivisorClass c2 = (r2 / r1) * e1.ch1 + r2 * w;
        const ChernCharacter e2_aligned(e2.ch0, c2, e2.ch2);
        const auto rep = strss_identity(e1, e2_aligned, c, sample.positive);
        ok = ok && rep.identity_holds && rep.slopes_match_along.value_or(false) &&
             rep.defect_nonpositive.value_or(false);
        if (!ok) ++res.failures;
    }
    return res;
}

/// Both evaluation routes of the slope-variance identity agree on random
/// profiles of up to 8 factors.
inline SuiteResult abel_identity_suite(Rng& rng, std::size_t cases) {
    SuiteResult res{"abel-summation"};
    for (std::size_t k = 0; k < cases; ++k) {
        const std::size_t m = 1 + static_cast<std::size_t>(gen::uniform(rng, 0, 7));
        std::vector<HNFactor> factors;
        for (std::size_t i = 0; i < m; ++i)
            factors.push_back({Int(gen::uniform(rng, 1, 4)), gen::rand_rational(rng, 6, 3)});
        ++res.cases;
        if (!abel_summation_check(factors).equal) ++res.failures;
    }
    return res;
}

/// Push-forward bookkeeping on blow-ups of the degree-5 model: rank and
/// H-degree are preserved, normalized coefficients satisfy
/// sum a_i^2 <= ch0 sum a_i, the generalized discriminant is invariant under
/// the normalizing twists and weakly decreases under push-forward.
inline SuiteResult pushforward_suite(Rng& rng, std::size_t cases) {
    SuiteResult res{"pushforward-ordering"};
    const SurfaceModel base = degree_d_surface_model(5);
    for (std::size_t k = 0; k < cases; ++k) {
        const std::size_t l = static_cast<std::size_t>(gen::uniform(rng, 0, 3));
        const BlowupModel bl(base, l);
        // point centers on a surface: E_i.E_j = -delta_ij, scaled by H^2 = 5
        const HypersurfaceModel hs(2, 5, l,
                                   SymmetricForm::diagonal(RationalVector(l, Rational(-5))));
        const Int r(gen::uniform(rng, 1, 4));
        RationalVector coords(bl.lattice()->rank());
        coords[0] = Rational(gen::uniform(rng, -4, 4));
        for (std::size_t i = 0; i < l; ++i)
            coords[1 + i] = Rational(gen::uniform(rng, -6, 6));  // may be far out of range
        const ChernCharacter ch(r, DivisorClass(bl.lattice(), coords), gen::rand_rational(rng));

        const auto q_of = [&](const ChernCharacter& e) {
            const auto [m, a] = bl.decompose(e.ch1);
            return blowup_discriminant(
                hs, {e.ch0, {pair(base.ample(), m), a}, e.ch2});
        };

        const ChernCharacter norm = normalize_exceptional_coefficients(bl, ch);
        const ChernCharacter push = pushforward_blowup(bl, ch);
        const auto [m, a] = bl.decompose(norm.ch1);
        Rational sum_a = 0, sum_a2 = 0;
        bool in_range = true;
        for (const auto& ai : a) {
            in_range = in_range && ai >= 0 && ai < Rational(r);
            sum_a += ai;
            sum_a2 += ai * ai;
        }
        const Rational q_push = delta_bar({Rational(5), pair(base.ample(), push.ch1), push.ch0, push.ch2});
        ++res.cases;
        const bool ok = in_range && push.ch0 == ch.ch0 &&
                        pair(bl.pullback(base.ample()), ch.ch1) == pair(base.ample(), push.ch1) &&
                        sum_a2 <= Rational(r) * sum_a && q_of(ch) == q_of(norm) &&
                        q_push <= q_of(ch);
        if (!ok) ++res.failures;
    }
    return res;
}

/// Normalized restriction data (mean slope matched, coefficients summing to
/// zero, prefix inequalities satisfied) always passes the full chain check.
inline SuiteResult restriction_chain_suite(Rng& rng, std::size_t cases) {
    SuiteResult res{"restriction-chain"};
    for (std::size_t k = 0; k < cases; ++k) {
        const std::size_t m = 1 + static_cast<std::size_t>(gen::uniform(rng, 0, 4));
        std::vector<HNFactor> factors;
        Rational next_slope = Rational(gen::uniform(rng, 0, 6));
        for (std::size_t i = 0; i < m; ++i) {
            factors.push_back({Int(gen::uniform(rng, 1, 3)), next_slope});
            next_slope -= Rational(Int(gen::uniform(rng, 1, 5)), Int(gen::uniform(rng, 1, 3)));
        }
        Rational r = 0, total = 0;
        for (const auto& f : factors) {
            r += Rational(f.rank);
            total += Rational(f.rank) * f.slope;
        }
        const Rational mean = total / r;
        const Rational d(gen::uniform(rng, 1, 9));

        std::vector<Rational> b(m), m_dot_l(m);
        Rational prev_partial = 0, run = 0;
        for (std::size_t i = 0; i < m; ++i) {
            run += Rational(factors[i].rank) * (factors[i].slope - mean);
            const Rational slack = (i + 1 == m) ? Rational(0) : Rational(gen::uniform(rng, 0, 5), 2);
            const Rational partial = run + slack;
            b[i] = (partial - prev_partial) / d;
            prev_partial = partial;
            m_dot_l[i] = Rational(factors[i].rank) * factors[i].slope - b[i] * d;
        }
        ++res.cases;
        const auto rep = restriction_chain_check({HNProfile(factors), d, b, m_dot_l}, mean);
        if (!(rep.all_partials_hold && rep.final_holds)) ++res.failures;
    }
    return res;
}

/// Hodge-index consequences on valid lattices: v^2 <= (H.v)^2 / H^2 for every
/// vector, and the contracted discriminant dominates H^2 * delta.
inline SuiteResult hodge_comparison_suite(Rng& rng, std::size_t cases) {
    SuiteResult res{"hodge-comparison"};
    for (std::size_t k = 0; k < cases; ++k) {
        const std::size_t rank = 1 + k % 3;
        const auto sample = gen::sample_lattice(rng, rank);
        const DivisorClass v(sample.lattice, gen::rand_vector(rng, rank));
        const Rational h_sq = self_intersection(sample.positive);
        const Rational hv = pair(sample.positive, v);
        const ChernCharacter ch = gen::rand_character(rng, sample.lattice, 1, 4);
        const Rational bar =
            delta_bar({h_sq, pair(sample.positive, ch.ch1), ch.ch0, ch.ch2});
        ++res.cases;
        if (!(self_intersection(v) <= hv * hv / h_sq && hodge_index_check(sample.positive, v) &&
              h_sq * delta(ch) <= bar))
            ++res.failures;
    }
    return res;
}

/// Sylvester invariance: signature is unchanged by congruence with a random
/// invertible rational matrix.
inline SuiteResult signature_congruence_suite(Rng& rng, std::size_t cases) {
    SuiteResult res{"signature-congruence"};
    for (std::size_t k = 0; k < cases; ++k) {
        const std::size_t n = 1 + static_cast<std::size_t>(gen::uniform(rng, 0, 3));
        std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                g[i][j] = gen::rand_rational(rng, 4, 2);
                g[j][i] = g[i][j];
            }
        std::vector<RationalVector> p;
        do {
            p.assign(n, RationalVector(n));
            for (auto& row : p)
                for (auto& x : row) x = Rational(gen::uniform(rng, -3, 3));
        } while (rank_of(p) != n);
        std::vector<std::vector<Rational>> conj(n, std::vector<Rational>(n));
        const SymmetricForm form(g);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) conj[i][j] = form.pairing(p[i], p[j]);
        ++res.cases;
        if (signature(form) != signature(SymmetricForm(conj))) ++res.failures;
    }
    return res;
}

namespace gen {

/// The three constant regimes used by the stability-function contract runs.
inline std::vector<SurfaceModel> regime_models() {
    std::vector<SurfaceModel> models;
    {
        // kodaira 0, C = 0
        auto lat = make_lattice({{2}});
        models.emplace_back("k3_like", 3, Kodaira::Zero, false, Int(0), Int(2),
                            DivisorClass::zero(lat), DivisorClass(lat, {1}));
    }
    {
        // quasi-elliptic, C = 2 - chi = 1
        auto lat = make_lattice({{0, 1}, {1, 0}});
        models.emplace_back("quasi_elliptic_fibration", 2, Kodaira::One, true, Int(0), Int(1),
                            DivisorClass(lat, {1, 0}), DivisorClass(lat, {1, 1}));
    }
    models.push_back(degree_d_surface_model(5));
    return models;
}

/// Random valid mock heart object at a random stability point in one of the
/// three regimes; boundary slopes and zero-discriminant factors are generated
/// on purpose so the im = 0 edge is exercised.
struct MockSample {
    StabilityPoint pt;
    MockObject obj;
};

inline MockSample sample_mock_object(Rng& rng, const std::vector<SurfaceModel>& models) {
    const SurfaceModel& model = models[static_cast<std::size_t>(uniform(rng, 0, 2))];
    const std::size_t rank = model.lattice()->rank();
    const DivisorClass h = Rational(uniform(rng, 1, 3)) * model.ample();
    const DivisorClass b(model.lattice(), rand_vector(rng, rank, 4, 2));
    StabilityPoint pt(model, h, b, 0);
    const Rational h_sq = pt.h_sq();
    const Rational hb = pt.hb();
    const Rational c = pt.c_s();

    RationalVector h_row(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < rank; ++j)
            acc += model.lattice()->gram().at(i, j) * h.coords()[j];
        h_row[i] = acc;
    }
    const auto perp = kernel_of_linear_map({h_row}, rank);
    const auto rand_perp = [&] {
        DivisorClass w = DivisorClass::zero(model.lattice());
        for (const auto& basis_vec : perp)
            w += rand_rational(rng, 2, 2) * DivisorClass(model.lattice(), basis_vec);
        return w;
    };
    const auto semistable_factor = [&](bool shifted) {
        const Int r(uniform(rng, 1, 3));
        Rational lambda = Rational(r) * hb / h_sq;
        const bool boundary = shifted && uniform(rng, 0, 2) == 0;
        if (!boundary) {
            const Rational eps = Rational(Int(uniform(rng, 1, 6)), Int(uniform(rng, 1, 3)));
            lambda += shifted ? -eps : eps;
        }
        const DivisorClass c1 = lambda * h + rand_perp();
        const Rational slack =
            uniform(rng, 0, 2) == 0 ? Rational(0) : Rational(Int(uniform(rng, 1, 8)), 2);
        const Rational ch2 =
            (self_intersection(c1) + c * Rational(r) * Rational(r)) / (2 * Rational(r)) - slack;
        return ChernCharacter(r, c1, ch2);
    };
    const auto torsion_factor = [&] {
        if (uniform(rng, 0, 1) == 0)
            return ChernCharacter(0, DivisorClass::zero(model.lattice()),
                                  Rational(uniform(rng, 1, 5)));
        const Rational lambda(Int(uniform(rng, 1, 4)), Int(uniform(rng, 1, 2)));
        return ChernCharacter(0, lambda * h + rand_perp(), rand_rational(rng));
    };

    std::vector<ChernCharacter> shifted, unshifted;
    const int nf = static_cast<int>(uniform(rng, 0, 2));
    const int nt = static_cast<int>(uniform(rng, nf == 0 ? 1 : 0, 2));
    for (int i = 0; i < nf; ++i) shifted.push_back(semistable_factor(true));
    for (int i = 0; i < nt; ++i)
        unshifted.push_back(uniform(rng, 0, 1) == 0 ? semistable_factor(false) : torsion_factor());
    return {pt, MockObject::create(pt, std::move(shifted), std::move(unshifted))};
}

}  // namespace gen

/// Stability-function contract: every valid mock object lands in the upper
/// half plane or on the negative real axis. A failure here is a genuine
/// counterexample to the construction and fails the build.
inline SuiteResult mock_object_suite(Rng& rng, std::size_t cases) {
    SuiteResult res{"stability-function-contract"};
    const auto models = gen::regime_models();
    for (std::size_t k = 0; k < cases; ++k) {
        const auto sample = gen::sample_mock_object(rng, models);
        ++res.cases;
        if (!stability_function_check(sample.obj, sample.pt).in_allowed_region) ++res.failures;
    }
    return res;
}

inline std::vector<SuiteResult> run_all(std::uint64_t seed, std::size_t scale = 1) {
    Rng rng(seed);
    std::vector<SuiteResult> out;
    out.push_back(twist_invariance_suite(rng, 100 * scale));
    out.push_back(convexity_identity_suite(rng, 300 * scale));
    out.push_back(abel_identity_suite(rng, 300 * scale));
    out.push_back(pushforward_suite(rng, 300 * scale));
    out.push_back(restriction_chain_suite(rng, 300 * scale));
    out.push_back(hodge_comparison_suite(rng, 300 * scale));
    out.push_back(signature_congruence_suite(rng, 100 * scale));
    out.push_back(mock_object_suite(rng, 500 * scale));
    return out;
}

}  // namespace tiltlab::selfcheck
