#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tiltlab/charge.hpp"
#include "tiltlab/exactform.hpp"
#include "tiltlab/rational.hpp"

namespace tiltlab {

/// Numerical model of a degree-d dimension-n hypersurface in projective
/// space, blown up along l codimension-two linear centers. Only the pairing
/// numbers of the exceptional divisors are stored: exc_gram holds the
/// already-scaled products H^n * (psi*H)^{n-2}.E_i.E_j. For a generic
/// configuration that is diag(-d * H^n) = diag(-d^2); iterated or degenerate
/// configurations may override it.
class HypersurfaceModel {
public:
    HypersurfaceModel(std::size_t n, Int d, std::size_t l)
        : HypersurfaceModel(n, d, l, SymmetricForm::diagonal(RationalVector(l, -Rational(d) * Rational(d)))) {}

    HypersurfaceModel(std::size_t n, Int d, std::size_t l, SymmetricForm exc_gram)
        : n_(n), d_(std::move(d)), l_(l), exc_gram_(std::move(exc_gram)) {
        if (n_ < 2) throw std::invalid_argument("HypersurfaceModel: dimension must be >= 2");
        if (d_ < 1) throw std::invalid_argument("HypersurfaceModel: degree must be >= 1");
        if (exc_gram_.dim() != l_)
            throw std::invalid_argument("HypersurfaceModel: exceptional Gram size must equal l");
    }

    std::size_t dimension() const { return n_; }
    const Int& degree() const { return d_; }
    std::size_t exceptionals() const { return l_; }
    Rational h_n() const { return Rational(d_); }  // H^n = d
    const SymmetricForm& exc_gram() const { return exc_gram_; }

private:
    std::size_t n_;
    Int d_;
    std::size_t l_;
    SymmetricForm exc_gram_;
};

/// Element (b, sum a_i E_i) of the rank-(1+l) lattice carrying the contracted
/// first Chern data.
struct LambdaVector {
    Rational b;
    RationalVector a;

    friend bool operator==(const LambdaVector&, const LambdaVector&) = default;
};

/// Projection of a divisor class to the contracted lattice: the pull-back
/// part collapses to its H-degree, the exceptional coefficients survive.
inline LambdaVector project_to_lambda(const HypersurfaceModel& model, Rational m_deg,
                                      RationalVector a) {
    if (a.size() != model.exceptionals())
        throw std::invalid_argument("project_to_lambda: coefficient count mismatch");
    return {std::move(m_deg), std::move(a)};
}

/// q(b, sum a_i E_i) = b^2 + H^n (psi*H)^{n-2} (sum a_i E_i)^2.
inline Rational lambda_form(const HypersurfaceModel& model, const LambdaVector& v) {
    if (v.a.size() != model.exceptionals())
        throw std::invalid_argument("lambda_form: dimension mismatch");
    return v.b * v.b + evaluate(model.exc_gram(), v.a);
}

/// Bilinear version of lambda_form.
inline Rational lambda_pairing(const HypersurfaceModel& model, const LambdaVector& u,
                               const LambdaVector& v) {
    if (u.a.size() != model.exceptionals() || v.a.size() != model.exceptionals())
        throw std::invalid_argument("lambda_pairing: dimension mismatch");
    return u.b * v.b + model.exc_gram().pairing(u.a, v.a);
}

inline Signature lambda_form_signature(const HypersurfaceModel& model) {
    const Signature exc = signature(model.exc_gram());
    return {exc.n_plus + 1, exc.n_minus, exc.n_zero};
}

/// Contracted character on the blow-up: rank, projected ch1 and the number
/// (psi*H)^{n-2}.ch2.
struct ReducedBlowupCharacter {
    Int ch0;
    LambdaVector lambda1;
    Rational h_ch2;
};

/// Generalized discriminant Q(E) = q(ch1-projection) - 2 H^n ch0 (psi*H)^{n-2}ch2.
/// With no exceptional divisors this is exactly the H-contracted discriminant
/// of the hypersurface itself.
inline Rational blowup_discriminant(const HypersurfaceModel& model,
                                    const ReducedBlowupCharacter& rc) {
    return lambda_form(model, rc.lambda1) - 2 * model.h_n() * Rational(rc.ch0) * rc.h_ch2;
}

/// Deformed pencil charge on (rank, b, a): re = -(t+1) b + fiber.a, im = rank.
/// fiber holds the pairing numbers h^{n-2} f . E_i of the pencil fiber with
/// the exceptional divisors; an empty vector means all zero.
inline Charge pencil_charge(const HypersurfaceModel& model, const Rational& t, const Int& rank,
                            const LambdaVector& v, RationalVector fiber = {}) {
    if (t < 0) throw std::invalid_argument("pencil_charge: requires t >= 0");
    if (fiber.empty()) fiber.assign(model.exceptionals(), Rational(0));
    if (fiber.size() != model.exceptionals() || v.a.size() != model.exceptionals())
        throw std::invalid_argument("pencil_charge: dimension mismatch");
    Rational re = -(t + 1) * v.b;
    for (std::size_t i = 0; i < fiber.size(); ++i) re += fiber[i] * v.a[i];
    return {re, Rational(rank)};
}

struct KernelNegativityReport {
    Signature q_signature;            // of the form on (b, a)-space
    bool signature_hyperbolic;        // q_signature == (1, l, 0)
    std::size_t kernel_dim;
    Signature restricted_signature;
    Definiteness verdict;
    bool semidefinite;
    bool definite;
};

/// Restriction of the q-form to the kernel of the deformed pencil charge.
/// The kernel lives in (rank, b, a)-space and is cut out by rank = 0 together
/// with the vanishing of the real part; the q-form ignores the rank
/// coordinate. Expected outcome on generic data with hyperbolic q-signature:
/// negative semidefinite for every t >= 0, definite for t > 0.
inline KernelNegativityReport kernel_negativity_check(const HypersurfaceModel& model,
                                                      const Rational& t,
                                                      RationalVector fiber = {}) {
    if (t < 0) throw std::invalid_argument("kernel_negativity_check: requires t >= 0");
    const std::size_t l = model.exceptionals();
    if (fiber.empty()) fiber.assign(l, Rational(0));
    if (fiber.size() != l)
        throw std::invalid_argument("kernel_negativity_check: fiber pairing dimension mismatch");

    // Coordinates (rank, b, a_1..a_l).
    const std::size_t dim = l + 2;
    RationalVector im_row(dim);
    im_row[0] = 1;
    RationalVector re_row(dim);
    re_row[1] = -(t + 1);
    for (std::size_t i = 0; i < l; ++i) re_row[2 + i] = fiber[i];
    const auto kernel = kernel_of_linear_map({im_row, re_row}, dim);

    std::vector<std::vector<Rational>> ambient(dim, std::vector<Rational>(dim));
    ambient[1][1] = 1;
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) ambient[2 + i][2 + j] = model.exc_gram().at(i, j);
    const SymmetricForm q_ambient(std::move(ambient));

    const Signature restricted = signature(restrict_to_subspace(q_ambient, kernel));
    const Definiteness verdict = definiteness_on_subspace(q_ambient, kernel);

    KernelNegativityReport rep;
    rep.q_signature = lambda_form_signature(model);
    rep.signature_hyperbolic = (rep.q_signature == Signature{1, l, 0});
    rep.kernel_dim = kernel.size();
    rep.restricted_signature = restricted;
    rep.verdict = verdict;
    rep.semidefinite = is_negative_semidefinite(verdict);
    rep.definite = (verdict == Definiteness::NegativeDefinite);
    return rep;
}

}  // namespace tiltlab
