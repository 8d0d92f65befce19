#include <catch2/catch_amalgamated.hpp>

#include "tiltlab/nsgeom.hpp"

using namespace tiltlab;

namespace {

SurfaceModel quintic() { return degree_d_surface_model(5); }

SurfaceModel general_type_rank1(Int h_sq, Int k_coeff, Int chi,
                                std::vector<Rational> candidate_multiples) {
    auto lat = make_lattice({{Rational(h_sq)}});
    std::vector<DivisorClass> candidates;
    for (const auto& m : candidate_multiples) candidates.emplace_back(lat, RationalVector{m});
    const Int k2 = k_coeff * k_coeff * h_sq;
    return SurfaceModel("general_type", 7, Kodaira::Two, false, k2, chi,
                        DivisorClass(lat, {Rational(k_coeff)}), DivisorClass(lat, {1}),
                        std::move(candidates));
}

}  // namespace

TEST_CASE("NSLattice enforces the Hodge index signature") {
    CHECK_NOTHROW(make_lattice({{5}}));
    CHECK_NOTHROW(make_lattice({{0, 1}, {1, 0}}));
    CHECK_THROWS_AS(make_lattice({{-1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice({{1, 0}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice({{0, 0}, {0, -1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice({{Rational(1, 2)}}), std::invalid_argument);
}

TEST_CASE("intersection pairing") {
    auto lat5 = make_lattice({{5}});
    const DivisorClass h(lat5, {1});
    CHECK(pair(h, h) == 5);
    CHECK(pair(h, DivisorClass::zero(lat5)) == 0);

    auto hyp = make_lattice({{0, 1}, {1, 0}});
    CHECK(pair(DivisorClass(hyp, {1, 0}), DivisorClass(hyp, {0, 1})) == 1);

    CHECK_THROWS_AS(pair(h, DivisorClass(hyp, {1, 0})), std::invalid_argument);
}

TEST_CASE("hodge_index_check") {
    auto lat2 = make_lattice({{2}});
    CHECK(hodge_index_check(DivisorClass(lat2, {1}), DivisorClass(lat2, {0})));

    auto hyp = make_lattice({{0, 1}, {1, 0}});
    const DivisorClass h(hyp, {1, 1});
    CHECK(hodge_index_check(h, DivisorClass(hyp, {1, -1})));  // H.v = 0, v^2 = -2
    CHECK(hodge_index_check(h, DivisorClass(hyp, {1, 2})));   // vacuous: H.v = 3
    CHECK_THROWS_AS(hodge_index_check(DivisorClass(hyp, {1, -1}), h), std::invalid_argument);
}

TEST_CASE("SurfaceModel validation") {
    auto lat = make_lattice({{2}});
    const DivisorClass h(lat, {1});
    const DivisorClass zero = DivisorClass::zero(lat);

    CHECK_THROWS_AS(SurfaceModel("bad", 4, Kodaira::Zero, false, 0, 2, zero, h),
                    std::invalid_argument);  // characteristic not prime
    CHECK_THROWS_AS(SurfaceModel("bad", 5, Kodaira::One, true, 0, 1, zero, h),
                    std::invalid_argument);  // quasi-elliptic needs p in {2,3}
    CHECK_THROWS_AS(SurfaceModel("bad", 2, Kodaira::Two, true, 0, 1, zero, h),
                    std::invalid_argument);  // quasi-elliptic needs kodaira 1
    CHECK_THROWS_AS(SurfaceModel("bad", 2, Kodaira::Zero, false, 0, 2, zero, zero),
                    std::invalid_argument);  // ample class needs positive square
    CHECK_THROWS_AS(SurfaceModel("bad", 2, Kodaira::Zero, false, 7, 2, zero, h),
                    std::invalid_argument);  // declared minimal but K^2 != K2_min
    CHECK_NOTHROW(SurfaceModel("ok", 2, Kodaira::Zero, false, 7, 2, zero, h, {}, {}, false));
}

TEST_CASE("d_constant minimizes over admissible candidates") {
    SECTION("quintic: every multiple is admissible, minimum at m = 1") {
        std::vector<Rational> ms;
        for (int m = 1; m <= 10; ++m) ms.push_back(m);
        const auto d = d_constant(general_type_rank1(5, 1, 5, ms));
        CHECK(d.value == 5);
        CHECK_FALSE(d.used_fallback);
    }
    SECTION("degree 7 with K = 3H: admissibility forces m >= 3") {
        std::vector<Rational> ms;
        for (int m = 1; m <= 10; ++m) ms.push_back(m);
        const auto d = d_constant(general_type_rank1(7, 3, 21, ms));
        CHECK(d.value == 63);
        CHECK_FALSE(d.used_fallback);
    }
    SECTION("no candidates: falls back to 5 K2_min") {
        const auto d = d_constant(general_type_rank1(5, 1, 5, {}));
        CHECK(d.value == 25);
        CHECK(d.used_fallback);
    }
    SECTION("inadmissible candidates also fall back") {
        // K = 3H on degree 7: m in {1,2} fail the filter 7m^2 >= 21m
        const auto d = d_constant(general_type_rank1(7, 3, 21, {1, 2}));
        CHECK(d.value == Rational(5 * 63));
        CHECK(d.used_fallback);
    }
    SECTION("rejected outside kodaira dimension 2") {
        auto lat = make_lattice({{2}});
        const SurfaceModel s("k3", 2, Kodaira::Zero, false, 0, 2, DivisorClass::zero(lat),
                             DivisorClass(lat, {1}));
        CHECK_THROWS_AS(d_constant(s), std::invalid_argument);
    }
    SECTION("monotone under adding candidates") {
        std::vector<Rational> small{3, 4}, big{1, 2, 3, 4};
        const auto d_small = d_constant(general_type_rank1(5, 1, 5, small));
        const auto d_big = d_constant(general_type_rank1(5, 1, 5, big));
        CHECK(d_big.value <= d_small.value);
    }
}

TEST_CASE("c_constant across the three regimes") {
    CHECK(c_constant(quintic()) == 2);

    auto hyp = make_lattice({{0, 1}, {1, 0}});
    const SurfaceModel qe("qe", 2, Kodaira::One, true, 0, 1, DivisorClass(hyp, {1, 0}),
                          DivisorClass(hyp, {1, 1}));
    CHECK(c_constant(qe) == 1);

    const SurfaceModel nqe("elliptic", 5, Kodaira::One, false, 0, 1, DivisorClass(hyp, {1, 0}),
                           DivisorClass(hyp, {1, 1}));
    CHECK(c_constant(nqe) == 0);

    auto lat2 = make_lattice({{2}});
    const SurfaceModel k3("k3", 3, Kodaira::Zero, false, 0, 2, DivisorClass::zero(lat2),
                          DivisorClass(lat2, {1}));
    CHECK(c_constant(k3) == 0);

    const SurfaceModel ruled("ruled", 3, Kodaira::MinusInfinity, false, 8, 1,
                             DivisorClass(hyp, {-2, -2}), DivisorClass(hyp, {1, 1}));
    CHECK(c_constant(ruled) == 0);
}

TEST_CASE("c_constant is the raw formula value, never clamped") {
    // general type with large chi(O): 5 - 10 + 2 < 0 and returned as is
    CHECK(c_constant(general_type_rank1(5, 1, 10, {1})) == -3);

    auto hyp = make_lattice({{0, 1}, {1, 0}});
    const SurfaceModel qe("qe3", 3, Kodaira::One, true, 0, 3, DivisorClass(hyp, {1, 0}),
                          DivisorClass(hyp, {1, 1}));
    CHECK(c_constant(qe) == -1);
}

TEST_CASE("hypersurface closed form") {
    CHECK(hypersurface_constant(5) == 2);
    CHECK(hypersurface_constant(6) == 15);
    CHECK(hypersurface_constant(7) == 44);
    CHECK_THROWS_AS(hypersurface_constant(4), std::invalid_argument);

    SECTION("agrees with the synthesized degree-d model") {
        for (Int d = 5; d <= 20; ++d)
            CHECK(hypersurface_constant(d) == c_constant(degree_d_surface_model(d)));
    }
    SECTION("positive for d >= 5") {
        for (Int d = 5; d <= 40; ++d) CHECK(hypersurface_constant(d) > 0);
    }
}

TEST_CASE("higher dimensional constant") {
    CHECK(higher_dim_constant(-1, 10, 3) == 0);
    CHECK(higher_dim_constant(0, 10, 3) == 0);
    CHECK(higher_dim_constant(2, 5, 5) == 22);
    CHECK(higher_dim_constant(1, 1, 3) == 4);
}

TEST_CASE("blow-up lattice structure") {
    const SurfaceModel s = quintic();
    SECTION("zero points leaves the lattice unchanged") {
        const BlowupModel bl(s, 0);
        CHECK(*bl.lattice() == *s.lattice());
    }
    SECTION("two points extend by -Identity(2)") {
        const BlowupModel bl(s, 2);
        REQUIRE(bl.lattice()->rank() == 3);
        CHECK(bl.lattice()->gram().at(0, 0) == 5);
        CHECK(bl.lattice()->gram().at(1, 1) == -1);
        CHECK(bl.lattice()->gram().at(2, 2) == -1);
        CHECK(bl.lattice()->gram().at(1, 2) == 0);
        CHECK(pair(bl.exceptional(0), bl.exceptional(1)) == 0);
        CHECK(self_intersection(bl.exceptional(0)) == -1);
        CHECK(pair(bl.pullback(s.ample()), bl.exceptional(0)) == 0);
    }
    SECTION("decompose splits pull-back and exceptional parts") {
        const BlowupModel bl(s, 2);
        const DivisorClass d =
            bl.pullback(s.ample()) + Rational(3) * bl.exceptional(0) - Rational(1) * bl.exceptional(1);
        const auto [m, a] = bl.decompose(d);
        CHECK(m == s.ample());
        CHECK(a == RationalVector{3, -1});
    }
}

TEST_CASE("c_constant is a birational invariant of the model") {
    const SurfaceModel s = quintic();
    for (std::size_t l : {0u, 1u, 2u, 5u}) {
        const SurfaceModel t = make_blowup(s, l).as_surface();
        CHECK(c_constant(t) == c_constant(s));
        CHECK(self_intersection(t.canonical()) == Rational(5) - Rational(Int(l)));
    }

    auto hyp = make_lattice({{0, 1}, {1, 0}});
    const SurfaceModel qe("qe", 2, Kodaira::One, true, 0, 1, DivisorClass(hyp, {1, 0}),
                          DivisorClass(hyp, {1, 1}));
    for (std::size_t l : {0u, 1u, 3u})
        CHECK(c_constant(make_blowup(qe, l).as_surface()) == c_constant(qe));
}
