// Acceptance suite: one test case per release criterion, each printing a
// single PASS/FAIL line. Everything is exact; there are no tolerances to
// tune. Criterion 10 drives the installed CLI binary end to end.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "tiltlab/config.hpp"
#include "tiltlab/selfcheck.hpp"
#include "tiltlab/tiltlab.hpp"

using namespace tiltlab;

namespace {

void verdict_line(int n, const std::string& name, bool ok) {
    std::cout << "[acceptance] criterion " << n << " (" << name << "): " << (ok ? "PASS" : "FAIL")
              << std::endl;
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(TILTLAB_CLI_BIN) + " " + args + " 2>&1";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string config_path(const char* name) {
    return std::string(TILTLAB_CONFIG_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    FILE* f = fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), got);
    fclose(f);
    return out;
}

SurfaceModel hyperbolic_model() {
    auto lat = make_lattice({{0, 1}, {1, 0}});
    return SurfaceModel("hyperbolic_rank2", 3, Kodaira::MinusInfinity, false, 8, 1,
                        DivisorClass(lat, {-2, -2}), DivisorClass(lat, {1, 1}), {},
                        {DivisorClass(lat, {1, 0}), DivisorClass(lat, {0, 1})});
}

SurfaceModel quasi_elliptic_model() {
    auto lat = make_lattice({{0, 1}, {1, 0}});
    return SurfaceModel("quasi_elliptic", 2, Kodaira::One, true, 0, 1, DivisorClass(lat, {1, 0}),
                        DivisorClass(lat, {1, 1}));
}

SurfaceModel k3_model() {
    auto lat = make_lattice({{2}});
    return SurfaceModel("k3_like", 3, Kodaira::Zero, false, 0, 2, DivisorClass::zero(lat),
                        DivisorClass(lat, {1}));
}

}  // namespace

TEST_CASE("criterion 1: closed form equals the synthesized model constant") {
    bool ok = true;
    for (Int d = 5; d <= 20; ++d)
        ok = ok && hypersurface_constant(d) == c_constant(degree_d_surface_model(d));
    ok = ok && hypersurface_constant(5) == 2 && hypersurface_constant(6) == 15 &&
         hypersurface_constant(7) == 44;
    verdict_line(1, "constant-cross-check", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 2: twist invariance of the discriminant") {
    selfcheck::Rng rng(2026);
    const auto res = selfcheck::twist_invariance_suite(rng, 1000);  // per rank 1..3
    const bool ok = res.cases == 3000 && res.failures == 0;
    verdict_line(2, "twist-invariance", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 3: extension convexity identity and Hodge defect sign") {
    selfcheck::Rng rng(2027);
    const auto res = selfcheck::convexity_identity_suite(rng, 1000);
    const bool ok = res.cases == 1000 && res.failures == 0;
    verdict_line(3, "convexity-identity", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 4: both routes of the slope-variance identity agree") {
    selfcheck::Rng rng(2028);
    const auto res = selfcheck::abel_identity_suite(rng, 1000);
    const bool ok = res.cases == 1000 && res.failures == 0;
    verdict_line(4, "abel-summation", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 5: blow-up invariance and push-forward ordering") {
    bool ok = true;
    for (const SurfaceModel& s : {degree_d_surface_model(5), quasi_elliptic_model(), k3_model()})
        for (std::size_t l : {0u, 1u, 2u, 5u})
            ok = ok && c_constant(make_blowup(s, l).as_surface()) == c_constant(s);
    selfcheck::Rng rng(2029);
    const auto res = selfcheck::pushforward_suite(rng, 1000);
    ok = ok && res.cases == 1000 && res.failures == 0;
    verdict_line(5, "blowup-invariance", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 6: hyperbolic signatures and kernel negativity") {
    bool ok = true;
    for (std::size_t n : {3u, 4u})
        for (Int d : {1, 3, 5})
            for (std::size_t l = 0; l <= 4; ++l) {
                const HypersurfaceModel m(n, d, l);
                ok = ok && lambda_form_signature(m) == Signature{1, l, 0};
                for (const Rational& t :
                     {Rational(0), Rational(1, 2), Rational(1), Rational(7, 3)}) {
                    const auto rep = kernel_negativity_check(m, t);
                    ok = ok && rep.semidefinite;
                    if (t > 0) ok = ok && rep.definite;
                    // pencil-style pairing on the last exceptional: the t = 0
                    // boundary is exactly semidefinite
                    if (l >= 1) {
                        RationalVector fiber(l, Rational(0));
                        fiber[l - 1] = -Rational(d);
                        const auto inc = kernel_negativity_check(m, t, fiber);
                        ok = ok && inc.semidefinite;
                        if (t > 0) ok = ok && inc.definite;
                        if (t == 0) ok = ok && !inc.definite;
                    }
                }
            }
    verdict_line(6, "kernel-negativity", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 7: support property across a 5x5 grid") {
    bool ok = true;
    for (const SurfaceModel& s : {degree_d_surface_model(5), hyperbolic_model()}) {
        const Rational c_h = estimate_support_constant(s).value;
        const std::size_t rho = s.lattice()->rank();
        for (int i = 1; i <= 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const DivisorClass h = Rational(i) * s.ample();
                const DivisorClass b = Rational(2 * j - 4, 10) * s.ample();
                const SupportCertificate cert =
                    support_property_check(StabilityPoint(s, h, b, c_h));
                ok = ok && cert.verdict == Definiteness::NegativeDefinite;
                ok = ok && cert.kernel_basis.size() == rho;
                ok = ok && cert.restricted_signature == Signature{0, rho, 0};
            }
    }
    verdict_line(7, "support-property-grid", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 8: stability-function contract on random mock objects") {
    selfcheck::Rng rng(2030);
    const auto res = selfcheck::mock_object_suite(rng, 10000);
    const bool ok = res.cases == 10000 && res.failures == 0;
    verdict_line(8, "stability-function-contract", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 9: vanishing-counterexample bound") {
    bool ok = true;
    const SurfaceModel quintic = degree_d_surface_model(5);
    const auto r1 = kodaira_vanishing_bound(quintic.ample(), quintic);
    ok = ok && r1.bound == 8 && r1.consistent;
    const auto r2 = kodaira_vanishing_bound(Rational(2) * quintic.ample(), quintic);
    ok = ok && !r2.consistent;
    for (const SurfaceModel& s : {k3_model(), hyperbolic_model()})
        for (int scale = 1; scale <= 3; ++scale)
            ok = ok && !kodaira_vanishing_bound(Rational(scale) * s.ample(), s).consistent;
    verdict_line(9, "vanishing-bound", ok);
    REQUIRE(ok);
}

TEST_CASE("criterion 10: CLI determinism and config round-trip") {
    bool ok = true;
    setenv("TILTLAB_SEED", "7", 1);

    const std::string quintic = config_path("quintic.json");
    const std::string hyperbolic = config_path("hyperbolic_rank2.json");
    const std::string qe = config_path("quasi_elliptic.json");
    const std::string k3 = config_path("k3_like.json");

    struct Invocation {
        std::string args;
        std::string expect_substring;
        int expect_exit = 0;
    };
    const std::vector<Invocation> documented = {
        {"constant --config " + quintic, "c_constant: 2"},
        {"constant --config " + quintic, "closed_form_crosscheck: match"},
        {"constant --config " + qe, "c_constant: 1"},
        {"constant --config " + k3, "c_constant: 0"},
        {"constant --config " + quintic + " --format json", "\"c_constant\": \"2\""},
        {"check --config " + quintic + " --ch0 2 --ch1 0 --ch2 1", "verdict: admissible"},
        {"check --config " + k3 + " --ch0 2 --ch1 0 --ch2 1", "cannot be slope-semistable"},
        {"check --config " + quintic + " --ch0 1 --ch1 0 --ch2 0 --B 1", "delta_tilde: 2"},
        {"wall --config " + hyperbolic +
             " --E-ch0 2 --E-ch1 1,0 --F-ch0 1 --F-ch1 0,1 --L 1,1 --M 1,3 --steps 5",
         "wall: t=1/2"},
        {"wall --config " + hyperbolic +
             " --E-ch0 2 --E-ch1 1,0 --F-ch0 1 --F-ch1 0,1 --L 1,1 --M 2,1",
         "wall: none"},
        {"charge --config " + quintic + " --ch0 0 --ch1 0 --ch2 1", "Z_re: -1"},
        {"charge --config " + quintic + " --ch0 1 --ch1 0 --ch2 1", "Z_re: 5/2"},
        {"heart --config " + quintic + " --ch0 1 --ch1 1 --ch2 0", "side: T"},
        {"heart --config " + quintic + " --ch0 1 --ch1 0 --ch2 0", "side: boundary-F"},
        {"support --config " + quintic, "verdict: negative-definite"},
        {"support --config " + quintic + " --sweep 3 --jobs 2", "H_scale,B_offset"},
        {"support --config " + quintic + " --sweep 5 --jobs 4", "5,2/5,1,(0, 1, 0),negative-definite"},
        {"hyper qsig --n 3 --d 3 --l 1", "q_signature: (1, 1, 0)"},
        {"hyper qeval --n 3 --d 3 --l 1 --b 3 --a 1", "q_value: 0"},
        {"hyper kernel --n 3 --d 3 --l 1 --t 1", "verdict: negative-definite"},
        {"hyper kernel --n 3 --d 3 --l 1 --t 0 --fiber -3", "definite: no"},
        {"hyper Q --n 2 --d 5 --l 0 --ch0 2 --b 5 --hch2 1", "Q_value: 5"},
        {"selftest", "selftest: PASS"},
        // input errors exit with code 2
        {"support --config " + quintic + " --H 0", "input error", 2},
        {"check --config " + quintic + " --ch0 2 --ch1 1,2 --ch2 0", "input error", 2},
        {"constant --config " + quintic + " --format csv", "input error", 2},
        {"constant --config " + config_path("missing.json"), "config error", 2},
    };

    for (const auto& inv : documented) {
        const RunResult first = run_cli(inv.args);
        const RunResult second = run_cli(inv.args);
        const bool bytes_equal = first.output == second.output;
        const bool exit_ok = first.exit_code == inv.expect_exit && second.exit_code == inv.expect_exit;
        const bool has_text = first.output.find(inv.expect_substring) != std::string::npos;
        if (!(bytes_equal && exit_ok && has_text)) {
            UNSCOPED_INFO("invocation failed: " << inv.args << "\nexit=" << first.exit_code
                                                << "\noutput:\n"
                                                << first.output);
            ok = false;
        }
        CHECK(bytes_equal);
        CHECK(exit_ok);
        CHECK(has_text);
    }

    // config round-trip identity on every shipped sample
    for (const char* name :
         {"quintic.json", "hyperbolic_rank2.json", "quasi_elliptic.json", "k3_like.json"}) {
        const std::string text = read_file(config_path(name));
        const SurfaceConfig once = parse_surface_config(text);
        const SurfaceConfig twice = parse_surface_config(serialize_surface_config(once));
        if (!(once == twice)) ok = false;
        CHECK(once == twice);
    }

    verdict_line(10, "cli-determinism", ok);
    REQUIRE(ok);
}
