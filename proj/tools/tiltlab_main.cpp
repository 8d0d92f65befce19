// tiltlab command line: exact discriminant constants, inequality checks,
// polarization walls, central charges and support certificates for
// user-described surface and hypersurface models. All arithmetic is exact;
// reports are byte-deterministic for identical inputs.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tiltlab/config.hpp"
#include "tiltlab/selfcheck.hpp"
#include "tiltlab/tiltlab.hpp"

namespace {

using namespace tiltlab;

enum class Format { Text, Json, Csv };

struct Report {
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<std::string> csv_lines;  // scan payload, header first

    void add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, const Rational& value) {
        add(std::move(key), to_fraction_string(value));
    }
};

std::string format_vector(const RationalVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_fraction_string(v[i]);
    }
    return s + ")";
}

std::string format_signature(const Signature& s) {
    return "(" + std::to_string(s.n_plus) + ", " + std::to_string(s.n_minus) + ", " +
           std::to_string(s.n_zero) + ")";
}

std::string format_definiteness(Definiteness d) {
    switch (d) {
        case Definiteness::NegativeDefinite: return "negative-definite";
        case Definiteness::NegativeSemidefinite: return "negative-semidefinite";
        case Definiteness::Other: return "indefinite-or-other";
    }
    return "?";
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

void emit(const Report& rep, Format format) {
    if (format == Format::Csv) {
        if (rep.csv_lines.empty())
            throw std::invalid_argument("csv format requires a scan (--steps or --sweep)");
        for (const auto& line : rep.csv_lines) std::cout << line << "\n";
        return;
    }
    if (format == Format::Json) {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : rep.fields) j[k] = v;
        if (!rep.csv_lines.empty()) j["scan"] = rep.csv_lines;
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : rep.fields) std::cout << k << ": " << v << "\n";
    for (const auto& line : rep.csv_lines) std::cout << line << "\n";
}

struct LoadedConfig {
    SurfaceConfig config;
    SurfaceModel model;
    std::string digest;
};

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    SurfaceConfig cfg = parse_surface_config(bytes);
    SurfaceModel model = to_surface_model(cfg);
    return {std::move(cfg), std::move(model), "fnv1a:" + hex64(fnv1a64(bytes))};
}

Int parse_int_flag(const std::string& text, const char* what) {
    const Rational r = parse_rational(text);
    if (!is_integer(r)) throw std::invalid_argument(std::string(what) + ": expected an integer");
    return numerator_of(r);
}

DivisorClass class_from_flag(const LatticePtr& lattice, const std::string& text, const char* what) {
    auto coords = parse_rational_vector(text);
    if (coords.size() != lattice->rank())
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(lattice->rank()) + " coordinates");
    return DivisorClass(lattice, std::move(coords));
}

struct CharacterFlags {
    std::string ch0;
    std::string ch1;
    std::string ch2 = "0";
};

ChernCharacter character_from_flags(const LatticePtr& lattice, const CharacterFlags& f) {
    return ChernCharacter(parse_int_flag(f.ch0, "--ch0"), class_from_flag(lattice, f.ch1, "--ch1"),
                          parse_rational(f.ch2));
}

void add_preamble(Report& rep, const std::string& echo, const LoadedConfig& loaded,
                  const std::string& config_path) {
    rep.add("command", echo);
    rep.add("config", config_path);
    rep.add("digest", loaded.digest);
    rep.add("model", loaded.model.name());
}

// ---------------------------------------------------------------------------

int run_constant(const std::string& echo, const std::string& config_path, Format format) {
    const LoadedConfig loaded = load_config(config_path);
    const SurfaceModel& s = loaded.model;
    Report rep;
    add_preamble(rep, echo, loaded, config_path);
    rep.add("kodaira", to_string(s.kodaira()));
    if (s.kodaira() == Kodaira::Two) {
        const DConstantResult d = d_constant(s);
        rep.add("d_constant", d.value);
        rep.add("d_source", d.used_fallback ? "fallback(5*K2_min)" : "candidates");
    }
    rep.add("c_constant", c_constant(s));
    if (s.kodaira() == Kodaira::Two)
        rep.add("c_upper_bound_5K2", Rational(5 * s.k2_min() - s.chi_o_min() + 2));
    if (loaded.config.hypersurface_degree) {
        const Int& deg = *loaded.config.hypersurface_degree;
        const Rational closed = hypersurface_constant(deg);
        rep.add("closed_form_degree", Rational(deg));
        rep.add("closed_form_value", closed);
        rep.add("closed_form_crosscheck", closed == c_constant(s) ? "match" : "MISMATCH");
    }
    emit(rep, format);
    return 0;
}

int run_check(const std::string& echo, const std::string& config_path, const CharacterFlags& chf,
              const std::optional<std::string>& b_flag, Format format) {
    const LoadedConfig loaded = load_config(config_path);
    const SurfaceModel& s = loaded.model;
    ChernCharacter ch = character_from_flags(s.lattice(), chf);
    Report rep;
    add_preamble(rep, echo, loaded, config_path);
    rep.add("ch0", Rational(ch.ch0));
    rep.add("ch1", format_vector(ch.ch1.coords()));
    rep.add("ch2", ch.ch2);
    if (b_flag) {
        const DivisorClass b = class_from_flag(s.lattice(), *b_flag, "--B");
        rep.add("B", format_vector(b.coords()));
        ch = twist_B(ch, b);
    }
    const BGReport bg = check_bg(ch, s);
    rep.add("delta", delta(ch));
    rep.add("c_constant", bg.c_used);
    rep.add("delta_tilde", bg.value);
    rep.add("verdict", bg.holds ? "admissible" : "inadmissible");
    if (!bg.holds) rep.add("note", "the class cannot be slope-semistable on this model");
    emit(rep, format);
    return 0;
}

int run_wall(const std::string& echo, const std::string& config_path, const std::string& e_ch0,
             const std::string& e_ch1, const std::string& f_ch0, const std::string& f_ch1,
             const std::string& l_flag, const std::string& m_flag, unsigned steps, Format format) {
    const LoadedConfig loaded = load_config(config_path);
    const LatticePtr& lattice = loaded.model.lattice();
    const ChernCharacter e(parse_int_flag(e_ch0, "--E-ch0"),
                           class_from_flag(lattice, e_ch1, "--E-ch1"), 0);
    const ChernCharacter f(parse_int_flag(f_ch0, "--F-ch0"),
                           class_from_flag(lattice, f_ch1, "--F-ch1"), 0);
    const DivisorClass l = class_from_flag(lattice, l_flag, "--L");
    const DivisorClass m = class_from_flag(lattice, m_flag, "--M");

    const DivisorClass diff =
        (Rational(1) / Rational(f.ch0)) * f.ch1 - (Rational(1) / Rational(e.ch0)) * e.ch1;
    const WallResult wall = polarization_wall(e, f, l, m);

    Report rep;
    add_preamble(rep, echo, loaded, config_path);
    rep.add("slope_difference_class", format_vector(diff.coords()));
    rep.add("L_pairing", pair(l, diff));
    rep.add("M_pairing", pair(m, diff));
    switch (wall.kind) {
        case WallKind::Wall: rep.add("wall", "t=" + to_fraction_string(*wall.t)); break;
        case WallKind::None: rep.add("wall", "none"); break;
        case WallKind::Degenerate: rep.add("wall", "degenerate (equal slopes on the whole segment)"); break;
    }
    if (steps > 0) {
        rep.csv_lines.push_back("t,mu_E,mu_F");
        for (unsigned i = 0; i < steps; ++i) {
            const Rational t = steps == 1 ? Rational(0) : Rational(i, steps - 1);
            const DivisorClass mt = t * m + (1 - t) * l;
            const Rational mu_e = pair(mt, e.ch1) / Rational(e.ch0);
            const Rational mu_f = pair(mt, f.ch1) / Rational(f.ch0);
            rep.csv_lines.push_back(to_fraction_string(t) + "," + to_fraction_string(mu_e) + "," +
                                    to_fraction_string(mu_f));
        }
    }
    emit(rep, format);
    return 0;
}

StabilityPoint point_from_flags(const SurfaceModel& s, const std::optional<std::string>& h_flag,
                                const std::optional<std::string>& b_flag,
                                const std::optional<std::string>& ch_flag, Report* rep) {
    DivisorClass h = h_flag ? class_from_flag(s.lattice(), *h_flag, "--H") : s.ample();
    DivisorClass b = b_flag ? class_from_flag(s.lattice(), *b_flag, "--B")
                            : DivisorClass::zero(s.lattice());
    Rational c_h = 0;
    std::string c_h_source = "given";
    if (ch_flag) {
        c_h = parse_rational(*ch_flag);
    } else {
        const SupportConstantEstimate est = estimate_support_constant(s);
        c_h = est.value;
        c_h_source = est.from_generators ? "estimated from effective generators"
                                         : "0 (no generators supplied, unverified)";
    }
    if (rep) {
        rep->add("H", format_vector(h.coords()));
        rep->add("B", format_vector(b.coords()));
        rep->add("C_H", to_fraction_string(c_h) + " [" + c_h_source + "]");
    }
    return StabilityPoint(s, std::move(h), std::move(b), std::move(c_h));
}

int run_charge(const std::string& echo, const std::string& config_path, const CharacterFlags& chf,
               const std::optional<std::string>& h_flag, const std::optional<std::string>& b_flag,
               const std::optional<std::string>& ch_flag, Format format) {
    const LoadedConfig loaded = load_config(config_path);
    Report rep;
    add_preamble(rep, echo, loaded, config_path);
    const StabilityPoint pt = point_from_flags(loaded.model, h_flag, b_flag, ch_flag, &rep);
    const ChernCharacter ch = character_from_flags(loaded.model.lattice(), chf);
    rep.add("C_S", pt.c_s());
    const Charge z = central_charge(pt, ch);
    rep.add("Z_re", z.re);
    rep.add("Z_im", z.im);
    emit(rep, format);
    return 0;
}

int run_heart(const std::string& echo, const std::string& config_path, const CharacterFlags& chf,
              const std::optional<std::string>& h_flag, const std::optional<std::string>& b_flag,
              Format format) {
    const LoadedConfig loaded = load_config(config_path);
    Report rep;
    add_preamble(rep, echo, loaded, config_path);
    const StabilityPoint pt =
        point_from_flags(loaded.model, h_flag, b_flag, std::string("0"), &rep);
    const ChernCharacter ch = character_from_flags(loaded.model.lattice(), chf);
    const HeartSide side = classify_torsion_pair(ch, pt);
    if (ch.ch0 != 0) {
        const Slope mu = slope(ch, pt.h());
        rep.add("slope", mu.is_infinite() ? "+infinity" : to_fraction_string(mu.value()));
    } else if (pair(pt.h(), ch.ch1) > 0) {
        rep.add("slope", "+infinity");
    } else {
        rep.add("slope", "undefined (torsion class of nonpositive degree)");
    }
    rep.add("threshold_HB", pt.hb());
    rep.add("side", to_string(side));
    emit(rep, format);
    return 0;
}

int run_support(const std::string& echo, const std::string& config_path,
                const std::optional<std::string>& h_flag, const std::optional<std::string>& b_flag,
                const std::optional<std::string>& ch_flag, unsigned sweep, unsigned jobs,
                Format format) {
    const LoadedConfig loaded = load_config(config_path);
    const SurfaceModel& s = loaded.model;
    Report rep;
    add_preamble(rep, echo, loaded, config_path);
    const StabilityPoint pt = point_from_flags(s, h_flag, b_flag, ch_flag, &rep);
    rep.add("C_S", pt.c_s());

    const SupportCertificate cert = support_property_check(pt);
    rep.add("kernel_dim", Rational(Int(cert.kernel_basis.size())));
    for (std::size_t i = 0; i < cert.kernel_basis.size(); ++i)
        rep.add("kernel_basis[" + std::to_string(i) + "]", format_vector(cert.kernel_basis[i]));
    rep.add("restricted_signature", format_signature(cert.restricted_signature));
    rep.add("verdict", format_definiteness(cert.verdict));

    if (sweep > 0) {
        // grid over H-scales 1..sweep and B-offsets centered at zero
        std::vector<std::pair<Rational, Rational>> cells;
        for (unsigned i = 1; i <= sweep; ++i)
            for (unsigned j = 0; j < sweep; ++j)
                cells.emplace_back(Rational(i),
                                   Rational(2 * static_cast<long>(j) - static_cast<long>(sweep) + 1,
                                            2 * static_cast<long>(sweep)));
        std::vector<std::string> lines(cells.size());
        const auto work = [&](unsigned worker) {
            for (std::size_t idx = worker; idx < cells.size(); idx += jobs) {
                const auto& [scale, offset] = cells[idx];
                const StabilityPoint cell_pt(s, scale * pt.h(), pt.b() + offset * pt.h(),
                                             pt.c_h());
                const SupportCertificate c = support_property_check(cell_pt);
                lines[idx] = to_fraction_string(scale) + "," + to_fraction_string(offset) + "," +
                             std::to_string(c.kernel_basis.size()) + "," +
                             format_signature(c.restricted_signature) + "," +
                             format_definiteness(c.verdict);
            }
        };
        if (jobs <= 1) {
            work(0);
        } else {
            std::vector<std::thread> threads;
            for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
            for (auto& t : threads) t.join();
        }
        rep.csv_lines.push_back("H_scale,B_offset,kernel_dim,signature,verdict");
        for (auto& line : lines) rep.csv_lines.push_back(std::move(line));
    }
    emit(rep, format);
    return 0;
}

int run_hyper(const std::string& echo, const std::string& op, unsigned n, const std::string& d_flag,
              unsigned l, const std::optional<std::string>& t_flag, const std::string& b_flag,
              const std::optional<std::string>& a_flag, const std::optional<std::string>& ch0_flag,
              const std::optional<std::string>& hch2_flag,
              const std::optional<std::string>& fiber_flag, Format format) {
    const Int d = parse_int_flag(d_flag, "--d");
    const HypersurfaceModel model(n, d, l);
    Report rep;
    rep.add("command", echo);
    rep.add("model", "hypersurface n=" + std::to_string(n) + " d=" + d.str() +
                         " l=" + std::to_string(l));
    const auto lambda_arg = [&]() -> LambdaVector {
        RationalVector a = a_flag ? parse_rational_vector(*a_flag) : RationalVector(l, Rational(0));
        return project_to_lambda(model, parse_rational(b_flag), std::move(a));
    };
    const auto fiber_arg = [&]() -> RationalVector {
        return fiber_flag ? parse_rational_vector(*fiber_flag) : RationalVector{};
    };
    if (op == "qsig") {
        rep.add("q_signature", format_signature(lambda_form_signature(model)));
    } else if (op == "qeval") {
        const LambdaVector v = lambda_arg();
        rep.add("b", v.b);
        rep.add("a", format_vector(v.a));
        rep.add("q_value", lambda_form(model, v));
    } else if (op == "Q") {
        if (!ch0_flag || !hch2_flag)
            throw std::invalid_argument("hyper Q: requires --ch0 and --hch2");
        const ReducedBlowupCharacter rc{parse_int_flag(*ch0_flag, "--ch0"), lambda_arg(),
                                        parse_rational(*hch2_flag)};
        rep.add("ch0", Rational(rc.ch0));
        rep.add("lambda1_b", rc.lambda1.b);
        rep.add("lambda1_a", format_vector(rc.lambda1.a));
        rep.add("h_ch2", rc.h_ch2);
        const Rational q = blowup_discriminant(model, rc);
        rep.add("Q_value", q);
        rep.add("Q_nonnegative", q >= 0 ? "yes (consistent with slope-semistability)"
                                        : "no (the class cannot be slope-semistable)");
    } else if (op == "kernel") {
        const Rational t = t_flag ? parse_rational(*t_flag) : Rational(0);
        const auto report = kernel_negativity_check(model, t, fiber_arg());
        rep.add("t", t);
        rep.add("q_signature", format_signature(report.q_signature));
        rep.add("signature_hyperbolic", report.signature_hyperbolic ? "yes" : "no");
        rep.add("kernel_dim", Rational(Int(report.kernel_dim)));
        rep.add("restricted_signature", format_signature(report.restricted_signature));
        rep.add("verdict", format_definiteness(report.verdict));
        rep.add("semidefinite", report.semidefinite ? "yes" : "no");
        rep.add("definite", report.definite ? "yes" : "no");
    } else {
        throw std::invalid_argument("hyper: unknown operation '" + op +
                                    "' (expected qsig, qeval, Q or kernel)");
    }
    emit(rep, format);
    return 0;
}

int run_selftest(const std::string& echo, unsigned scale, Format format) {
    std::uint64_t seed = 0;
    if (const char* env = std::getenv("TILTLAB_SEED")) seed = std::strtoull(env, nullptr, 10);
    Report rep;
    rep.add("command", echo);
    rep.add("seed", Rational(Int(seed)));
    bool all_pass = true;
    for (const auto& suite : selfcheck::run_all(seed, scale)) {
        rep.add("suite " + suite.name, std::to_string(suite.cases) + " cases, " +
                                           std::to_string(suite.failures) + " failures, " +
                                           (suite.passed() ? "PASS" : "FAIL"));
        all_pass = all_pass && suite.passed();
    }
    rep.add("selftest", all_pass ? "PASS" : "FAIL");
    emit(rep, format);
    if (!all_pass) throw std::logic_error("selftest found an exact-identity violation");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::string echo;
    for (int i = 0; i < argc; ++i) {
        if (i) echo += ' ';
        echo += argv[i] == std::string() ? "''" : argv[i];
    }

    CLI::App app{"exact discriminant, wall and stability-condition checks on surface models"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format_name = "text";
    const auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
        if (needs_config)
            cmd->add_option("--config", config_path, "surface description file")->required();
        cmd->add_option("--format", format_name, "output format")
            ->check(CLI::IsMember({"text", "json", "csv"}));
    };

    CharacterFlags chf;
    std::optional<std::string> b_flag, h_flag, c_h_flag;

    auto* cmd_constant = app.add_subcommand("constant", "discriminant correction constants");
    add_common(cmd_constant);

    auto* cmd_check = app.add_subcommand("check", "corrected discriminant inequality for a class");
    add_common(cmd_check);
    cmd_check->add_option("--ch0", chf.ch0)->required();
    cmd_check->add_option("--ch1", chf.ch1)->required();
    cmd_check->add_option("--ch2", chf.ch2);
    cmd_check->add_option("--B", [&b_flag](const std::vector<std::string>& v) {
        b_flag = v.back();
        return true;
    }, "twist class");

    std::string e_ch0, e_ch1, f_ch0, f_ch1, l_flag, m_flag;
    unsigned steps = 0;
    auto* cmd_wall = app.add_subcommand("wall", "wall on a nef polarization segment");
    add_common(cmd_wall);
    cmd_wall->add_option("--E-ch0", e_ch0)->required();
    cmd_wall->add_option("--E-ch1", e_ch1)->required();
    cmd_wall->add_option("--F-ch0", f_ch0)->required();
    cmd_wall->add_option("--F-ch1", f_ch1)->required();
    cmd_wall->add_option("--L", l_flag)->required();
    cmd_wall->add_option("--M", m_flag)->required();
    cmd_wall->add_option("--steps", steps, "emit a slope scan with this many rows");

    const auto opt_setter = [](std::optional<std::string>& target) {
        return [&target](const std::vector<std::string>& v) {
            target = v.back();
            return true;
        };
    };

    auto* cmd_charge = app.add_subcommand("charge", "central charge of a class");
    add_common(cmd_charge);
    cmd_charge->add_option("--ch0", chf.ch0)->required();
    cmd_charge->add_option("--ch1", chf.ch1)->required();
    cmd_charge->add_option("--ch2", chf.ch2);
    cmd_charge->add_option("--H", opt_setter(h_flag), "polarization (default: config ample_H)");
    cmd_charge->add_option("--B", opt_setter(b_flag), "twist class (default: 0)");
    cmd_charge->add_option("--C_H", opt_setter(c_h_flag), "support constant (default: estimate)");

    auto* cmd_heart = app.add_subcommand("heart", "torsion-pair side of a class");
    add_common(cmd_heart);
    cmd_heart->add_option("--ch0", chf.ch0)->required();
    cmd_heart->add_option("--ch1", chf.ch1)->required();
    cmd_heart->add_option("--ch2", chf.ch2);
    cmd_heart->add_option("--H", opt_setter(h_flag));
    cmd_heart->add_option("--B", opt_setter(b_flag));

    unsigned sweep = 0, jobs = 1;
    auto* cmd_support = app.add_subcommand("support", "support-property certificate");
    add_common(cmd_support);
    cmd_support->add_option("--H", opt_setter(h_flag));
    cmd_support->add_option("--B", opt_setter(b_flag));
    cmd_support->add_option("--C_H", opt_setter(c_h_flag));
    cmd_support->add_option("--sweep", sweep, "run an NxN (H-scale, B-offset) grid");
    cmd_support->add_option("--jobs", jobs, "worker threads for the sweep")
        ->check(CLI::Range(1u, 64u));

    std::string hyper_op, hyper_d = "1", hyper_b = "0";
    unsigned hyper_n = 2, hyper_l = 0;
    std::optional<std::string> t_flag, a_flag, ch0_flag, hch2_flag, fiber_flag;
    auto* cmd_hyper = app.add_subcommand("hyper", "hypersurface blow-up forms and kernels");
    add_common(cmd_hyper, /*needs_config=*/false);
    cmd_hyper->add_option("op", hyper_op, "one of qsig, qeval, Q, kernel")->required();
    cmd_hyper->add_option("--n", hyper_n, "hypersurface dimension")->required();
    cmd_hyper->add_option("--d", hyper_d, "hypersurface degree")->required();
    cmd_hyper->add_option("--l", hyper_l, "number of exceptional divisors");
    cmd_hyper->add_option("--t", opt_setter(t_flag), "deformation parameter (kernel)");
    cmd_hyper->add_option("--b", hyper_b, "degree coordinate of a lambda vector");
    cmd_hyper->add_option("--a", opt_setter(a_flag), "exceptional coefficients");
    cmd_hyper->add_option("--ch0", opt_setter(ch0_flag), "rank (Q)");
    cmd_hyper->add_option("--hch2", opt_setter(hch2_flag), "contracted ch2 (Q)");
    cmd_hyper->add_option("--fiber", opt_setter(fiber_flag), "fiber pairing numbers (kernel)");

    unsigned selftest_scale = 1;
    auto* cmd_selftest = app.add_subcommand("selftest", "randomized exact-identity suites");
    add_common(cmd_selftest, /*needs_config=*/false);
    cmd_selftest->add_option("--scale", selftest_scale, "case-count multiplier")
        ->check(CLI::Range(1u, 1000u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const Format format = format_name == "json" ? Format::Json
                          : format_name == "csv" ? Format::Csv
                                                 : Format::Text;
    try {
        if (cmd_constant->parsed()) return run_constant(echo, config_path, format);
        if (cmd_check->parsed()) return run_check(echo, config_path, chf, b_flag, format);
        if (cmd_wall->parsed())
            return run_wall(echo, config_path, e_ch0, e_ch1, f_ch0, f_ch1, l_flag, m_flag, steps,
                            format);
        if (cmd_charge->parsed())
            return run_charge(echo, config_path, chf, h_flag, b_flag, c_h_flag, format);
        if (cmd_heart->parsed()) return run_heart(echo, config_path, chf, h_flag, b_flag, format);
        if (cmd_support->parsed())
            return run_support(echo, config_path, h_flag, b_flag, c_h_flag, sweep, jobs, format);
        if (cmd_hyper->parsed())
            return run_hyper(echo, hyper_op, hyper_n, hyper_d, hyper_l, t_flag, hyper_b, a_flag,
                             ch0_flag, hch2_flag, fiber_flag, format);
        if (cmd_selftest->parsed()) return run_selftest(echo, selftest_scale, format);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
