// beatty-lab: experiment harness for primes in Beatty sequences.
//
// One experiment per invocation; grids come from config files so runs stay
// reproducible. Output is JSON (single run) or CSV (grids), always embedding
// the tool version and the fully resolved configuration.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "beattylab/report.hpp"

namespace bl = beattylab;
using bl::ordered_json;

namespace {

struct Common {
    std::string out_path;
    unsigned threads = 1;
    bool deterministic = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out_path, "Write output to this file instead of stdout");
    cmd->add_option("--threads", c.threads, "Worker threads")
        ->envname("BEATTY_LAB_THREADS")
        ->check(CLI::Range(1u, 256u));
    cmd->add_flag("--deterministic", c.deterministic,
                  "Zero the seconds field so equal configs emit identical bytes");
}

void write_out(const Common& c, const std::string& text) {
    if (c.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw bl::IoError("cannot open output file: " + c.out_path);
    f << text;
    if (!f) throw bl::IoError("write failed: " + c.out_path);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bl::BeattyParams make_params(const std::string& alpha, const std::string& beta) {
    return bl::BeattyParams(bl::RealParam::parse(alpha), bl::RealParam::parse(beta));
}

// key = value lines with # comments; used for grid configs
std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw bl::IoError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (!kv.emplace(key, val).second)
            throw bl::PreconditionViolated("duplicate config key: " + key);
    }
    return kv;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto a = item.find_first_not_of(" \t");
        auto b = item.find_last_not_of(" \t");
        if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Beatty-sequence prime experiments"};
    app.require_subcommand(1);
    app.fallthrough(true);
    app.set_version_flag("--version", std::string(bl::kToolVersion));
    app.set_config("--config", "",
                   "key = value file (# comments; subcommand options under a "
                   "[subcommand] section or as dotted keys)");
    app.allow_config_extras(false);

    auto t0 = std::chrono::steady_clock::now();

    // cf
    auto* cf_cmd = app.add_subcommand("cf", "Continued fraction expansion of a real parameter");
    Common cf_common;
    std::string cf_x;
    std::size_t cf_count = 10;
    cf_cmd->add_option("--x", cf_x, "Real parameter")->required();
    cf_cmd->add_option("--count", cf_count, "Number of partial quotients");
    add_common(cf_cmd, cf_common);
    cf_cmd->callback([&] {
        bl::ContinuedFraction cf = bl::cf_expand(bl::RealParam::parse(cf_x), cf_count);
        ordered_json config{{"subcommand", "cf"}, {"x", cf_x}, {"count", cf_count},
                            {"threads", cf_common.threads}};
        write_out(cf_common, bl::emit_output(config, bl::to_json(cf), seconds_since(t0),
                                             cf_common.deterministic));
    });

    // type
    auto* type_cmd = app.add_subcommand("type", "Irrationality-type lower bound");
    Common type_common;
    std::string type_x;
    std::size_t type_nmax = 20;
    type_cmd->add_option("--x", type_x, "Real parameter")->required();
    type_cmd->add_option("--n-max", type_nmax, "Convergents to sample");
    add_common(type_cmd, type_common);
    type_cmd->callback([&] {
        bl::TypeEstimate est = bl::type_estimate(bl::RealParam::parse(type_x), type_nmax);
        ordered_json config{{"subcommand", "type"}, {"x", type_x}, {"n_max", type_nmax},
                            {"threads", type_common.threads}};
        write_out(type_common, bl::emit_output(config, bl::to_json(est), seconds_since(t0),
                                               type_common.deterministic));
    });

    // beatty enumerate / beatty member
    auto* beatty_cmd = app.add_subcommand("beatty", "Beatty sequence operations");
    beatty_cmd->require_subcommand(1);
    auto* enum_cmd = beatty_cmd->add_subcommand("enumerate", "List members <= N");
    Common enum_common;
    std::string b_alpha, b_beta = "0";
    std::uint64_t b_n = 100;
    enum_cmd->add_option("--alpha", b_alpha, "alpha as a surd or decimal")->required();
    enum_cmd->add_option("--beta", b_beta, "beta as a surd or decimal");
    enum_cmd->add_option("--n", b_n, "Upper limit");
    add_common(enum_cmd, enum_common);
    enum_cmd->callback([&] {
        bl::BeattyParams params = make_params(b_alpha, b_beta);
        std::string text;
        for (const mpz_class& m : bl::enumerate_members(mpz_class(b_n), params))
            text += m.get_str() + "\n";
        write_out(enum_common, text);
    });
    auto* member_cmd = beatty_cmd->add_subcommand("member", "Test membership of m");
    Common member_common;
    std::string m_alpha, m_beta = "0", m_value;
    member_cmd->add_option("--alpha", m_alpha)->required();
    member_cmd->add_option("--beta", m_beta);
    member_cmd->add_option("--m", m_value, "Integer to test")->required();
    add_common(member_cmd, member_common);
    member_cmd->callback([&] {
        bl::BeattyParams params = make_params(m_alpha, m_beta);
        mpz_class m(m_value);
        ordered_json config{{"subcommand", "beatty member"}, {"alpha", m_alpha},
                            {"beta", m_beta}, {"m", m_value},
                            {"threads", member_common.threads}};
        ordered_json rep{{"member", bl::is_member(m, params)},
                         {"witness", bl::member_witness(m, params)}};
        write_out(member_common, bl::emit_output(config, rep, seconds_since(t0),
                                                 member_common.deterministic));
    });

    // theta / psi
    for (bool psi : {false, true}) {
        const char* name = psi ? "psi" : "theta";
        const char* help = psi ? "Chebyshev psi(N; d, f)" : "Chebyshev theta(N; d, f)";
        auto* cmd = app.add_subcommand(name, help);
        auto common = std::make_shared<Common>();
        auto N = std::make_shared<std::uint64_t>(100);
        auto d = std::make_shared<std::uint64_t>(1);
        auto f = std::make_shared<std::uint64_t>(0);
        cmd->add_option("--n", *N, "Upper limit")->required();
        cmd->add_option("--d", *d, "Modulus");
        cmd->add_option("--f", *f, "Residue");
        add_common(cmd, *common);
        cmd->callback([&, name, common, N, d, f, psi] {
            bl::APClass ap = (*d == 1) ? bl::APClass{} : bl::APClass(*d, *f);
            double v = psi ? bl::chebyshev_psi(*N, ap, common->threads)
                           : bl::chebyshev_theta(*N, ap, common->threads);
            ordered_json config{{"subcommand", name}, {"n", *N}, {"d", *d}, {"f", *f},
                                {"threads", common->threads}};
            ordered_json rep{{"value", bl::round_sig15(v)}};
            write_out(*common, bl::emit_output(config, rep, seconds_since(t0),
                                               common->deterministic));
        });
    }

    // constants
    auto* const_cmd = app.add_subcommand("constants", "Explicit-constant checks");
    Common const_common;
    std::uint64_t const_n = 1000;
    const_cmd->add_option("--n", const_n, "Upper limit")->required()->check(CLI::Range(std::uint64_t(41), std::uint64_t(200000000)));
    add_common(const_cmd, const_common);
    const_cmd->callback([&] {
        bl::ExplicitConstantsReport r = bl::check_explicit_constants(const_n);
        ordered_json config{{"subcommand", "constants"}, {"n", const_n},
                            {"threads", const_common.threads}};
        write_out(const_common, bl::emit_output(config, bl::to_json(r), seconds_since(t0),
                                                const_common.deterministic));
    });

    // sandwich
    auto* sand_cmd = app.add_subcommand("sandwich", "Selberg-type sandwich coefficients");
    Common sand_common;
    std::string sand_delta = "1/4";
    std::size_t sand_L = 8;
    sand_cmd->add_option("--delta", sand_delta, "delta in (0, 1/2), rational");
    sand_cmd->add_option("--L", sand_L, "Degree");
    add_common(sand_cmd, sand_common);
    sand_cmd->callback([&] {
        mpq_class delta(sand_delta);
        delta.canonicalize();
        bl::SandwichPolys sp = bl::sandwich_polys(delta, sand_L);
        ordered_json config{{"subcommand", "sandwich"}, {"delta", sand_delta}, {"L", sand_L},
                            {"threads", sand_common.threads}};
        write_out(sand_common, bl::emit_output(config, bl::to_json(sp), seconds_since(t0),
                                               sand_common.deterministic));
    });

    // expsum
    auto* exp_cmd = app.add_subcommand("expsum", "S(theta) with Vaughan pieces and bounds");
    Common exp_common;
    std::string exp_theta;
    std::uint64_t exp_n = 1000, exp_L = 1, exp_d = 1, exp_f = 0, exp_U = 0;
    double exp_eps = 0.01;
    bool exp_l0 = false;
    exp_cmd->add_option("--theta", exp_theta, "theta")->required();
    exp_cmd->add_option("--n", exp_n, "N")->required();
    exp_cmd->add_option("--L", exp_L, "L");
    exp_cmd->add_option("--d", exp_d, "Modulus");
    exp_cmd->add_option("--f", exp_f, "Residue");
    exp_cmd->add_option("--u", exp_U, "Vaughan U (0 = N^(2/5)/d^(3/5))");
    exp_cmd->add_option("--eps", exp_eps, "Epsilon in the bound evaluators");
    exp_cmd->add_flag("--l0", exp_l0, "Include the l = 0 term");
    add_common(exp_cmd, exp_common);
    exp_cmd->callback([&] {
        bl::ExpSumSpec spec;
        spec.N = exp_n;
        spec.L = exp_L;
        spec.ap = (exp_d == 1) ? bl::APClass{} : bl::APClass(exp_d, exp_f);
        spec.theta = bl::RealParam::parse(exp_theta);
        spec.include_l0 = exp_l0;
        bl::ExpSumReport r = bl::expsum_report(spec, exp_U, exp_eps, exp_common.threads);
        ordered_json config{{"subcommand", "expsum"}, {"theta", exp_theta}, {"n", exp_n},
                            {"L", exp_L},  {"d", exp_d},        {"f", exp_f},
                            {"u", exp_U},  {"eps", exp_eps},    {"l0", exp_l0},
                            {"threads", exp_common.threads}};
        write_out(exp_common, bl::emit_output(config, bl::to_json(r), seconds_since(t0),
                                              exp_common.deterministic));
    });

    // expsum-grid
    auto* grid_cmd = app.add_subcommand("expsum-grid", "CSV grid of expsum runs from a config");
    Common grid_common;
    std::string grid_file;
    grid_cmd->add_option("--grid", grid_file, "key = value grid file")->required();
    add_common(grid_cmd, grid_common);
    grid_cmd->callback([&] {
        auto kv = parse_kv_file(grid_file);
        auto need = [&](const std::string& k) {
            auto it = kv.find(k);
            if (it == kv.end()) throw bl::PreconditionViolated("grid config missing key: " + k);
            return it->second;
        };
        for (const auto& [k, v] : kv)
            if (k != "N" && k != "L" && k != "d" && k != "f" && k != "theta" && k != "eps")
                throw bl::PreconditionViolated("unknown grid config key: " + k);
        double eps = kv.count("eps") ? std::stod(kv.at("eps")) : 0.01;
        std::string csv = bl::expsum_csv_header();
        for (const std::string& ns : split_list(need("N")))
            for (const std::string& ls : split_list(need("L")))
                for (const std::string& ds : split_list(need("d"))) {
                    std::uint64_t d = std::stoull(ds);
                    std::vector<std::string> fs =
                        kv.count("f") ? split_list(kv.at("f")) : std::vector<std::string>{"1"};
                    for (const std::string& fs1 : fs) {
                        std::uint64_t f = std::stoull(fs1);
                        if (d > 1 && (f < 1 || f >= d || std::gcd(f, d) != 1)) continue;
                        for (const std::string& ts : split_list(need("theta"))) {
                            auto row0 = std::chrono::steady_clock::now();
                            bl::ExpSumSpec spec;
                            spec.N = std::stoull(ns);
                            spec.L = std::stoull(ls);
                            spec.ap = d == 1 ? bl::APClass{} : bl::APClass(d, f);
                            spec.theta = bl::RealParam::parse(ts);
                            bl::ExpSumReport r =
                                bl::expsum_report(spec, 0, eps, grid_common.threads);
                            double secs =
                                grid_common.deterministic ? 0.0 : seconds_since(row0);
                            csv += bl::expsum_csv_row(r, secs);
                        }
                    }
                }
        write_out(grid_common, csv);
    });

    // thm1
    auto* t1_cmd = app.add_subcommand("thm1", "Polynomial Beatty-prime experiment");
    Common t1_common;
    std::string t1_g = "0,0,1", t1_alpha, t1_beta = "0";
    std::uint64_t t1_n = 10000;
    double t1_eps = 0.01;
    bool t1_powers = false;
    t1_cmd->add_option("--g", t1_g, "Coefficients a0,a1,...,ak");
    t1_cmd->add_option("--alpha", t1_alpha)->required();
    t1_cmd->add_option("--beta", t1_beta);
    t1_cmd->add_option("--n", t1_n, "N")->required();
    t1_cmd->add_option("--eps", t1_eps);
    t1_cmd->add_flag("--prime-powers", t1_powers, "Sum over prime powers (the Lambda form)");
    add_common(t1_cmd, t1_common);
    t1_cmd->callback([&] {
        bl::IntPolynomial g = bl::IntPolynomial::parse(t1_g);
        bl::BeattyParams params = make_params(t1_alpha, t1_beta);
        bl::TheoremReport r =
            bl::thm1_experiment(g, params, t1_n, t1_eps, t1_common.threads, t1_powers);
        ordered_json config{{"subcommand", "thm1"}, {"g", t1_g}, {"alpha", t1_alpha},
                            {"beta", t1_beta},      {"n", t1_n}, {"eps", t1_eps},
                            {"prime_powers", t1_powers},
                            {"threads", t1_common.threads}};
        write_out(t1_common, bl::emit_output(config, bl::to_json(r), seconds_since(t0),
                                             t1_common.deterministic));
    });

    // thm2
    auto* t2_cmd = app.add_subcommand("thm2", "Least-prime bound for g(p) in B");
    Common t2_common;
    std::string t2_g = "0,0,1", t2_alpha, t2_beta = "0";
    unsigned t2_l = 1;
    double t2_eps = 0.0;
    t2_cmd->add_option("--g", t2_g, "Coefficients a0,a1,...,ak");
    t2_cmd->add_option("--alpha", t2_alpha)->required();
    t2_cmd->add_option("--beta", t2_beta);
    t2_cmd->add_option("--l", t2_l, "Convergent offset l");
    t2_cmd->add_option("--eps", t2_eps);
    add_common(t2_cmd, t2_common);
    t2_cmd->callback([&] {
        bl::IntPolynomial g = bl::IntPolynomial::parse(t2_g);
        bl::BeattyParams params = make_params(t2_alpha, t2_beta);
        bl::Thm2Bound b = bl::thm2_bound(g, params, t2_l, t2_eps);
        ordered_json config{{"subcommand", "thm2"}, {"g", t2_g}, {"alpha", t2_alpha},
                            {"beta", t2_beta},      {"l", t2_l}, {"eps", t2_eps},
                            {"threads", t2_common.threads}};
        write_out(t2_common, bl::emit_output(config, bl::to_json(b), seconds_since(t0),
                                             t2_common.deterministic));
    });

    // thm3
    auto* t3_cmd = app.add_subcommand("thm3", "Beatty primes in a progression");
    Common t3_common;
    std::string t3_alpha, t3_beta = "0";
    std::uint64_t t3_n = 100000, t3_d = 1, t3_f = 0;
    double t3_eps = 0.01;
    bool t3_powers = false;
    t3_cmd->add_option("--alpha", t3_alpha)->required();
    t3_cmd->add_option("--beta", t3_beta);
    t3_cmd->add_option("--d", t3_d, "Modulus");
    t3_cmd->add_option("--f", t3_f, "Residue");
    t3_cmd->add_option("--n", t3_n, "N")->required();
    t3_cmd->add_option("--eps", t3_eps);
    t3_cmd->add_flag("--prime-powers", t3_powers, "Sum over prime powers (the Lambda form)");
    add_common(t3_cmd, t3_common);
    t3_cmd->callback([&] {
        bl::BeattyParams params = make_params(t3_alpha, t3_beta);
        bl::APClass ap = (t3_d == 1) ? bl::APClass{} : bl::APClass(t3_d, t3_f);
        bl::TheoremReport r =
            bl::thm3_experiment(params, ap, t3_n, t3_eps, t3_common.threads, t3_powers);
        ordered_json config{{"subcommand", "thm3"}, {"alpha", t3_alpha}, {"beta", t3_beta},
                            {"d", t3_d},            {"f", t3_f},         {"n", t3_n},
                            {"eps", t3_eps},        {"prime_powers", t3_powers},
                            {"threads", t3_common.threads}};
        write_out(t3_common, bl::emit_output(config, bl::to_json(r), seconds_since(t0),
                                             t3_common.deterministic));
    });

    // remark1
    auto* r1_cmd = app.add_subcommand("remark1", "Least-prime bound in a progression");
    Common r1_common;
    std::string r1_alpha, r1_beta = "0";
    std::uint64_t r1_d = 2, r1_f = 1;
    unsigned r1_l = 1;
    double r1_eps = 0.0;
    r1_cmd->add_option("--alpha", r1_alpha)->required();
    r1_cmd->add_option("--beta", r1_beta);
    r1_cmd->add_option("--d", r1_d, "Modulus (2..500)");
    r1_cmd->add_option("--f", r1_f, "Residue");
    r1_cmd->add_option("--l", r1_l, "Convergent offset l");
    r1_cmd->add_option("--eps", r1_eps);
    add_common(r1_cmd, r1_common);
    r1_cmd->callback([&] {
        bl::BeattyParams params = make_params(r1_alpha, r1_beta);
        bl::APClass ap(r1_d, r1_f);
        bl::Remark1Bound b = bl::remark1_bound(params, ap, r1_l, r1_eps);
        ordered_json config{{"subcommand", "remark1"}, {"alpha", r1_alpha}, {"beta", r1_beta},
                            {"d", r1_d},               {"f", r1_f},         {"l", r1_l},
                            {"eps", r1_eps},           {"threads", r1_common.threads}};
        write_out(r1_common, bl::emit_output(config, bl::to_json(b), seconds_since(t0),
                                             r1_common.deterministic));
    });

    // least-prime
    auto* lp_cmd = app.add_subcommand("least-prime", "Search the least prime with g(p) in B");
    Common lp_common;
    std::string lp_g = "0,0,1", lp_alpha, lp_beta = "0";
    std::uint64_t lp_cap = 100000;
    lp_cmd->add_option("--g", lp_g, "Coefficients a0,a1,...,ak");
    lp_cmd->add_option("--alpha", lp_alpha)->required();
    lp_cmd->add_option("--beta", lp_beta);
    lp_cmd->add_option("--cap", lp_cap, "Search limit");
    add_common(lp_cmd, lp_common);
    lp_cmd->callback([&] {
        bl::IntPolynomial g = bl::IntPolynomial::parse(lp_g);
        bl::BeattyParams params = make_params(lp_alpha, lp_beta);
        mpz_class p = bl::least_prime_search(g, params, lp_cap);
        ordered_json config{{"subcommand", "least-prime"}, {"g", lp_g}, {"alpha", lp_alpha},
                            {"beta", lp_beta},             {"cap", lp_cap},
                            {"threads", lp_common.threads}};
        ordered_json rep{{"p", p.get_str()}};
        write_out(lp_common, bl::emit_output(config, rep, seconds_since(t0),
                                             lp_common.deterministic));
    });

    // calibrate
    auto* cal_cmd = app.add_subcommand("calibrate", "Measure a lemma/proposition ratio grid");
    Common cal_common;
    std::string cal_target;
    std::uint64_t cal_seed = bl::calibration::kCalibSeed;
    cal_cmd->add_option("--target", cal_target, "lemma3|lemma4a|lemma4b|lemma6|lemma7|prop1|prop2")
        ->required();
    cal_cmd->add_option("--seed", cal_seed, "Grid seed");
    add_common(cal_cmd, cal_common);
    cal_cmd->callback([&] {
        namespace cal = bl::calibration;
        cal::GridResult g;
        if (cal_target == "lemma3")
            g = cal::measure_lemma3(cal_seed);
        else if (cal_target == "lemma4a")
            g = cal::measure_lemma4_first(cal_seed);
        else if (cal_target == "lemma4b")
            g = cal::measure_lemma4_second(cal_seed);
        else if (cal_target == "lemma6")
            g = cal::measure_lemma6(cal_seed);
        else if (cal_target == "lemma7")
            g = cal::measure_lemma7(cal_seed);
        else if (cal_target == "prop1")
            g = cal::measure_prop1(cal_seed);
        else if (cal_target == "prop2")
            g = cal::measure_prop2(cal_seed);
        else
            throw bl::PreconditionViolated("unknown calibration target: " + cal_target);
        ordered_json config{{"subcommand", "calibrate"}, {"target", cal_target},
                            {"seed", cal_seed}, {"threads", cal_common.threads}};
        write_out(cal_common, bl::emit_output(config, bl::to_json(g), seconds_since(t0),
                                              cal_common.deterministic));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // input error, whatever CLI11's native code was
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const bl::UndecidableAtPrecision& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 2;
    } catch (const bl::PrecisionExhausted& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 2;
    } catch (const bl::CapacityExceeded& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const bl::InsufficientConvergents& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 2;
    } catch (const bl::NotFoundBelowCap& e) {
        std::cerr << "not found: " << e.what() << " (cap " << e.cap << ")\n";
        return 2;
    } catch (const bl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
