#pragma once

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "assoclab/assoc.hpp"
#include "assoclab/dmr.hpp"
#include "assoclab/kv.hpp"
#include "assoclab/mzv.hpp"
#include "assoclab/serialize.hpp"

namespace assoclab {

// One config block for every numeric knob; flags override.
struct CliConfig {
    int digits = 40;
    int weight = 6;
    double threshold = 1e-25;
    std::string cache_path;
};

struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, fnv64
    int truncation = 0;
    std::string ring;
    int precision = 0;
    double threshold = 0;
    std::vector<ResidualReport> residuals;
    bool pass = true;
    double wall_time_s = 0;

    void add(const ResidualReport& r, double thr) {
        residuals.push_back(r);
        pass = pass && r.passes(thr);
    }
    json to_json() const {
        json j;
        j["command"] = command;
        j["inputs"] = json::array();
        for (const auto& [path, hash] : inputs)
            j["inputs"].push_back({{"path", path}, {"hash", hash}});
        j["truncation"] = truncation;
        j["ring"] = ring;
        if (precision) j["precision"] = precision;
        j["threshold"] = threshold;
        j["residuals"] = json::array();
        for (const auto& r : residuals) j["residuals"].push_back(residual_to_json(r));
        j["verdict"] = pass ? "pass" : "fail";
        j["wall_time_s"] = wall_time_s;
        return j;
    }
};

namespace cli_detail {

inline std::string hash_hex(const std::string& path) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a_file(path)));
    return buf;
}

struct MuSpec {
    enum class Kind { TwoPiI, Auto, Rational } kind = Kind::Auto;
    Rat rational;
    static MuSpec parse(const std::string& s) {
        MuSpec m;
        if (s == "2pii") {
            m.kind = Kind::TwoPiI;
        } else if (s == "auto") {
            m.kind = Kind::Auto;
        } else {
            m.kind = Kind::Rational;
            m.rational = rat_from_string(s);
        }
        return m;
    }
};

template <class F>
int run_command(const std::string& name, std::ostream& out, std::ostream& err,
                F body) {
    auto t0 = std::chrono::steady_clock::now();
    try {
        RunReport rep;
        rep.command = name;
        body(rep);
        rep.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        out << rep.to_json().dump(1) << "\n";
        return rep.pass ? 0 : 1;
    } catch (const InputError& e) {
        json j{{"error", e.what()}, {"command", name}};
        out << j.dump(1) << "\n";
        err << "input error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cli_detail

inline int dispatch(std::vector<std::string> args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr);

// ---- individual command bodies (also the programmatic surface the tests
// drive without a subprocess) ----

namespace cli_detail {

inline void load_series_input(RunReport& rep, const std::string& path,
                              AnySeries& out_series) {
    json j = load_json_file(path);
    rep.inputs.emplace_back(path, hash_hex(path));
    out_series = any_series_from_json(j);
    std::visit(
        [&](const auto& s) {
            rep.truncation = s.truncation();
            using R = typename std::decay_t<decltype(s)>::scalar_type;
            rep.ring = RingTraits<R>::name;
        },
        out_series);
    if (j.contains("precision")) rep.precision = j["precision"].get<int>();
}

}  // namespace cli_detail

inline int cmd_check(const std::string& which, const std::string& path,
                     const std::string& mu_text, const CliConfig& cfg,
                     std::ostream& out, std::ostream& err, bool as_dmr0 = false,
                     bool kill_linear = false) {
    using namespace cli_detail;
    return run_command("check-" + which, out, err, [&](RunReport& rep) {
        AnySeries any;
        load_series_input(rep, path, any);
        rep.threshold = cfg.threshold;
        std::visit(
            [&](const auto& phi) {
                using R = typename std::decay_t<decltype(phi)>::scalar_type;
                double thr = RingTraits<R>::exact ? 0.0 : cfg.threshold;
                if (which == "pentagon" || which == "assoc" || which == "grt1" ||
                    which == "hexagon") {
                    ResidualReport gl = group_like_residual(phi);
                    rep.add(gl, thr);
                    if (gl.infinite)
                        throw InputError("input series is not group-like: " + gl.note);
                }
                if (which == "pentagon" || which == "assoc")
                    rep.add(pentagon_residual(phi), thr);
                if (which == "hexagon" || which == "assoc") {
                    MuSpec mu = MuSpec::parse(mu_text);
                    if constexpr (std::is_same_v<R, BigComplex>) {
                        BigComplex muv(0L, 64);
                        if (mu.kind == MuSpec::Kind::TwoPiI) {
                            mpfr_prec_t wp = bits_for_digits(cfg.digits + 12);
                            muv = BigComplex(BigFloat(0L, wp),
                                             pi_machin(wp).mul_si(2));
                        } else if (mu.kind == MuSpec::Kind::Auto) {
                            muv = recover_mu(phi, thr).complex_value;
                        } else {
                            muv = phi.scalar_from_rat(mu.rational);
                        }
                        auto [h1, h2] = hexagon_residuals(muv, phi);
                        rep.add(h1, thr);
                        rep.add(h2, thr);
                    } else if constexpr (std::is_same_v<R, Rat>) {
                        if (mu.kind == MuSpec::Kind::TwoPiI)
                            throw InputError(
                                "mu = 2pii is not representable in the rational ring");
                        if (mu.kind == MuSpec::Kind::Auto) {
                            MuValue m = recover_mu(phi);
                            if (m.kind == MuValue::Kind::Sqrt) {
                                Series<QuadExt> lift = convert_series<QuadExt>(
                                    phi, [](const Rat& q) { return QuadExt(q); });
                                auto [h1, h2] = hexagon_residuals(
                                    QuadExt::root(m.radicand), lift);
                                rep.add(h1, 0.0);
                                rep.add(h2, 0.0);
                                ResidualReport note =
                                    ResidualReport::make<Rat>("mu-recovery", rep.truncation);
                                note.note = "recovered mu = " + m.to_string() +
                                            " (symbolic square root)";
                                rep.residuals.push_back(note);
                            } else {
                                Rat muq = m.kind == MuValue::Kind::Exact ? m.exact : Rat(0);
                                auto [h1, h2] = hexagon_residuals(muq, phi);
                                rep.add(h1, 0.0);
                                rep.add(h2, 0.0);
                            }
                        } else {
                            auto [h1, h2] = hexagon_residuals(mu.rational, phi);
                            rep.add(h1, 0.0);
                            rep.add(h2, 0.0);
                        }
                    } else {
                        throw InputError(
                            "hexagon checks need a rational or complex series");
                    }
                }
                if (which == "grt1") {
                    Grt1Report g = is_grt1(phi, thr);
                    rep.add(g.pentagon, thr);
                    rep.add(g.hexagon1, thr);
                    rep.add(g.hexagon2, thr);
                    ResidualReport verdict =
                        ResidualReport::make<R>("grt1-membership", rep.truncation);
                    verdict.zero = g.verdict;
                    verdict.exact = true;
                    verdict.note = g.verdict
                                       ? "group-like, pentagon, no linear/quadratic terms"
                                       : (!g.quadratic_zero ? "nonzero quadratic terms"
                                          : !g.linear_zero ? "nonzero linear terms"
                                                           : "equations fail");
                    rep.add(verdict, thr);
                }
                if (which == "dmr") {
                    ResidualReport gl = group_like_residual(phi);
                    rep.add(gl, thr);
                    rep.add(double_shuffle_residual(phi, kill_linear), thr);
                    if (as_dmr0) {
                        Dmr0Report d = is_dmr0(phi, thr);
                        ResidualReport verdict =
                            ResidualReport::make<R>("dmr0-membership", rep.truncation);
                        verdict.zero = d.verdict;
                        verdict.exact = true;
                        verdict.note =
                            d.verdict ? "group-like, double shuffle, no linear/quadratic"
                                      : (!d.quadratic_zero ? "nonzero quadratic terms"
                                         : !d.linear_zero ? "nonzero linear terms"
                                                          : "double shuffle fails");
                        rep.add(verdict, thr);
                    }
                }
            },
            any);
    });
}

inline int dispatch(std::vector<std::string> args, std::ostream& out,
                    std::ostream& err) {
    CLI::App app{"truncated associator computations"};
    app.require_subcommand(0, 1);
    CliConfig cfg;
    app.add_option("--digits", cfg.digits, "working decimal precision");
    app.add_option("--weight", cfg.weight, "truncation weight");
    app.add_option("--threshold", cfg.threshold, "numeric residual threshold");
    app.add_option("--cache", cfg.cache_path, "MZV cache file");

    std::string path, path2, mu_text = "auto", outpath, index_text = "2";
    int degree = 3, za = 0, zb = 0;
    bool as_dmr0 = false, kill_linear = false, grt1_mode = false, verify_kz = false;

    auto* pent = app.add_subcommand("check-pentagon", "pentagon residual of a series");
    pent->add_option("series", path)->required();
    auto* hex = app.add_subcommand("check-hexagon", "hexagon residuals");
    hex->add_option("series", path)->required();
    hex->add_option("--mu", mu_text, "mu value: 2pii | auto | rational");
    auto* assoc_c = app.add_subcommand("check-assoc", "group-like + pentagon + hexagons");
    assoc_c->add_option("series", path)->required();
    assoc_c->add_option("--mu", mu_text);
    auto* grt1c = app.add_subcommand("check-grt1", "GRT_1 membership checks");
    grt1c->add_option("series", path)->required();
    auto* dmrc = app.add_subcommand("check-dmr", "regularized double shuffle residual");
    dmrc->add_option("series", path)->required();
    dmrc->add_flag("--as-dmr0", as_dmr0, "also decide DMR_0 membership");
    dmrc->add_flag("--kill-linear", kill_linear, "zero the linear terms first");

    auto* grt = app.add_subcommand("grt", "GRT group operations");
    auto* grtmul = grt->add_subcommand("mul", "compose via Eq.-(7) twisted product");
    grtmul->add_option("phi2", path)->required();
    grtmul->add_option("phi1", path2)->required();
    grtmul->add_option("-o,--output", outpath);

    auto* pent_s = app.add_subcommand("pentagon", "pentagon solver");
    auto* solve = pent_s->add_subcommand("solve", "degreewise affine solution spaces");
    solve->add_option("--degree", degree, "top degree")->required();
    solve->add_flag("--grt1", grt1_mode, "impose the no-quadratic-term normalization");

    auto* rel = app.add_subcommand("relations", "symbolic associator relations");
    rel->add_option("--degree", degree)->required();
    rel->add_flag("--verify-kz", verify_kz, "evaluate each relation on Phi_KZ");

    auto* mzv = app.add_subcommand("mzv", "multiple zeta values");
    auto* mzv_eval = mzv->add_subcommand("eval", "evaluate one MZV");
    mzv_eval->add_option("--index", index_text, "comma-separated index")->required();

    auto* buildkz = app.add_subcommand("build-kz", "Drinfeld associator to a weight");
    buildkz->add_option("-o,--output", outpath);

    auto* zag = app.add_subcommand("zagier", "Theorem-1.9 numeric check");
    zag->add_option("--a", za);
    zag->add_option("--b", zb);

    auto* kv = app.add_subcommand("kv", "Kashiwara-Vergne operations");
    auto* kv_from = kv->add_subcommand("from-assoc", "pair from an associator");
    kv_from->add_option("series", path)->required();
    kv_from->add_option("--mu", mu_text);
    kv_from->add_option("-o,--output", outpath);
    auto* kv_main = kv->add_subcommand("check-main", "P(e^X0)P(e^X1) = e^{X0+X1}");
    kv_main->add_option("pair", path)->required();
    auto* kv_krv = kv->add_subcommand("check-krv", "KRV fixed-point equation");
    kv_krv->add_option("pair", path)->required();

    auto* self = app.add_subcommand("selftest", "exact-ring property battery");

    std::vector<const char*> argv;
    std::string prog = "assoclab";
    argv.push_back(prog.c_str());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help() << "\n";
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        out << json{{"error", e.what()}}.dump(1) << "\n";
        return 2;
    }

    using namespace cli_detail;
    if (*pent) return cmd_check("pentagon", path, mu_text, cfg, out, err);
    if (*hex) return cmd_check("hexagon", path, mu_text, cfg, out, err);
    if (*assoc_c) return cmd_check("assoc", path, mu_text, cfg, out, err);
    if (*grt1c) return cmd_check("grt1", path, mu_text, cfg, out, err);
    if (*dmrc)
        return cmd_check("dmr", path, mu_text, cfg, out, err, as_dmr0, kill_linear);

    if (*grtmul) {
        return run_command("grt mul", out, err, [&](RunReport& rep) {
            json j2 = load_json_file(path), j1 = load_json_file(path2);
            rep.inputs.emplace_back(path, hash_hex(path));
            rep.inputs.emplace_back(path2, hash_hex(path2));
            Series<Rat> phi2 = series_from_json<Rat>(j2);
            Series<Rat> phi1 = series_from_json<Rat>(j1);
            rep.ring = "rational";
            rep.truncation = std::min(phi1.truncation(), phi2.truncation());
            Series<Rat> prod = grt_mul(phi2, phi1);
            ResidualReport agree = series_residual(
                "eq7-two-forms", prod, grt_mul_second_form(phi2, phi1));
            rep.add(agree, 0.0);
            json jo = series_to_json(prod);
            if (!outpath.empty()) {
                std::ofstream of(outpath);
                of << jo.dump(1) << "\n";
            } else {
                out << jo.dump(1) << "\n";
            }
        });
    }

    if (*solve) {
        return run_command("pentagon solve", out, err, [&](RunReport& rep) {
            rep.ring = "rational";
            rep.truncation = degree;
            AlphabetPtr a = xy_alphabet();
            Series<Rat> log_parts(a, degree);
            json dims = json::array();
            for (int d = 1; d <= degree; ++d) {
                Series<Rat> cur = exp_series(log_parts).truncated(d - 1);
                PentagonExtension ext = pentagon_extend(cur, d, grt1_mode);
                json jd;
                jd["degree"] = d;
                jd["consistent"] = ext.consistent;
                jd["dimension"] = ext.kernel.size();
                jd["lyndon"] = json::array();
                for (const Word& w : ext.lyndon)
                    jd["lyndon"].push_back(w.display(*a));
                jd["particular"] = json::array();
                for (const Rat& c : ext.particular)
                    jd["particular"].push_back(rat_to_string(c));
                jd["kernel"] = json::array();
                for (const auto& vec : ext.kernel) {
                    json kv_ = json::array();
                    for (const Rat& c : vec) kv_.push_back(rat_to_string(c));
                    jd["kernel"].push_back(kv_);
                }
                dims.push_back(jd);
                if (!ext.consistent) break;
                log_parts =
                    log_parts + lie_from_coords(a, degree, ext.lyndon, ext.particular);
            }
            ResidualReport note = ResidualReport::make<Rat>("pentagon-solve", degree);
            note.note = "affine solution spaces by degree";
            rep.residuals.push_back(note);
            out << dims.dump(1) << "\n";
        });
    }

    if (*rel) {
        return run_command("relations", out, err, [&](RunReport& rep) {
            rep.ring = verify_kz ? "complex" : "symbolic";
            rep.truncation = degree;
            rep.threshold = cfg.threshold;
            if (degree > 5)
                throw InputError("symbolic relation extraction is limited to degree 5");
            RelationSet rs = extract_relations(degree);
            json jr;
            jr["unknowns"] = rs.unknowns;
            jr["relations"] = json::array();
            for (const Poly& p : rs.relations) jr["relations"].push_back(p.to_string());
            if (verify_kz) {
                rep.precision = cfg.digits;
                MzvTable table(cfg.digits, cfg.cache_path);
                auto kz = build_phi_kz(degree, table);
                table.save();
                ResidualReport worst =
                    ResidualReport::make<BigComplex>("relations-on-kz", degree);
                for (const Poly& p : rs.relations) {
                    BigComplex v = evaluate_relation(p, kz.phi);
                    worst.consider(v, p.to_string());
                }
                rep.add(worst, cfg.threshold);
            }
            out << jr.dump(1) << "\n";
        });
    }

    if (*mzv_eval) {
        return run_command("mzv eval", out, err, [&](RunReport& rep) {
            rep.ring = "complex";
            rep.precision = cfg.digits;
            MzvIndex idx = MzvIndex::parse(index_text);
            MzvTable table(cfg.digits, cfg.cache_path);
            BigFloat v = table.value(idx);
            table.save();
            json j{{"index", idx.k},
                   {"symbol", idx.symbol()},
                   {"digits", cfg.digits},
                   {"value", v.to_string(cfg.digits)}};
            out << j.dump(1) << "\n";
        });
    }

    if (*buildkz) {
        return run_command("build-kz", out, err, [&](RunReport& rep) {
            rep.ring = "complex";
            rep.precision = cfg.digits;
            rep.truncation = cfg.weight;
            rep.threshold = cfg.threshold;
            MzvTable table(cfg.digits, cfg.cache_path);
            AssociatorCandidate kz = build_phi_kz(cfg.weight, table);
            table.save();
            rep.add(group_like_residual(kz.phi), cfg.threshold);
            json jo = series_to_json(kz.phi, cfg.digits);
            jo["mu"] = RingTraits<BigComplex>::to_string(kz.mu);
            if (!outpath.empty()) {
                std::ofstream of(outpath);
                of << jo.dump(1) << "\n";
            } else {
                out << jo.dump(1) << "\n";
            }
        });
    }

    if (*zag) {
        return run_command("zagier", out, err, [&](RunReport& rep) {
            rep.ring = "complex";
            rep.precision = cfg.digits;
            rep.threshold = cfg.threshold;
            MzvTable table(cfg.digits, cfg.cache_path);
            rep.add(zagier_check(za, zb, table), cfg.threshold);
            table.save();
        });
    }

    if (*kv_from) {
        return run_command("kv from-assoc", out, err, [&](RunReport& rep) {
            AnySeries any;
            load_series_input(rep, path, any);
            rep.threshold = cfg.threshold;
            MuSpec mu = MuSpec::parse(mu_text);
            if (std::holds_alternative<Series<BigComplex>>(any)) {
                const auto& phi = std::get<Series<BigComplex>>(any);
                BigComplex muv(0L, 64);
                if (mu.kind == MuSpec::Kind::TwoPiI) {
                    mpfr_prec_t wp = bits_for_digits(cfg.digits + 12);
                    muv = BigComplex(BigFloat(0L, wp), pi_machin(wp).mul_si(2));
                } else if (mu.kind == MuSpec::Kind::Auto) {
                    muv = recover_mu(phi, cfg.threshold).complex_value;
                } else {
                    muv = phi.scalar_from_rat(mu.rational);
                }
                TAutPair<BigComplex> P = kv_pair_from_associator(muv, phi);
                TAutPair<BigComplex> Pm = kv_pair_from_associator(-muv, phi);
                auto r = kv_main_residual(P);
                r.note = "+mu branch";
                auto rm = kv_main_residual(Pm);
                rm.note = "-mu branch (reported only)";
                rep.add(r, cfg.threshold);
                rep.residuals.push_back(rm);
                json jo = taut_pair_to_json(P, cfg.digits);
                if (!outpath.empty()) {
                    std::ofstream of(outpath);
                    of << jo.dump(1) << "\n";
                } else {
                    out << jo.dump(1) << "\n";
                }
            } else if (std::holds_alternative<Series<Rat>>(any)) {
                const auto& phi = std::get<Series<Rat>>(any);
                if (mu.kind != MuSpec::Kind::Rational)
                    throw InputError("rational series needs a rational --mu");
                TAutPair<Rat> P = kv_pair_from_associator(mu.rational, phi);
                rep.add(kv_main_residual(P), 0.0);
                json jo = taut_pair_to_json(P);
                if (!outpath.empty()) {
                    std::ofstream of(outpath);
                    of << jo.dump(1) << "\n";
                } else {
                    out << jo.dump(1) << "\n";
                }
            } else {
                throw InputError("kv from-assoc needs a rational or complex series");
            }
        });
    }

    if (*kv_main || *kv_krv) {
        bool main_eq = static_cast<bool>(*kv_main);
        return run_command(main_eq ? "kv check-main" : "kv check-krv", out, err,
                           [&](RunReport& rep) {
            json j = load_json_file(path);
            rep.inputs.emplace_back(path, hash_hex(path));
            rep.threshold = cfg.threshold;
            std::string ring = j.at("p1").value("ring", "rational");
            rep.ring = ring;
            if (ring == "complex") {
                TAutPair<BigComplex> P = taut_pair_from_json<BigComplex>(j);
                rep.truncation = P.truncation();
                if (main_eq) {
                    rep.add(kv_main_residual(P), cfg.threshold);
                } else {
                    KrvReport k = krv_check(P, cfg.threshold);
                    rep.add(k.fixed_point, cfg.threshold);
                    ResidualReport lin =
                        ResidualReport::make<BigComplex>("krv0-linear-terms",
                                                         rep.truncation);
                    lin.zero = k.linear_free;
                    lin.exact = true;
                    lin.note = k.necessary_pass
                                   ? "necessary conditions passed (Jacobian "
                                     "condition not implemented)"
                                   : "necessary conditions failed";
                    rep.add(lin, cfg.threshold);
                }
            } else if (ring == "rational") {
                TAutPair<Rat> P = taut_pair_from_json<Rat>(j);
                rep.truncation = P.truncation();
                if (main_eq) {
                    rep.add(kv_main_residual(P), 0.0);
                } else {
                    KrvReport k = krv_check(P, 0.0);
                    rep.add(k.fixed_point, 0.0);
                    ResidualReport lin =
                        ResidualReport::make<Rat>("krv0-linear-terms", rep.truncation);
                    lin.zero = k.linear_free;
                    lin.note = k.necessary_pass
                                   ? "necessary conditions passed (Jacobian "
                                     "condition not implemented)"
                                   : "necessary conditions failed";
                    rep.add(lin, 0.0);
                }
            } else {
                throw InputError("pair ring must be rational or complex");
            }
        });
    }

    if (*self) {
        return run_command("selftest", out, err, [&](RunReport& rep) {
            rep.ring = "rational";
            AlphabetPtr a = xy_alphabet();
            auto expect = [&](bool ok, const std::string& what) {
                ResidualReport r = ResidualReport::make<Rat>(what, 0);
                r.zero = ok;
                rep.add(r, 0.0);
            };
            // shuffle counts
            Word u = Word::parse(*a, "X0 X1"), v = Word::parse(*a, "X0");
            long total = 0;
            for (const auto& [w, m] : shuffle_words(u, v)) total += m;
            expect(total == 3, "shuffle-cardinality");
            // exp/log roundtrip
            Series<Rat> x0 = Series<Rat>::generator(a, 5, 0);
            Series<Rat> x1 = Series<Rat>::generator(a, 5, 1);
            Series<Rat> g = exp_series(x0 + x1 + x0 * x1 - x1 * x0);
            expect(log_series(exp_series(log_series(g))) == log_series(g),
                   "exp-log-roundtrip");
            expect(group_like_residual(exp_series(x0 + x1)).zero, "group-like-exp");
            // braid dimensions
            auto alg = braid_algebra(4);
            expect(alg->dimension(2) == 25 && alg->dimension(3) == 90,
                   "braid-dimensions");
            // pentagon solver dims to degree 4
            auto tower = solve_pentagon_tower(4, {});
            expect(tower.kernel_dims == std::vector<size_t>({0, 1, 1, 0}),
                   "pentagon-kernel-dims");
            // Theorem 1.3 at mu = 12, degree 4
            auto t12 = solve_pentagon_tower(4, {{2, {Rat(6)}}});
            auto [h1, h2] = hexagon_residuals(Rat(12), t12.phi);
            expect(h1.zero && h2.zero, "pentagon-implies-hexagons");
            auto ds = double_shuffle_residual(t12.phi);
            expect(ds.zero, "pentagon-implies-double-shuffle");
        });
    }

    out << app.help() << "\n";
    return 2;
}

}  // namespace assoclab
