// Command-line surface: case catalog, field CSV emission, residual
// verification ladders, Riccati closed-form-vs-ODE tables, blow-up scans,
// and the method-of-lines cross-check.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage/validation error,
// 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "vcnls/coefficients.hpp"
#include "vcnls/errors.hpp"
#include "vcnls/manakov.hpp"
#include "vcnls/numsolver.hpp"
#include "vcnls/parallel.hpp"
#include "vcnls/presets.hpp"
#include "vcnls/riccati.hpp"
#include "vcnls/transform.hpp"
#include "vcnls/verify.hpp"

namespace {

using nlohmann::json;
using namespace vcnls;

struct Manifest {
    json j;
    std::string path;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Manifest(const std::string& command, const std::string& out_path) {
        j["command"] = command;
        j["outputs"] = json::array();
        path = out_path;
    }
    void add_output(const std::string& p) { j["outputs"].push_back(p); }
    void write(bool pass) {
        j["pass"] = pass;
        j["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ofstream os(path);
        if (!os) throw ValidationError("cannot write manifest: " + path);
        os << j.dump(2) << "\n";
    }
};

// Seed parameter flags shared by field/verify/evolve.
struct SeedFlags {
    std::optional<double> d2, q, C, e, a3, b3;

    presets::CasePreset apply(const presets::CasePreset& base) const {
        presets::CasePreset p = base;
        if (d2) p.rw.d2 = *d2;
        if (q) p.rw.q = *q;
        if (C) p.db.C = *C;
        if (e) p.db.e = *e;
        if (a3) p.db.a3 = *a3;
        if (b3) p.db.b3 = *b3;
        return p;
    }
    void add_to(CLI::App* cmd) {
        auto opt = [&](const char* name, std::optional<double>& slot, const char* desc) {
            cmd->add_option_function<double>(
                   name, [&slot](const double& v) { slot = v; }, desc)
                ->expected(1);
        };
        opt("--d2", d2, "rogue-wave d2");
        opt("--q", q, "rogue-wave q");
        opt("--C", C, "dark-soliton amplitude C");
        opt("--e", e, "dark-soliton wavenumber e");
        opt("--a3", a3, "bright polarization a3");
        opt("--b3", b3, "bright polarization b3");
    }
    json to_json(const presets::CasePreset& p) const {
        switch (p.kind) {
        case presets::SeedKind::db:
            return {{"kind", "db"}, {"C", p.db.C}, {"e", p.db.e}, {"a3", p.db.a3},
                    {"b3", p.db.b3}};
        case presets::SeedKind::rw1:
        case presets::SeedKind::rw2:
            return {{"kind", p.kind == presets::SeedKind::rw1 ? "rw1" : "rw2"},
                    {"d2", p.rw.d2},
                    {"q", p.rw.q}};
        default:
            return {{"kind", "none"}};
        }
    }
};

json grid_json(const verify::Grid& g) {
    return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
            {"t_min", g.t_min}, {"t_max", g.t_max}, {"nt", g.nt}};
}

// ---------------------------------------------------------------- cases ----

int cmd_cases(bool as_json) {
    if (as_json) {
        std::cout << coeff::catalog_json().dump(2) << "\n";
        return 0;
    }
    const auto& ids = coeff::case_ids();
    for (const auto& id : ids) {
        auto cs = coeff::builtin_case(id);
        std::printf("%-12s n=%d  s=%g  lambda=%g  l0=%+d  domain=[%g, %g]%s\n", id.c_str(), cs.n,
                    cs.s, cs.lambda, cs.l0, cs.t_lo, cs.t_hi,
                    cs.integrable_h ? "" : "  (singular family)");
    }
    std::printf("%zu cases\n", ids.size());
    return 0;
}

// ---------------------------------------------------------------- field ----

struct FieldArgs {
    std::string case_id;
    SeedFlags seed;
    double x_min = 0, x_max = 0, t_min = 0, t_max = 0; // 0,0 = preset default
    int nx = -1, nt = -1;                              // -1 = preset default
    std::string out = "field.csv";
    std::string manifest;
};

int cmd_field(const FieldArgs& a) {
    auto cs = coeff::builtin_case(a.case_id);
    if (cs.n != 1)
        throw ValidationError("field CSV is 1-D; case '" + a.case_id + "' has n=" +
                              std::to_string(cs.n));
    presets::CasePreset p = a.seed.apply(presets::preset(a.case_id));
    auto seed = presets::default_seed(p);
    auto sol = transform::lift(seed, cs);

    double x0 = a.x_min, x1 = a.x_max;
    if (x0 == 0 && x1 == 0) {
        x0 = -p.field_x_half;
        x1 = p.field_x_half;
    }
    double t0 = a.t_min, t1 = a.t_max;
    if (t0 == 0 && t1 == 0) {
        t0 = cs.t_lo;
        t1 = cs.t_lo + 0.9 * (cs.t_hi - cs.t_lo);
    }
    int nx = a.nx >= 0 ? a.nx : p.field_nx, nt = a.nt >= 0 ? a.nt : p.field_nt;
    if (nx < 2 || nt < 2) throw ValidationError("field grid needs nx, nt >= 2");
    if (!(x1 > x0) || !(t1 >= t0)) throw ValidationError("field window must have positive extent");

    std::vector<double> xs(nx), ts(nt);
    for (int j = 0; j < nx; ++j) xs[j] = x0 + (x1 - x0) * j / (nx - 1);
    for (int m = 0; m < nt; ++m) ts[m] = t0 + (t1 - t0) * (nt == 1 ? 0 : m) / (nt - 1);

    Manifest mf("field", a.manifest.empty() ? a.out + ".manifest.json" : a.manifest);
    mf.j["case_id"] = a.case_id;
    mf.j["seed"] = a.seed.to_json(p);
    mf.j["grid"] = {{"x_min", x0}, {"x_max", x1}, {"nx", nx},
                    {"t_min", t0}, {"t_max", t1}, {"nt", nt}};
    std::ofstream os(a.out);
    if (!os) throw ValidationError("cannot write " + a.out);
    transform::write_intensity_csv(os, sol, xs, ts);
    mf.add_output(a.out);
    mf.write(true);
    std::printf("wrote %s (%d x %d samples)\n", a.out.c_str(), nx, nt);
    return 0;
}

// --------------------------------------------------------------- verify ----

struct VerifyArgs {
    std::string case_id;
    SeedFlags seed;
    std::string system = "vcnls"; // or "manakov"
    std::vector<int> grids;       // 1-D ladder nx values; empty = 65,129,257
    int levels = 0;               // n-D ladder depth; 0 = preset default
    double corrupt = 1.0;         // multiplies h (vcnls) or lambda (manakov)
    std::string out = "verify_report.json";
    std::string manifest;
};

int cmd_verify(const VerifyArgs& a) {
    auto cs = coeff::builtin_case(a.case_id);
    presets::CasePreset p = a.seed.apply(presets::preset(a.case_id));
    Manifest mf("verify", a.manifest.empty() ? a.out + ".manifest.json" : a.manifest);
    mf.j["case_id"] = a.case_id;
    mf.j["seed"] = a.seed.to_json(p);
    mf.j["system"] = a.system;
    mf.j["corrupt"] = a.corrupt;

    json levels = json::array();
    std::vector<double> hs, rs;
    double bar = 1e-5, min_order = 3.3;

    if (cs.n > 1) {
        if (a.system != "vcnls")
            throw ValidationError("--system manakov applies to 1-D seeds only");
        auto sol = transform::lift_nd(presets::default_seed(p), cs);
        verify::GridND g = p.window_nd;
        int nlev = a.levels ? a.levels : (cs.n == 2 ? 3 : 2);
        if (cs.n == 3) { // no absolute bar at reachable resolution; order carries the test
            bar = 0.0;
            min_order = 3.0;
        }
        for (int lv = 0; lv < nlev; ++lv) {
            auto rep = verify::residual_nd(sol, g);
            hs.push_back(std::sqrt(g.h(0) * g.ht()));
            rs.push_back(rep.max_residual());
            levels.push_back({{"n", g.n[0]}, {"nt", g.nt}, {"max", rep.max_residual()},
                              {"l2", std::max(rep.l2_eq1, rep.l2_eq2)}});
            g = g.refined();
        }
    } else {
        std::vector<int> ladder = a.grids.empty() ? std::vector<int>{65, 129, 257} : a.grids;
        verify::Grid base = p.window;
        manakov::SeedPair seed = presets::default_seed(p);

        std::optional<transform::LiftedSolution> sol;
        coeff::CoefficientSet cs_used = cs;
        double lambda_used = cs.lambda;
        if (a.system == "vcnls") {
            sol.emplace(transform::lift(seed, cs));
            if (a.corrupt != 1.0) {
                auto h_old = cs.h;
                double f = a.corrupt;
                cs_used.h = [h_old, f](double t) { return f * h_old(t); };
            }
        } else if (a.system == "manakov") {
            lambda_used = cs.lambda * a.corrupt;
        } else {
            throw ValidationError("unknown --system '" + a.system + "'");
        }

        for (int n : ladder) {
            if (n < 9) throw ValidationError("ladder grids must have >= 9 nodes");
            verify::Grid g = base;
            g.nx = n;
            g.nt = n;
            verify::ResidualReport rep =
                a.system == "vcnls"
                    ? verify::residual_vcnls(cs_used, *sol, g)
                    : verify::residual_manakov(seed, g, cs.l0, lambda_used, cs.s);
            hs.push_back(std::sqrt(g.hx() * g.ht()));
            rs.push_back(rep.max_residual());
            levels.push_back({{"nx", g.nx}, {"nt", g.nt}, {"max", rep.max_residual()},
                              {"l2", std::max(rep.l2_eq1, rep.l2_eq2)},
                              {"grid", grid_json(g)}});
        }
    }

    auto conv = verify::fit_convergence(hs, rs);
    bool pass = conv.observed_order >= min_order || conv.saturated;
    if (bar > 0 && rs.back() > bar) pass = false;

    mf.j["levels"] = levels;
    mf.j["observed_order"] = conv.observed_order;
    mf.j["saturated"] = conv.saturated;
    mf.j["residual_bar"] = bar;
    mf.j["min_order"] = min_order;

    std::ofstream os(a.out);
    if (!os) throw ValidationError("cannot write " + a.out);
    json report = mf.j;
    report.erase("outputs");
    os << report.dump(2) << "\n";
    mf.add_output(a.out);
    mf.write(pass);

    for (const auto& lv : levels)
        std::printf("  level %s: max residual %.3e\n",
                    lv.contains("nx") ? std::to_string((int)lv["nx"]).c_str()
                                      : std::to_string((int)lv["n"]).c_str(),
                    (double)lv["max"]);
    std::printf("observed order %.2f (min %.2f)%s -> %s\n", conv.observed_order, min_order,
                conv.saturated ? " [saturated]" : "", pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

// -------------------------------------------------------------- riccati ----

struct RiccatiArgs {
    std::string case_id;
    riccati::RiccatiInit init;
    double t1 = 0.0; // 0 = case domain end
    int nt = 101;
    std::string out = "riccati.csv";
    std::string manifest;
};

int cmd_riccati(const RiccatiArgs& a) {
    auto cs = coeff::builtin_case(a.case_id);
    if (cs.n != 1)
        throw ValidationError("riccati table is for 1-D cases; use verify for n-D cases");
    double t1 = a.t1 > 0 ? a.t1 : cs.t_hi;
    if (!cs.in_domain(t1)) throw ValidationError("t1 outside the case domain");
    if (a.nt < 2) throw ValidationError("need at least 2 sample times");

    auto ctx = riccati::make_context(cs, t1);
    std::vector<riccati::RiccatiState> rows;
    std::vector<std::string> labels;
    double max_diff = 0.0;
    for (int m = 0; m < a.nt; ++m) {
        double t = cs.t_lo + (t1 - cs.t_lo) * m / (a.nt - 1);
        auto closed = ctx.eval(a.init, t);
        rows.push_back(closed);
        labels.push_back("closed");
    }
    for (int m = 0; m < a.nt; ++m) {
        double t = cs.t_lo + (t1 - cs.t_lo) * m / (a.nt - 1);
        auto ode = riccati::ode_oracle(cs, a.init, t);
        rows.push_back(ode);
        labels.push_back("ode");
        const auto& closed = rows[m];
        for (double d : {closed.alpha - ode.alpha, closed.beta - ode.beta,
                         closed.gamma - ode.gamma, closed.delta - ode.delta,
                         closed.epsilon - ode.epsilon, closed.kappa - ode.kappa,
                         closed.mu - ode.mu})
            max_diff = std::max(max_diff, std::abs(d));
    }

    Manifest mf("riccati", a.manifest.empty() ? a.out + ".manifest.json" : a.manifest);
    mf.j["case_id"] = a.case_id;
    mf.j["init"] = {{"alpha0", a.init.alpha0}, {"beta0", a.init.beta0},
                    {"gamma0", a.init.gamma0}, {"delta0", a.init.delta0},
                    {"epsilon0", a.init.epsilon0}, {"kappa0", a.init.kappa0},
                    {"mu0", a.init.mu0}};
    mf.j["t1"] = t1;
    mf.j["nt"] = a.nt;
    mf.j["max_closed_vs_ode"] = max_diff;

    std::ofstream os(a.out);
    if (!os) throw ValidationError("cannot write " + a.out);
    riccati::write_csv(os, rows, labels);
    mf.add_output(a.out);
    mf.write(true);
    std::printf("wrote %s; max |closed - ode| = %.3e\n", a.out.c_str(), max_diff);
    return 0;
}

// --------------------------------------------------------------- blowup ----

struct BlowupArgs {
    double alpha0 = -0.25;
    double h_const = 1.0;
    double s = 1.0;
    double y = 0.0, z = 0.0;
    double t_max = 0.0; // 0 = auto (past T_b when it exists)
    int nt = 25;
    std::string out = "blowup.csv";
    std::string manifest;
};

int cmd_blowup(const BlowupArgs& a) {
    auto cs = coeff::builtin_case("blowup-free");
    double hc = a.h_const;
    cs.h = [hc](double) { return hc; };
    cs.s = a.s;

    riccati::RiccatiInit init;
    init.alpha0 = a.alpha0;
    auto rep = riccati::blowup_time(cs, init, {cs.t_lo, cs.t_hi});

    Manifest mf("blowup", a.manifest.empty() ? a.out + ".manifest.json" : a.manifest);
    mf.j["alpha0"] = a.alpha0;
    mf.j["h_const"] = a.h_const;
    mf.j["s"] = a.s;

    if (!rep.t_blowup) {
        std::printf("no blow-up: mu(t) has no zero in [%g, %g] for alpha0=%g\n", cs.t_lo, cs.t_hi,
                    a.alpha0);
        mf.j["t_blowup"] = nullptr;
        mf.write(true);
        return 0;
    }
    double tb = *rep.t_blowup;
    std::printf("T_b = %.12g (mu first vanishes there)\n", tb);
    mf.j["t_blowup"] = tb;

    double horizon = a.t_max > 0 ? a.t_max : 0.95 * tb;
    if (horizon >= tb) {
        std::fprintf(stderr, "warning: scan horizon %g is past T_b=%g; clipping\n", horizon, tb);
        horizon = 0.999 * tb;
    }
    if (a.nt < 2) throw ValidationError("need at least 2 scan times");

    auto sol = transform::blowup_solution(cs, init, {.y = a.y, .z = a.z}, horizon);
    std::vector<double> times(a.nt);
    for (int m = 0; m < a.nt; ++m) times[m] = cs.t_lo + (horizon - cs.t_lo) * m / (a.nt - 1);
    auto scan = verify::blowup_scan(sol, times);

    std::ofstream os(a.out);
    if (!os) throw ValidationError("cannot write " + a.out);
    os << "t,sup_abs,mu\n";
    os.precision(17);
    for (const auto& r : scan) os << r.t << "," << r.sup_abs << "," << r.mu << "\n";
    mf.add_output(a.out);
    mf.j["scan_horizon"] = horizon;
    mf.write(true);
    std::printf("wrote %s (%d scan rows)\n", a.out.c_str(), a.nt);
    return 0;
}

// --------------------------------------------------------------- evolve ----

struct EvolveArgs {
    std::string case_id;
    SeedFlags seed;
    double t0 = 0.0, t1 = -1.0; // t1 < 0 = preset default
    int nx = -1;                // -1 = preset default
    double x_min = 0, x_max = 0;
    double tol = 1e-8;
    double max_l2 = 1e-3;
    double corrupt_h = 1.0;
    std::string out = "evolve_report.json";
    std::string manifest;
};

int cmd_evolve(const EvolveArgs& a) {
    auto cs = coeff::builtin_case(a.case_id);
    if (cs.n != 1) throw ValidationError("evolve handles 1-D cases only");
    presets::CasePreset p = a.seed.apply(presets::preset(a.case_id));
    auto sol = transform::lift(presets::default_seed(p), cs);

    numsolver::EvolutionConfig cfg = p.evolve;
    cfg.t0 = a.t0;
    if (a.t1 >= 0) cfg.t1 = a.t1;
    if (a.nx >= 0) cfg.nx = a.nx;
    if (!(a.x_min == 0 && a.x_max == 0)) {
        cfg.x_min = a.x_min;
        cfg.x_max = a.x_max;
    }
    cfg.rel_tol = cfg.abs_tol = a.tol;

    Manifest mf("evolve", a.manifest.empty() ? a.out + ".manifest.json" : a.manifest);
    mf.j["case_id"] = a.case_id;
    mf.j["seed"] = a.seed.to_json(p);
    mf.j["grid"] = {{"x_min", cfg.x_min}, {"x_max", cfg.x_max}, {"nx", cfg.nx},
                    {"t0", cfg.t0}, {"t1", cfg.t1}};
    mf.j["tolerances"] = {{"rel_tol", cfg.rel_tol}, {"abs_tol", cfg.abs_tol},
                          {"max_l2", a.max_l2}};
    mf.j["corrupt_h"] = a.corrupt_h;

    numsolver::CrosscheckReport rep;
    if (cfg.t1 == cfg.t0) {
        rep.l2_rel = 0.0; // nothing evolves over an empty horizon
        rep.linf_rel = 0.0;
        rep.nx = cfg.nx;
        rep.t = cfg.t1;
    } else {
        std::optional<coeff::CoefficientSet> bad;
        if (a.corrupt_h != 1.0) {
            bad = cs;
            auto h_old = cs.h;
            double f = a.corrupt_h;
            bad->h = [h_old, f](double t) { return f * h_old(t); };
        }
        rep = numsolver::crosscheck(sol, cfg, bad ? &*bad : nullptr);
    }

    bool pass = rep.l2_rel <= a.max_l2;
    mf.j["l2_rel"] = rep.l2_rel;
    mf.j["linf_rel"] = rep.linf_rel;

    std::ofstream os(a.out);
    if (!os) throw ValidationError("cannot write " + a.out);
    json report = mf.j;
    report.erase("outputs");
    os << report.dump(2) << "\n";
    mf.add_output(a.out);
    mf.write(pass);

    std::printf("l2_rel = %.3e, linf_rel = %.3e over [%g, %g] at nx=%d -> %s\n", rep.l2_rel,
                rep.linf_rel, cfg.t0, cfg.t1, cfg.nx, pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    omp_set_num_threads(vcnls::par::max_threads());

    CLI::App app{"explicit solutions of variable-coefficient coupled NLS systems, "
                 "with numerical verification"};
    app.require_subcommand(1);

    std::function<int()> action;

    // cases
    bool cases_json = false;
    auto* c_cases = app.add_subcommand("cases", "list the builtin case catalog");
    c_cases->add_flag("--json", cases_json, "machine-readable catalog");
    c_cases->callback([&] { action = [&] { return cmd_cases(cases_json); }; });

    // field
    FieldArgs fa;
    auto* c_field = app.add_subcommand("field", "emit |psi|^2, |phi|^2 CSV for plotting");
    c_field->add_option("--case", fa.case_id, "builtin case id")->required();
    fa.seed.add_to(c_field);
    c_field->add_option("--x-min", fa.x_min, "window left edge");
    c_field->add_option("--x-max", fa.x_max, "window right edge");
    c_field->add_option("--t-min", fa.t_min, "window start time");
    c_field->add_option("--t-max", fa.t_max, "window end time");
    c_field->add_option("--nx", fa.nx, "x samples");
    c_field->add_option("--nt", fa.nt, "t samples");
    c_field->add_option("--out", fa.out, "output CSV path");
    c_field->add_option("--manifest", fa.manifest, "manifest path (default <out>.manifest.json)");
    c_field->callback([&] { action = [&] { return cmd_field(fa); }; });

    // verify
    VerifyArgs va;
    auto* c_verify = app.add_subcommand("verify", "finite-difference residual ladder");
    c_verify->add_option("--case", va.case_id, "builtin case id")->required();
    va.seed.add_to(c_verify);
    c_verify->add_option("--system", va.system, "vcnls (lifted) or manakov (seed only)");
    c_verify->add_option("--grids", va.grids, "1-D ladder sizes (default 65,129,257)")
        ->delimiter(',');
    c_verify->add_option("--levels", va.levels, "n-D ladder depth");
    c_verify->add_option("--corrupt", va.corrupt, "nonlinearity corruption factor");
    c_verify->add_option("--out", va.out, "report JSON path");
    c_verify->add_option("--manifest", va.manifest, "manifest path");
    c_verify->callback([&] { action = [&] { return cmd_verify(va); }; });

    // riccati
    RiccatiArgs ra;
    auto* c_ric = app.add_subcommand("riccati", "closed form vs ODE oracle CSV");
    c_ric->add_option("--case", ra.case_id, "builtin case id")->required();
    c_ric->add_option("--alpha0", ra.init.alpha0, "alpha(0)");
    c_ric->add_option("--beta0", ra.init.beta0, "beta(0), nonzero");
    c_ric->add_option("--gamma0", ra.init.gamma0, "gamma(0)");
    c_ric->add_option("--delta0", ra.init.delta0, "delta(0)");
    c_ric->add_option("--eps0", ra.init.epsilon0, "epsilon(0)");
    c_ric->add_option("--kappa0", ra.init.kappa0, "kappa(0)");
    c_ric->add_option("--mu0", ra.init.mu0, "mu(0), nonzero");
    c_ric->add_option("--t1", ra.t1, "end time (default: case domain end)");
    c_ric->add_option("--nt", ra.nt, "sample count");
    c_ric->add_option("--out", ra.out, "output CSV path");
    c_ric->add_option("--manifest", ra.manifest, "manifest path");
    c_ric->callback([&] { action = [&] { return cmd_riccati(ra); }; });

    // blowup
    BlowupArgs ba;
    auto* c_blow = app.add_subcommand("blowup", "free-particle blow-up scan");
    c_blow->add_option("--alpha0", ba.alpha0, "alpha(0); negative values blow up");
    c_blow->add_option("--h-const", ba.h_const, "constant nonlinearity coefficient");
    c_blow->add_option("--s", ba.s, "coupling exponent");
    c_blow->add_option("--y", ba.y, "phase parameter y");
    c_blow->add_option("--z", ba.z, "phase parameter z (second component)");
    c_blow->add_option("--t-max", ba.t_max, "scan horizon (clipped below T_b)");
    c_blow->add_option("--nt", ba.nt, "scan rows");
    c_blow->add_option("--out", ba.out, "output CSV path");
    c_blow->add_option("--manifest", ba.manifest, "manifest path");
    c_blow->callback([&] { action = [&] { return cmd_blowup(ba); }; });

    // evolve
    EvolveArgs ea;
    auto* c_evolve = app.add_subcommand("evolve", "method-of-lines cross-check");
    c_evolve->add_option("--case", ea.case_id, "builtin case id")->required();
    ea.seed.add_to(c_evolve);
    c_evolve->add_option("--t0", ea.t0, "start time");
    c_evolve->add_option("--t1", ea.t1, "end time (default: case preset)");
    c_evolve->add_option("--nx", ea.nx, "grid points");
    c_evolve->add_option("--x-min", ea.x_min, "window left edge");
    c_evolve->add_option("--x-max", ea.x_max, "window right edge");
    c_evolve->add_option("--tol", ea.tol, "integrator tolerance");
    c_evolve->add_option("--max-l2", ea.max_l2, "pass threshold on relative L2 error");
    c_evolve->add_option("--corrupt-h", ea.corrupt_h, "nonlinearity corruption factor");
    c_evolve->add_option("--out", ea.out, "report JSON path");
    c_evolve->add_option("--manifest", ea.manifest, "manifest path");
    c_evolve->callback([&] { action = [&] { return cmd_evolve(ea); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e); // prints help/error text
        return rc == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const vcnls::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const vcnls::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected failure: %s\n", e.what());
        return 3;
    }
}
