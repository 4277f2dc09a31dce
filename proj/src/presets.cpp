#include "vcnls/presets.hpp"

#include <map>

#include "vcnls/errors.hpp"

namespace vcnls::presets {

namespace {

verify::Grid win(double x0, double x1, double t0, double t1) {
    verify::Grid g;
    g.x_min = x0;
    g.x_max = x1;
    g.nx = 65;
    g.t_min = t0;
    g.t_max = t1;
    g.nt = 65;
    return g;
}

std::map<std::string, CasePreset> build() {
    std::map<std::string, CasePreset> m;

    auto evolve_default = [] {
        numsolver::EvolutionConfig e;
        e.x_min = -2.0;
        e.x_max = 2.0;
        e.nx = 513;
        e.t0 = 0.0;
        e.t1 = 0.3;
        return e;
    }();

    {
        CasePreset p;
        p.case_id = "rw1-hyp";
        p.kind = SeedKind::rw1;
        p.rw = {.d2 = 1.0, .q = 0.0}; // A = 1
        p.window = win(-0.9, 0.9, 0.20, 0.65);
        p.evolve = evolve_default;
        m[p.case_id] = p;
    }
    {
        CasePreset p;
        p.case_id = "rw1-exp";
        p.kind = SeedKind::rw1;
        p.rw = {.d2 = 1.0, .q = -1.0}; // A = -2: tight pole clearance
        p.window = win(-0.7, 0.7, 0.20, 0.42);
        p.evolve = evolve_default;
        p.evolve.x_min = -1.0;
        p.evolve.x_max = 1.0;
        m[p.case_id] = p;
    }
    {
        CasePreset p;
        p.case_id = "rw2-sech";
        p.kind = SeedKind::rw2;
        p.rw = {.d2 = -0.5, .q = 0.0}; // A = -0.5
        p.window = win(-0.6, 0.6, 0.20, 0.90);
        p.evolve = evolve_default;
        m[p.case_id] = p;
    }
    {
        CasePreset p;
        p.case_id = "rw2-tcos";
        p.kind = SeedKind::rw2;
        p.rw = {.d2 = 1.0, .q = -1.0}; // A = -2 again; fastest carrier of the set
        p.window = win(-0.2, 0.2, 0.06, 0.13);
        p.evolve = evolve_default;
        p.evolve.x_min = -0.5;
        p.evolve.x_max = 0.5;
        p.evolve.t1 = 0.13;
        m[p.case_id] = p;
    }
    {
        CasePreset p;
        p.case_id = "db-hyp";
        p.kind = SeedKind::db;
        p.db = {.C = 1.0, .e = -1.0, .a3 = 1.0, .b3 = 1.0};
        p.window = win(-1.8, 1.8, 0.02, 0.24); // domain closes at ~0.48
        p.evolve = evolve_default;
        m[p.case_id] = p;
    }
    {
        CasePreset p;
        p.case_id = "db-sin";
        p.kind = SeedKind::db;
        p.db = {.C = 2.0, .e = -1.0, .a3 = -1.0, .b3 = 1.0};
        p.window = win(-1.2, 1.2, 0.05, 0.85);
        p.evolve = evolve_default;
        m[p.case_id] = p;
    }
    {
        CasePreset p;
        p.case_id = "blowup-free";
        p.kind = SeedKind::none;
        p.window = win(-2.0, 2.0, 0.0, 0.9);
        p.evolve = evolve_default;
        m[p.case_id] = p;
    }
    {
        CasePreset p;
        p.case_id = "nd2-sech";
        p.kind = SeedKind::db;
        p.db = {.C = 1.0, .e = -1.0, .a3 = 1.0, .b3 = 1.0};
        p.window_nd.ndim = 2;
        p.window_nd.lo = {-0.9, -0.9, 0.0};
        p.window_nd.hi = {0.9, 0.9, 0.0};
        p.window_nd.n = {33, 33, 1};
        p.window_nd.t_min = 0.05;
        p.window_nd.t_max = 0.20;
        p.window_nd.nt = 17;
        m[p.case_id] = p;
    }
    {
        CasePreset p;
        p.case_id = "nd3-erf";
        p.kind = SeedKind::rw1;
        p.rw = {.d2 = 0.5, .q = 0.0}; // A = 0.5
        p.window_nd.ndim = 3;
        p.window_nd.lo = {-1.2, -1.2, -1.2};
        p.window_nd.hi = {1.2, 1.2, 1.2};
        p.window_nd.n = {49, 49, 49};
        p.window_nd.t_min = 0.10;
        p.window_nd.t_max = 0.50;
        p.window_nd.nt = 33;
        m[p.case_id] = p;
    }
    return m;
}

} // namespace

const CasePreset& preset(const std::string& case_id) {
    static const std::map<std::string, CasePreset> presets = build();
    auto it = presets.find(case_id);
    if (it == presets.end()) throw UnknownCaseError("no preset for case '" + case_id + "'");
    return it->second;
}

manakov::SeedPair default_seed(const CasePreset& p) {
    switch (p.kind) {
    case SeedKind::db:
        return manakov::db_soliton(p.db);
    case SeedKind::rw1:
        return manakov::rogue_wave_I(p.rw);
    case SeedKind::rw2:
        return manakov::rogue_wave_II(p.rw);
    case SeedKind::none:
        break;
    }
    throw ValidationError("case '" + p.case_id + "' carries no seed (singular family)");
}

manakov::SeedPair default_seed(const std::string& case_id) {
    return default_seed(preset(case_id));
}

} // namespace vcnls::presets
