#pragma once

// Per-case defaults: which seed each builtin case carries, verification
// windows sized so the 4th-order stencils actually resolve the field, and
// cross-integration settings.  Windows matter: the rogue-wave seeds have
// complex-plane poles whose distance to the real slice scales like 1/|A| in
// xi and 1/A^2 in tau, so large-|A| cases need narrow, late-starting
// windows before finite differences converge at their nominal order.

#include <string>

#include "vcnls/manakov.hpp"
#include "vcnls/numsolver.hpp"
#include "vcnls/verify.hpp"

namespace vcnls::presets {

enum class SeedKind { none, db, rw1, rw2 };

struct CasePreset {
    std::string case_id;
    SeedKind kind = SeedKind::none;
    manakov::DBParams db{};
    manakov::RWParams rw{};
    verify::Grid window{};        // coarsest ladder level; refine for higher rungs
    verify::GridND window_nd{};   // multi-dimensional cases only
    numsolver::EvolutionConfig evolve{};
    double field_x_half = 6.0;    // plotting half-width for the field command
    int field_nx = 201, field_nt = 201;
};

const CasePreset& preset(const std::string& case_id); // UnknownCaseError

// Seed built from the preset parameters; ValidationError for kinds without one.
manakov::SeedPair default_seed(const CasePreset& p);
manakov::SeedPair default_seed(const std::string& case_id);

} // namespace vcnls::presets
