#pragma once

// Descent by the 2-isogeny: torsor construction, everywhere-local
// solvability, both Selmer groups, the Cassels ratio cross-check, and
// the rank bound.

#include <vector>

#include "rank0/curve.hpp"

namespace rank0 {

// d w^2 = d^2 + A d z^2 + B z^4 with d squarefree.  Smoothness needs
// B != 0 and A^2 - 4B != 0; both are enforced.
struct TorsorQuartic {
    Int d, A, B;

    TorsorQuartic(Int d_, Int A_, Int B_);
};

struct Place {
    bool archimedean = true;
    Int p = 0;

    static Place infinite() { return {}; }
    static Place finite(Int p) { return {false, std::move(p)}; }
};

// All squarefree d (both signs) supported on the primes of B; contains
// +-1; ordered by (|d|, sign) with the positive one first.
std::vector<Int> candidate_classes(const Int& B);

// Whether the smooth projective model of the torsor has a point over the
// completion at the given place.
bool torsor_locally_solvable(const TorsorQuartic& T, const Place& place);

struct SelmerGroup {
    enum class Side { phi, phihat };
    Side side;
    std::vector<Int> elements;  // canonical squarefree reps, sorted, 1 first
    int dimension = 0;          // log2 |elements|
};

// Sel_phi(E/Q): torsor coefficients (A, B) = (a', b').
SelmerGroup selmer_phi(const IsogenousPair& pair);

// Sel_phihat(E'/Q) computed directly: coefficients (A, B) = (4a, 16b).
SelmerGroup selmer_phihat(const IsogenousPair& pair);

// |c| with c phi* omega' = omega, from the minimal-model scalings of the
// two curves; always 1 or 1/2 for valid pairs (asserted).
Rat period_ratio(const IsogenousPair& pair);

// Right-hand side of the Cassels formula:
//   (|E'(Q)[phihat]| / |E(Q)[phi]|) * (Omega_E/Omega_E') * prod c_p(E)/c_p(E')
Rat cassels_ratio(const IsogenousPair& pair);

// Rank bound from the two Selmer groups.  When |Sel_phi| = 2 and the
// 2-torsion is cyclic the exact-sequence route gives dim Sel_phihat - 1;
// otherwise the generic bound dim phi + dim phihat - 2 applies.  route
// (when non-null) receives "exact-sequence" or "generic".
int rank_bound_from_selmer(const SelmerGroup& phi, const SelmerGroup& phihat, bool cyclic2,
                           std::string* route = nullptr);

int rank_upper_bound(const IsogenousPair& pair);

}  // namespace rank0
