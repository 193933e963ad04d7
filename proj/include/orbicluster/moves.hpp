#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbicluster/fatgraph.hpp"
#include "orbicluster/geodesic.hpp"

namespace orbicluster {

// One mapping-class-group move together with everything path transport
// needs: the spine before and after plus the shear deltas applied.
// Applying the same move to `after` restores `before` (flips are
// involutions up to the half-edge relabeling of the flipped edge).
struct MoveRecord {
    enum class Kind { FlipInner, FlipPending, InvertSpiral };
    Kind kind = Kind::FlipInner;
    int edge = -1; // flipped edge, or the loop edge for spiral inversion
    std::map<int, double> shear_delta;
    Spine before;
    Spine after;
};

// Whitehead flip on an inner edge with distinct endpoints.  Shear updates
// follow phi(Z) = log(1+e^Z) with coincident neighbours accumulating their
// slot contributions.
std::pair<Spine, MoveRecord> flip_inner(const Spine& spine, int edge);

// Flip of a pending edge of order p:
// (Y1, Y2, Z) -> (Y1 - log(1+w e^{-Z}+e^{-2Z}), Y2 + log(1+w e^Z+e^{2Z}), -Z),
// w = 2cos(pi/p), with the two neighbour slots swapped in the rotation.
std::pair<Spine, MoveRecord> flip_pending(const Spine& spine, int edge);

struct HoleFlipReport {
    Spine result;
    MoveRecord record;
    double max_imag = 0;       // residual imaginary part of the composite
    double max_disagreement = 0; // against flip_pending, per edge
};

// Same update realized by the auxiliary-hole construction: attach a loop
// of (imaginary) perimeter P with e^{P/2}+e^{-P/2} = omega_p, run the two
// standard flips, erase the loop.  Agrees with flip_pending to 1e-12.
HoleFlipReport pending_flip_via_hole(const Spine& spine, int edge);

struct SpiralSite {
    int face = -1;
    int loop_edge = -1;
    int stem_edge = -1;
};

// Holes whose face is the monogon of a loop-with-stem configuration.
std::vector<SpiralSite> spiral_sites(const Spine& spine);

// Changes the spiraling direction at such a hole: (Y, P) -> (Y + P, -P).
std::pair<Spine, MoveRecord> invert_spiral(const Spine& spine, const SpiralSite& site);

// Rewrites a word realizable on record.before into one realizable on
// record.after with the same geodesic function.  Winding counts at a
// flipped pending edge map k -> p+1-k; fully unwound rotations collapse to
// corner turns and flip the word sign.
PathWord transport_path(const PathWord& word, const MoveRecord& record);

struct InvarianceReport {
    bool ok = true;
    double max_relative_error = 0;
    std::size_t words_checked = 0;
    std::size_t symbolic_checked = 0;
    bool poisson_compatible = true;
    bool center_dimension_preserved = true;
    std::vector<std::string> failures;
};

// Checks trace invariance of every word under the move (numeric always,
// symbolic equality when both traces stay under term_budget terms, with 25
// random-shear numeric evaluations substituting beyond it), plus Poisson
// compatibility: the matrix of the moved spine equals the matrix mutation
// of the original at the flipped index, and the center keeps dimension s.
InvarianceReport check_move_invariance(const Spine& spine, const std::vector<PathWord>& words,
                                       const MoveRecord& record, double tol = 1e-9,
                                       std::size_t term_budget = 10000);

// Random valid spine: a library example with randomized shears, shuffled
// by random inner flips (flips preserve validity).
Spine random_spine(SplitMix64& rng);

} // namespace orbicluster
