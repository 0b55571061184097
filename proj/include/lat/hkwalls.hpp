#pragma once

#include <optional>
#include <vector>

#include "lat/glue.hpp"

namespace lat {

// The K3 lattice U^3 + E8(-1)^2.
Lattice k3_lattice();
// The K3^[2] lattice L = U^3 + E8(-1)^2 + <-2>, rank 23, signature (3,20).
Lattice k3sq_lattice();

// Hilbert-square Picard lattice pic = picK3 + <eps> with the square-6
// polarization theta = 2x - 3 eps, embedded into an honest ambient copy
// of L built by gluing the K3 part against a transcendental complement.
struct PolarizedPicard {
    Lattice pic;
    int eps_index = 0;
    Ivec theta;  // pic coordinates
    Ivec x_k3;   // pic coordinates, eps component zero
    Embedding ambient;      // pic inside L
    Overlattice k3_glue;    // picK3 + tr inside the unimodular (3,19) lattice
    Lattice tr;             // transcendental complement used for the glue
};

// `tr` is the complement candidate for the K3-level glue; the scenario
// data supplies it (a general complement search is out of scope here).
PolarizedPicard hilbert_square_picard(const Lattice& pic_k3, const Ivec& x, const Lattice& tr);

// gcd of the pairings of v against the ambient basis.
Int divisibility(const Ivec& v_sub, const Embedding& e);

// Numerical wall class test on K3^[2]: square -2, or square -10 with
// divisibility 2 in the ambient lattice.
bool is_wall_divisor(const Ivec& v_sub, const Embedding& e);

struct KgenWitness {
    Ivec mu;  // wall class moved by the action
    Ivec w;   // invariant class of positive square orthogonal to mu
};

// Bounded box search for a wall class not fixed by f together with an
// f-invariant positive-square class orthogonal to it. `squares` restricts
// the wall family ({-2}, {-10} or both).
std::optional<KgenWitness> kgen_obstruction(const PolarizedPicard& p, const Isometry& f, long bound,
                                            const std::vector<long>& squares = {-2, -10});

}  // namespace lat
