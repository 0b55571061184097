#pragma once

#include <optional>
#include <vector>

#include "lat/discform.hpp"
#include "lat/isometry.hpp"
#include "lat/lattice.hpp"

namespace lat {

// One generator of an isotropic graph subgroup of D_A + D_B.
struct GluePair {
    Ivec a;  // element coordinates in D_A
    Ivec b;  // element coordinates in D_B
};

struct GluingData {
    std::vector<GluePair> generators;
};

// Finite-index overlattice of A + B built from a gluing datum, together
// with the primitive embeddings of both summands.
struct Overlattice {
    Lattice lattice;
    RatMat basis;  // rows: overlattice basis in A+B rational coordinates
    Embedding emb_a;
    Embedding emb_b;
    Int glue_order;
    FqForm disc_a;
    FqForm disc_b;
    std::vector<GluePair> graph;  // every element of the graph subgroup
};

// Primitive closure of the row span of `rows` inside the ambient lattice.
Embedding saturate(const Lattice& ambient, const IntMat& rows);

// Index of the row lattice inside its saturation.
Int saturation_index(const Lattice& ambient, const IntMat& rows);

Embedding orth_complement(const Embedding& e);

Overlattice overlattice_from_glue(const Lattice& a, const Lattice& b, const GluingData& g);

enum class LiftStatus { lifted, condition_failed, graph_not_preserved };

struct LiftOutcome {
    LiftStatus status;
    std::optional<Isometry> iso;  // on the overlattice, when lifted
};

// Nikulin lifting: fa + fb extends to the overlattice iff the induced
// pair preserves the glue graph.
LiftOutcome lift_isometry(const Isometry& fa, const Isometry& fb, const Overlattice& over);

struct UnimodularGlue {
    Overlattice over;
    DiscMap gamma;  // the anti-isometry D_A -> D_B used for the full graph
};

// Glue A and B along a full anti-isometry graph into an even unimodular
// lattice of the target signature.
std::optional<UnimodularGlue> unimodular_embedding_search(const Lattice& a, const Lattice& b,
                                                          std::pair<int, int> target_sig);

}  // namespace lat
