#pragma once

#include <optional>
#include <vector>

#include "lat/isometry.hpp"
#include "lat/lattice.hpp"

namespace lat {

// The discriminant group D_L = L*/L of an even lattice, with its
// Q/2Z-valued quadratic form. Elements are integer coordinate tuples
// modulo the invariant factors, kept as least nonnegative residues.
struct FqForm {
    std::vector<Int> orders;  // invariant factors > 1, d_i | d_{i+1}
    RatMat gen_lifts;         // one row per generator: dual coordinates in the lattice basis
    IntMat gram;              // ambient Gram matrix
    IntMat snf_u;             // U of the SNF used to split off coordinates
    std::vector<int> gen_pos; // diagonal positions of the nontrivial factors
    std::vector<Int> all_diag;

    int ngens() const { return static_cast<int>(orders.size()); }
    Int order() const;
    bool is_trivial() const { return orders.empty(); }

    Ivec reduce(const Ivec& e) const;
    Rvec lift(const Ivec& e) const;                 // dual-vector representative
    std::optional<Ivec> element_of_dual(const Rvec& w) const;  // nullopt if w not in L*
    Int element_order(const Ivec& e) const;

    Rat q(const Ivec& e) const;                 // in [0, 2)
    Rat b(const Ivec& e1, const Ivec& e2) const;  // in [0, 1)

    std::vector<Ivec> all_elements(unsigned long cap = 100000) const;
};

FqForm discriminant_form(const Lattice& l);  // throws on odd lattices

// A homomorphism of a discriminant group into another, given by generator
// images; doubles as the induced automorphism type.
struct DiscMap {
    std::vector<Ivec> images;  // images[i] = image of generator i (target coords)
};

DiscMap disc_identity(const FqForm& f);
// Validates d_i * images[i] = 0 so the map is well defined.
DiscMap make_disc_map(const FqForm& source, const FqForm& target, std::vector<Ivec> images);
Ivec disc_apply(const DiscMap& m, const FqForm& target, const Ivec& e);
DiscMap disc_compose(const DiscMap& f, const DiscMap& g, const FqForm& mid_target, const FqForm& final_target);
bool disc_maps_equal(const FqForm& target, const DiscMap& a, const DiscMap& b);

bool is_trivial_action(const FqForm& f, const DiscMap& m);

// Automorphism of D_L induced by a verified isometry of L.
DiscMap induced_action(const FqForm& f, const Isometry& iso);

// Group isomorphism gamma with q2(gamma x) = sign * q1(x) mod 2Z (and the
// matching bilinear condition), found by deterministic brute force over
// generator images. sign = -1 gives the gluing anti-isometry.
std::optional<DiscMap> form_hom_search(const FqForm& f1, const FqForm& f2, int sign,
                                       unsigned long order_cap = 10000);

// Anti-isometry search used for Nikulin gluing; requires |F1| = |F2|.
std::optional<DiscMap> anti_isometry_search(const FqForm& f1, const FqForm& f2,
                                            unsigned long order_cap = 10000);
// Isometry of finite quadratic forms (same q), used for invariant matching.
std::optional<DiscMap> form_isomorphism_search(const FqForm& f1, const FqForm& f2,
                                               unsigned long order_cap = 10000);

}  // namespace lat
