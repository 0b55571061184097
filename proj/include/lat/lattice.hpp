#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lat/intmat.hpp"

namespace lat {

// Integral lattice given by a symmetric nondegenerate Gram matrix.
class Lattice {
  public:
    Lattice() = default;
    Lattice(IntMat gram, std::string label = "");

    const IntMat& gram() const { return gram_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    int rank() const { return gram_.rows(); }
    bool is_even() const;
    Int det() const { return det_; }

    bool operator==(const Lattice& o) const { return gram_ == o.gram_; }

  private:
    IntMat gram_;
    std::string label_;
    Int det_;
};

// Sublattice-in-ambient description: rows of `basis` are the sublattice
// basis vectors in ambient coordinates. The induced Gram may be
// degenerate (isotropic sublattices are legitimate); sub_lattice() is
// only available in the nondegenerate case.
struct Embedding {
    Lattice ambient;
    IntMat basis;         // k x n
    IntMat induced_gram;  // basis * G * basis^T

    static Embedding make(const Lattice& ambient, const IntMat& basis_rows);
    // Ambient coordinates of a sublattice vector.
    Ivec to_ambient(const Ivec& v_sub) const;
    int rank() const { return basis.rows(); }
    Lattice sub_lattice(const std::string& label = "") const;
};

// Parse the lattice mini-language: U, U(n), An(s), Dn(s), En(s), <n>,
// joined with '+'. ADE Gram matrices use the Bourbaki node ordering.
Lattice catalog(const std::string& spec);

Lattice direct_sum(const Lattice& a, const Lattice& b);

Int inner(const Lattice& l, const Ivec& v, const Ivec& w);
Int norm_of(const Lattice& l, const Ivec& v);

std::pair<int, int> signature(const Lattice& l);

bool is_definite(const Lattice& l);  // positive or negative definite

// Complete list of vectors of the given norm in a definite lattice,
// closed under negation, sorted lexicographically. Exact Fincke-Pohst.
std::vector<Ivec> vectors_of_norm(const Lattice& l, const Int& n);

}  // namespace lat
