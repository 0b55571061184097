#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lat/lattice.hpp"

namespace lat {

// A lattice isometry; `mat` columns are the images of the basis vectors,
// so matrix^T * gram * matrix = gram.
struct Isometry {
    Lattice lattice;
    IntMat mat;
};

bool verify_isometry(const Lattice& l, const IntMat& m);
Isometry make_isometry(const Lattice& l, const IntMat& m);

// Least k >= 1 with f^k = id, or nullopt past the cap.
std::optional<long> order_of(const Isometry& f, long cap = 10000);

// Saturated fixed sublattice ker(f - id) as a primitive embedding.
Embedding fixed_sublattice(const Isometry& f);

// Multiplicity of the e-th cyclotomic polynomial in char_poly(f);
// equals dim V(f, zeta_e).
int eigen_multiplicity(const Isometry& f, int e);

// Flattened row-major int32 matrices; adequate for definite lattices of
// rank <= 8 where all isometry entries are tiny.
using FlatMat = std::vector<int32_t>;

struct OrthogonalGroup {
    Lattice lattice;
    int n = 0;
    std::vector<FlatMat> elements;  // sorted lexicographically
    std::vector<int> generators;    // indices forming a generating set

    long order() const { return static_cast<long>(elements.size()); }
    IntMat matrix(int idx) const;
    Isometry isometry(int idx) const;
    int index_of(const FlatMat& m) const;  // -1 when absent

    struct FlatHash {
        size_t operator()(const FlatMat& v) const {
            size_t h = 1469598103934665603ull;
            for (int32_t x : v) {
                h ^= static_cast<size_t>(static_cast<uint32_t>(x));
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    std::unordered_map<FlatMat, int, FlatHash> index;
};

FlatMat flat_identity(int n);
FlatMat flat_mul(int n, const FlatMat& a, const FlatMat& b);
FlatMat flat_from_intmat(const IntMat& m);
IntMat flat_to_intmat(int n, const FlatMat& m);
long flat_order(int n, const FlatMat& m, long cap = 10000);
bool flat_is_fpf(int n, const FlatMat& m);  // no nonzero fixed vector

// Complete orthogonal group of a definite lattice of rank <= 8 by
// backtracking over short-vector candidate images.
OrthogonalGroup orthogonal_group(const Lattice& l, long element_cap = 200000);

// Partition of `subset` (element indices) into conjugacy orbits of the
// full group, via BFS conjugation by the group's generator set.
std::vector<std::vector<int>> conjugacy_partition(const OrthogonalGroup& g, const std::vector<int>& subset);

// Indices of the subgroup generated by reflections in the (+-2)-roots.
std::vector<int> reflection_subgroup(const OrthogonalGroup& g);

// Conjugacy partition inside the reflection subgroup (conjugating only by
// root reflections); `subset` entries outside the subgroup are ignored.
std::vector<std::vector<int>> conjugacy_partition_in(const OrthogonalGroup& g, const std::vector<int>& subgroup,
                                                     const std::vector<int>& subset);

// All elements of the orthogonal group of the given order with trivial
// fixed sublattice, in deterministic (sorted) order.
std::vector<Isometry> find_order_e_fpf(const Lattice& l, int e, long element_cap = 200000);
std::vector<int> find_order_e_fpf_indices(const OrthogonalGroup& g, int e);

// First isometry found mapping `b` onto `a` (columns = images of b's basis
// in a's coordinates), for definite lattices; nullopt when none exists.
std::optional<IntMat> find_isometry_between(const Lattice& a, const Lattice& b);

}  // namespace lat
