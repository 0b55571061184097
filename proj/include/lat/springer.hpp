#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lat/isometry.hpp"

namespace lat {

// Degree/codegree tables for the two reflection groups the toolkit needs.
struct ReflectionGroupData {
    std::string name;  // "F4" or "E6"
    int rank;
    std::vector<int> degrees;
    std::vector<int> codegrees;
    long group_order() const;  // product of degrees
};

ReflectionGroupData reflection_group_data(const std::string& name);

// Count of degrees divisible by e.
int lambda(const ReflectionGroupData& g, int e);
// Count of codegrees divisible by e; 0 counts as divisible by every e.
int lambda_star(const ReflectionGroupData& g, int e);

struct SpringerReport {
    std::string group;
    int e;
    int lambda_e;
    int lambda_star_e;
    bool regular_uniqueness;  // lambda(e) == lambda*(e)
    int predicted_max_eigendim;
    // filled when the lattice group is enumerated alongside
    std::optional<int> enumerated_max_eigendim;
    std::optional<int> class_count_full_group;
    std::optional<int> class_count_reflection_subgroup;
    std::optional<long> enumerated_group_order;
};

SpringerReport springer_report(const ReflectionGroupData& g, int e);

// Cross-checks the table bound against the enumerated orthogonal group of
// the group's lattice (D4 for F4, E6 for E6).
SpringerReport springer_report_enumerated(const ReflectionGroupData& g, int e, long element_cap = 200000);

// dim V(w, zeta_e) for a flat group element: nullity of Phi_e(M) / phi(e).
int eigendim(int n, const FlatMat& m, int e);

}  // namespace lat
