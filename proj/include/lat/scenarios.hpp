#pragma once

#include <string>
#include <vector>

#include "lat/hkwalls.hpp"

namespace lat {

// Fixed data of one singularity pipeline.
struct ScenarioData {
    int index = 0;
    IntMat pic_k3_gram;                   // surface Picard Gram from the source tables
    std::vector<Ivec> k3_basis_change;    // explicit new basis in picK3 coordinates
    std::string k3_target;                // catalog spec it must match
    Ivec theta_x;                         // square-6 class in picK3 coordinates
    std::string degeneracy;               // A2(-1) | D4(-1) | E6(-1) | E8(-1)
    std::string table_t;                  // invariant lattice T_i
    std::string tr;                       // transcendental complement candidate
    bool expects_lift = false;
    std::vector<Ivec> theta_block_basis;  // basis of the theta-complement in pic coordinates
    int standin_block_offset = 0;         // where the order-3 block acts inside tr
    std::string standin_block;            // A2(-1) or E8(-1)
};

ScenarioData scenario_data(int i);

struct CheckResult {
    std::string name;
    std::string status;  // pass | fail | skipped
    std::string details;
};

struct ScenarioReport {
    int index = 0;
    std::vector<CheckResult> checks;
    std::string overall;  // pass | fail

    bool passed() const { return overall == "pass"; }
};

// True iff the Gram matrix of `basis` equals the target Gram up to a
// signed permutation of basis vectors and |det(basis)| = 1.
bool verify_basis_change(const Lattice& l, const std::vector<Ivec>& basis, const Lattice& target);

// Signed-permutation congruence of two symmetric matrices.
bool signed_perm_congruent(const IntMat& a, const IntMat& b);

ScenarioReport run_scenario(int i);

std::string report_to_json(const ScenarioReport& r);
std::string reports_to_json(const std::vector<ScenarioReport>& rs);

struct DimBreakdown {
    long quadric_params = 0;
    long cubic_params = 0;
    long cubic_mod_quadric = 0;
    long scalings = 0;
    long projectivities = 0;
    long corank_conditions = 0;
    long recognition_conditions = 0;
    long dim = 0;
    long picard_rank = 0;
};

// Moduli dimension (10 - i) derived through the parameter count, plus the
// Picard rank 2i.
DimBreakdown scenario_dimensions(int i);

// Explicit order-3 fixed-point-free isometries used as lift inputs.
IntMat a2_rotation_matrix();
IntMat e6_fpf_matrix();          // on the Bourbaki basis of E6 / E6(-1)
IntMat e8_fpf_matrix();          // on catalog E8(-1), built by gluing E6(-1)+A2(-1)
IntMat paper_d4_gram();          // the 4x4 Gram printed with the D4(-1) discussion
IntMat paper_d4_matrix();        // the printed images; fails verification, kept as data

// Identity on a catalog direct sum except for `block` starting at `offset`.
IntMat block_isometry(const Lattice& l, int offset, const IntMat& block);

}  // namespace lat
