#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lat/scenarios.hpp"

using namespace lat;

TEST_CASE("verify_basis_change on the four explicit bases") {
    for (int i = 1; i <= 4; ++i) {
        ScenarioData d = scenario_data(i);
        Lattice pic_k3(d.pic_k3_gram);
        CHECK(verify_basis_change(pic_k3, d.k3_basis_change, catalog(d.k3_target)));
    }

    // the rank-3 Hilbert-square basis (u1-eps, eps-u2, theta) against <6>+A2(-1)
    Lattice t1 = catalog("U(3)+<-2>");
    std::vector<Ivec> b = {Ivec{1, 0, -1}, Ivec{0, -1, 1}, Ivec{2, 2, -3}};
    CHECK(verify_basis_change(t1, b, catalog("<6>+A2(-1)")));

    // identity basis against a wrong target fails
    CHECK(!verify_basis_change(t1, {Ivec{1, 0, 0}, Ivec{0, 1, 0}, Ivec{0, 0, 1}}, catalog("<6>+A2(-1)")));

    CHECK_THROWS_AS(verify_basis_change(t1, b, catalog("U")), std::invalid_argument);
}

TEST_CASE("signed permutation congruence") {
    IntMat a{{6, 0, 0}, {0, -2, 1}, {0, 1, -2}};
    IntMat b{{-2, -1, 0}, {-1, -2, 0}, {0, 0, 6}};
    CHECK(signed_perm_congruent(a, b));
    IntMat c{{6, 0, 0}, {0, -2, 0}, {0, 0, -2}};
    CHECK(!signed_perm_congruent(a, c));
}

TEST_CASE("scenario dimensions through the parameter breakdown") {
    for (int i = 1; i <= 4; ++i) {
        DimBreakdown d = scenario_dimensions(i);
        CHECK(d.quadric_params + d.cubic_params - d.cubic_mod_quadric - d.scalings == 25);
        CHECK(d.projectivities == 16);
        CHECK(d.dim == 10 - i);
        CHECK(d.picard_rank == 2 * i);
    }
    CHECK(scenario_dimensions(1).corank_conditions == 0);
    CHECK(scenario_dimensions(2).corank_conditions == 1);
    CHECK(scenario_dimensions(4).recognition_conditions == 2);
    CHECK_THROWS_AS(scenario_dimensions(0), std::invalid_argument);
    CHECK_THROWS_AS(scenario_dimensions(5), std::invalid_argument);
}

TEST_CASE("paper data gates") {
    // the printed D4(-1) data is kept verbatim but must not verify
    CHECK(!verify_isometry(Lattice(paper_d4_gram()), paper_d4_matrix()));
    // while the block basis of the theta-complement reproduces that Gram
    ScenarioData d = scenario_data(2);
    Lattice pic = direct_sum(Lattice(d.pic_k3_gram), catalog("<-2>"));
    IntMat block = IntMat::from_rows(d.theta_block_basis);
    CHECK(block * pic.gram() * block.transpose() == paper_d4_gram());
}

TEST_CASE("all four scenarios pass") {
    for (int i = 1; i <= 4; ++i) {
        ScenarioReport r = run_scenario(i);
        INFO("scenario a" << i);
        CHECK(r.passed());
        bool found_lift_check = false;
        for (const auto& c : r.checks) {
            INFO(c.name << ": " << c.details);
            CHECK(c.status != "fail");
            if (c.name == "nikulin-lift") found_lift_check = true;
        }
        CHECK(found_lift_check);
    }
    CHECK_THROWS_AS(run_scenario(9), std::invalid_argument);
}

TEST_CASE("scenario reports are deterministic") {
    std::string a = report_to_json(run_scenario(2));
    std::string b = report_to_json(run_scenario(2));
    CHECK(a == b);
}
