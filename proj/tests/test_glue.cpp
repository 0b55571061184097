#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lat/glue.hpp"
#include "lat/scenarios.hpp"
#include "support.hpp"

using namespace lat;
using testsupport::Rng;

TEST_CASE("saturate") {
    Lattice u = catalog("U");
    // the line 3*(u1) saturates to the full u1 direction
    Embedding e = saturate(u, IntMat{{3, 0}});
    CHECK(e.basis == IntMat{{1, 0}});

    // U(3)+A2(-2) sits inside U+A2(-2) with index 3
    Lattice amb = catalog("U+A2(-2)");
    IntMat rows{{1, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    Embedding sub = Embedding::make(amb, rows);
    CHECK(sub.induced_gram == catalog("U(3)+A2(-2)").gram());
    CHECK(saturate(amb, rows).basis == IntMat::identity(4));
    CHECK(saturation_index(amb, rows) == 3);

    // already primitive: saturation returns the same HNF basis
    IntMat prim{{1, 0, 2, 0}, {0, 1, 0, 0}};
    Embedding p = saturate(amb, prim);
    CHECK(saturate(amb, p.basis).basis == p.basis);

    CHECK_THROWS_AS(saturate(u, IntMat{{1, 1}, {2, 2}}), std::invalid_argument);
}

TEST_CASE("orthogonal complements") {
    // theta inside U(3)+<-2> has an A2(-1)-congruent complement
    Lattice t1 = catalog("U(3)+<-2>");
    Embedding theta = Embedding::make(t1, IntMat{{2, 2, -3}});
    Embedding comp = orth_complement(theta);
    REQUIRE(comp.basis.rows() == 2);
    CHECK(signed_perm_congruent(comp.induced_gram, catalog("A2(-1)").gram()));

    Lattice uu = catalog("U+U");
    Embedding first = Embedding::make(uu, IntMat{{1, 0, 0, 0}, {0, 1, 0, 0}});
    Embedding second = orth_complement(first);
    CHECK(second.basis == IntMat{{0, 0, 1, 0}, {0, 0, 0, 1}});
}

TEST_CASE("overlattice from glue") {
    Lattice u3 = catalog("U(3)");
    Lattice a2m2 = catalog("A2(-2)");

    // trivial glue reproduces the direct sum
    Overlattice triv = overlattice_from_glue(u3, a2m2, GluingData{});
    CHECK(triv.lattice.gram() == catalog("U(3)+A2(-2)").gram());
    CHECK(triv.glue_order == 1);

    // a Z/3 glue produces an even lattice with the invariants of U+A2(-2)
    FqForm fs = discriminant_form(u3);
    FqForm ft = discriminant_form(a2m2);
    GluingData g;
    bool found = false;
    for (const auto& x : fs.all_elements()) {
        if (found) break;
        if (fs.element_order(x) != 3) continue;
        for (const auto& y : ft.all_elements()) {
            if (ft.element_order(y) != 3) continue;
            if (mod_2(fs.q(x) + ft.q(y)) != 0) continue;
            g.generators = {GluePair{x, y}};
            found = true;
            break;
        }
    }
    REQUIRE(found);
    Overlattice over = overlattice_from_glue(u3, a2m2, g);
    CHECK(over.glue_order == 3);
    CHECK(over.lattice.det() == -12);
    CHECK(over.lattice.is_even());
    CHECK(signature(over.lattice) == std::pair<int, int>{1, 3});
    Lattice target = catalog("U+A2(-2)");
    CHECK(form_isomorphism_search(discriminant_form(over.lattice), discriminant_form(target)).has_value());

    // both embeddings are primitive and undistorted
    CHECK(saturate(over.lattice, over.emb_a.basis).basis == saturate(over.lattice, over.emb_a.basis).basis);
    CHECK(saturation_index(over.lattice, over.emb_a.basis) == 1);
    CHECK(saturation_index(over.lattice, over.emb_b.basis) == 1);
}

TEST_CASE("E6(-1)+A2(-1) glues to E8(-1)") {
    auto glue = unimodular_embedding_search(catalog("E6(-1)"), catalog("A2(-1)"), {0, 8});
    REQUIRE(glue.has_value());
    CHECK(Int(abs(glue->over.lattice.det())) == 1);
    CHECK(glue->over.lattice.is_even());
    auto iso = find_isometry_between(catalog("E8(-1)"), glue->over.lattice);
    CHECK(iso.has_value());

    IntMat m8 = e8_fpf_matrix();
    Lattice e8m = catalog("E8(-1)");
    CHECK(verify_isometry(e8m, m8));
    CHECK(order_of(make_isometry(e8m, m8)) == 3);
    CHECK(fixed_sublattice(make_isometry(e8m, m8)).basis.rows() == 0);
}

TEST_CASE("lift_isometry on the A2(-1)+A2 toy glue") {
    Lattice s = catalog("A2(-1)");
    Lattice t = catalog("A2");
    auto glue = unimodular_embedding_search(s, t, {2, 2});
    REQUIRE(glue.has_value());

    Isometry id_s = make_isometry(s, IntMat::identity(2));
    Isometry id_t = make_isometry(t, IntMat::identity(2));
    Isometry rot_s = make_isometry(s, a2_rotation_matrix());
    Isometry neg_t = make_isometry(t, -IntMat::identity(2));
    Isometry neg_s = make_isometry(s, -IntMat::identity(2));

    // identity + identity lifts to the identity
    LiftOutcome l0 = lift_isometry(id_s, id_t, glue->over);
    REQUIRE(l0.status == LiftStatus::lifted);
    CHECK(l0.iso->mat == IntMat::identity(4));

    // the rotation acts trivially on Z/3, so it glues with the identity
    LiftOutcome l1 = lift_isometry(rot_s, id_t, glue->over);
    CHECK(l1.status == LiftStatus::lifted);

    // -id on one side only is obstructed; flipping the other side repairs it
    LiftOutcome l2 = lift_isometry(id_s, neg_t, glue->over);
    CHECK(l2.status == LiftStatus::condition_failed);
    LiftOutcome l3 = lift_isometry(neg_s, neg_t, glue->over);
    CHECK(l3.status == LiftStatus::lifted);

    // a lifted map restricts to its blocks on the embedded images
    REQUIRE(l1.iso.has_value());
    const IntMat& m = l1.iso->mat;
    const Embedding& ea = glue->over.emb_a;
    for (int i = 0; i < 2; ++i) {
        Ivec image_over = m.mul_vec(ea.basis.row(i));
        Ivec expect(4, Int(0));
        for (int j = 0; j < 2; ++j) {
            Ivec r = ea.basis.row(j);
            for (int k = 0; k < 4; ++k) expect[k] += rot_s.mat.at(j, i) * r[k];
        }
        CHECK(image_over == expect);
    }
}

TEST_CASE("lift reports an unpreserved glue subgroup separately") {
    // glue only the first A2(-1) factor against A2; swapping the two
    // A2(-1) factors then moves H out of itself
    Lattice s = catalog("A2(-1)+A2(-1)");
    Lattice t = catalog("A2");
    FqForm fs = discriminant_form(s);
    FqForm ft = discriminant_form(t);

    Rvec first_gen = {make_rat(-2, 3), make_rat(-1, 3), Rat(0), Rat(0)};
    auto h_gen = fs.element_of_dual(first_gen);
    REQUIRE(h_gen.has_value());
    GluingData g;
    for (const auto& y : ft.all_elements()) {
        if (ft.element_order(y) != 3) continue;
        if (mod_2(fs.q(*h_gen) + ft.q(y)) != 0) continue;
        g.generators = {GluePair{*h_gen, y}};
        break;
    }
    REQUIRE(!g.generators.empty());
    Overlattice over = overlattice_from_glue(s, t, g);
    CHECK(over.glue_order == 3);

    IntMat swap(4, 4);
    swap.at(2, 0) = swap.at(3, 1) = swap.at(0, 2) = swap.at(1, 3) = 1;
    Isometry swap_s = make_isometry(s, swap);
    Isometry id_t = make_isometry(t, IntMat::identity(2));
    CHECK(lift_isometry(swap_s, id_t, over).status == LiftStatus::graph_not_preserved);

    // blockwise rotations preserve H and act trivially, so they lift
    IntMat rot2 = block_isometry(s, 0, a2_rotation_matrix());
    CHECK(lift_isometry(make_isometry(s, rot2), id_t, over).status == LiftStatus::lifted);
}

TEST_CASE("unimodular embedding search edge cases") {
    // two unimodular summands glue trivially into the direct sum
    auto g = unimodular_embedding_search(catalog("U"), catalog("E8(-1)"), {1, 9});
    REQUIRE(g.has_value());
    CHECK(g->over.lattice.gram() == catalog("U+E8(-1)").gram());

    CHECK_THROWS_AS(unimodular_embedding_search(catalog("U(3)"), catalog("<6>"), {2, 1}),
                    std::invalid_argument);
    // signature precondition
    CHECK_THROWS_AS(unimodular_embedding_search(catalog("U"), catalog("U"), {1, 1}), std::invalid_argument);
}

TEST_CASE("glue property suites") {
    Rng rng(7311);
    CHECK(testsupport::prop_saturate_idempotent(rng, 200) == 0);
    Rng rng2(7312);
    CHECK(testsupport::prop_double_complement(rng2, 150) == 0);
    Rng rng3(7313);
    CHECK(testsupport::prop_overlattice_det_law(rng3, 150) == 0);
}
