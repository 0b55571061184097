#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lat/intmat.hpp"
#include "lat/lattice.hpp"
#include "lat/scenarios.hpp"
#include "support.hpp"

using namespace lat;
using testsupport::Rng;

TEST_CASE("hnf examples") {
    auto [h, u] = hnf(IntMat{{2, 4}, {0, 3}});
    CHECK(h == IntMat{{2, 1}, {0, 3}});
    CHECK(u * IntMat{{2, 4}, {0, 3}} == h);

    auto [hi, ui] = hnf(IntMat::identity(3));
    CHECK(hi == IntMat::identity(3));
    CHECK(ui == IntMat::identity(3));

    auto [hz, uz] = hnf(IntMat{{0, 0}, {0, 0}});
    CHECK(hz.is_zero());
    CHECK(uz == IntMat::identity(2));
}

TEST_CASE("snf examples") {
    auto s = snf(IntMat{{2, 0}, {0, 3}});
    CHECK(s.D == IntMat{{1, 0}, {0, 6}});
    CHECK(s.U * IntMat{{2, 0}, {0, 3}} * s.V == s.D);

    auto si = snf(IntMat::identity(4));
    CHECK(si.D == IntMat::identity(4));

    auto sd4 = snf(catalog("D4").gram());
    CHECK(sd4.D == IntMat{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}});
}

TEST_CASE("det examples") {
    CHECK(det_exact(IntMat{{-2, 1}, {1, -2}}) == 3);
    CHECK(det_exact(IntMat{{0, 1}, {1, 0}}) == -1);
    // rank-6 Picard Gram of the A3 scenario: same determinant as U+A2(-1)^2
    CHECK(det_exact(scenario_data(3).pic_k3_gram) == -9);
    CHECK(det_exact(catalog("U+A2(-1)+A2(-1)").gram()) == -9);
    CHECK_THROWS_AS(det_exact(IntMat(2, 3)), std::invalid_argument);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(IntMat::identity(2)).empty());
    auto k = kernel_basis(IntMat{{1, -1}});
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Ivec{1, 1});
    // the order-3 fixed-point-free map on E6 has no fixed vectors
    IntMat d = e6_fpf_matrix() - IntMat::identity(6);
    CHECK(kernel_basis(d).empty());
}

TEST_CASE("char_poly examples") {
    CHECK(char_poly(IntMat::identity(2)) == Poly{1, -2, 1});
    Poly phi3 = {1, 1, 1};
    CHECK(char_poly(e6_fpf_matrix()) == poly_mul(poly_mul(phi3, phi3), phi3));
    IntMat companion{{0, -1}, {1, -1}};
    CHECK(char_poly(companion) == phi3);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == Poly{-1, 1});
    CHECK(cyclotomic(2) == Poly{1, 1});
    CHECK(cyclotomic(3) == Poly{1, 1, 1});
    CHECK(cyclotomic(6) == Poly{1, -1, 1});
    CHECK(cyclotomic(12) == Poly{1, 0, -1, 0, 1});
}

TEST_CASE("inertia examples") {
    CHECK(inertia(catalog("U").gram()) == std::pair<int, int>{1, 1});
    CHECK(inertia(catalog("E8(-1)").gram()) == std::pair<int, int>{0, 8});
    CHECK(inertia(catalog("<6>+A2(-1)").gram()) == std::pair<int, int>{1, 2});
    CHECK_THROWS_AS(inertia(IntMat{{1, 1}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("hnf/snf property suites") {
    Rng rng(20240811);
    CHECK(testsupport::prop_hnf_contract(rng, 300) == 0);
    CHECK(testsupport::prop_snf_contract(rng, 300) == 0);
}

TEST_CASE("det and char_poly properties") {
    Rng rng(20240812);
    CHECK(testsupport::prop_det_mult(rng, 300) == 0);
    CHECK(testsupport::prop_cayley_hamilton(rng, 300) == 0);
}

TEST_CASE("inertia congruence invariance") {
    Rng rng(20240813);
    CHECK(testsupport::prop_inertia_congruence(rng, 300) == 0);
}
