#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mvdyn/intertwine.hpp"

using namespace mvdyn;
using namespace mvdyn::testing;

TEST_SUITE("intertwine") {
    TEST_CASE("the paper pair's witness becomes the identity/swap field") {
        auto witness = are_piecewise_conjugate(id_swap(), constants());
        REQUIRE(witness.has_value());
        UnitaryField field = field_from_assignment(id_swap(), constants(), *witness);
        CHECK(field.v[0] == Matrix::identity(2));
        Matrix swap(2, 2);
        swap(0, 1) = 1.0;
        swap(1, 0) = 1.0;
        CHECK(field.v[1] == swap);
        REQUIRE(field.target.has_value());
        CHECK(field.target->maps == constants().maps);
        CHECK_NOTHROW(validate_field(id_swap(), field));
    }

    TEST_CASE("identity assignment gives the creation operators back") {
        MultiSystem sys = id_swap();
        PCWitness self{{0, 1}, {{1, 2}, {1, 2}}};
        UnitaryField field = field_from_assignment(sys, sys, self);
        FockRep rep = full_fock_rep(sys, 3);
        auto ts = intertwiners(sys, field, rep);
        for (int i = 1; i <= 2; ++i) CHECK(ts[i - 1] == rep.creation(i));
    }

    TEST_CASE("bogus witnesses are rejected") {
        PCWitness wrong{{0, 1}, {{1, 2}, {1, 2}}};  // claims conjugacy without the swap
        CHECK_THROWS_AS(field_from_assignment(id_swap(), constants(), wrong),
                        std::invalid_argument);
    }

    TEST_CASE("paper-pair intertwiners satisfy every proof identity") {
        auto witness = are_piecewise_conjugate(id_swap(), constants());
        REQUIRE(witness.has_value());
        UnitaryField field = field_from_assignment(id_swap(), constants(), *witness);
        FockRep rep = full_fock_rep(id_swap(), 3);
        IntertwinerReport report;
        auto ts = intertwiners(id_swap(), field, rep, &report);

        // T_1 = L_1 pi(ind_0) + L_2 pi(ind_1)
        Matrix expected = matmul(rep.creation(1), rep.diag_fn(indicator(2, {0}))) +
                          matmul(rep.creation(2), rep.diag_fn(indicator(2, {1})));
        CHECK(ts[0] == expected);

        CHECK(report.row_isometry_residual < 1e-10);
        CHECK(report.covariance_residual < 1e-10);
        CHECK(report.recovery_error == 0.0);  // permutation entries reconstruct exactly
    }

    TEST_CASE("round trip through the inverse field recovers the generators") {
        auto witness = are_piecewise_conjugate(id_swap(), constants());
        REQUIRE(witness.has_value());
        UnitaryField forward = field_from_assignment(id_swap(), constants(), *witness);
        FockRep rep = full_fock_rep(id_swap(), 3);
        auto ts = intertwiners(id_swap(), forward, rep);

        UnitaryField backward;
        for (const auto& u : forward.v) backward.v.push_back(adjoint(u));
        auto back = intertwiners_from(ts, rep, backward);
        for (int i = 1; i <= 2; ++i) CHECK(back[i - 1] == rep.creation(i));
    }

    TEST_CASE("fields failing unitarity or germ support are rejected") {
        MultiSystem sys = id_swap();
        UnitaryField skew;
        Matrix half = Matrix::identity(2);
        half(0, 0) = 0.5;
        skew.v = {half, Matrix::identity(2)};
        CHECK_THROWS_AS(validate_field(sys, skew), std::invalid_argument);

        UnitaryField misplaced;
        Matrix swap(2, 2);
        swap(0, 1) = 1.0;
        swap(1, 0) = 1.0;
        misplaced.v = {swap, swap};
        misplaced.target = sys;  // claims map 1 agrees with map 2 everywhere, false at 0 vs 1
        CHECK_THROWS_AS(validate_field(sys, misplaced), std::invalid_argument);
    }

    TEST_CASE("rotation construction: the two pure zones swap or keep the creations") {
        MultiSystem sys = id_swap();
        FockRep rep = full_fock_rep(sys, 3);

        auto [swap1, swap2] = rotation_intertwiner_n2(sys, {0, 1}, {}, rep);
        CHECK(max_abs(swap1 - rep.creation(2)) == 0.0);  // h = 0: sin exact 0, cos exact 1
        CHECK(max_abs(swap2 - rep.creation(1)) == 0.0);

        auto [keep1, keep2] = rotation_intertwiner_n2(sys, {}, {0, 1}, rep);
        CHECK(max_abs(keep1 - rep.creation(1)) < 1e-15);
        Matrix minus2 = rep.creation(2);
        minus2 *= cplx(-1.0);
        CHECK(max_abs(keep2 - minus2) < 1e-15);
    }

    TEST_CASE("rotation construction on mixed zones is an interior row isometry") {
        MultiSystem sys(3, {{0, 1, 2}, {1, 2, 0}});
        FockRep rep = full_fock_rep(sys, 3);
        auto [t1, t2] = rotation_intertwiner_n2(sys, {0}, {2}, rep);
        Matrix interior = rep.grade_projector(rep.depth - 1);
        CHECK(operator_norm(matmul(gram_sparse(t1, t1) - Matrix::identity(rep.dim()), interior)) <
              1e-10);
        CHECK(operator_norm(matmul(gram_sparse(t2, t2) - Matrix::identity(rep.dim()), interior)) <
              1e-10);
        CHECK(operator_norm(matmul(gram_sparse(t1, t2), interior)) < 1e-10);

        CHECK_THROWS_AS(rotation_intertwiner_n2(sys, {0, 1}, {1}, rep), std::invalid_argument);
    }

    TEST_CASE("random permutation fields keep all invariants") {
        SplitMix64 rng(81);
        int built = 0;
        for (int trial = 0; trial < 60 && built < 10; ++trial) {
            MultiSystem a = random_system(rng, 3, 3);
            MultiSystem b = random_system(rng, 3, 3);
            if (a.m != b.m || a.n != b.n) continue;
            auto witness = are_piecewise_conjugate(a, b);
            if (!witness) continue;
            ++built;
            UnitaryField field = field_from_assignment(a, b, *witness);
            FockRep rep = full_fock_rep(a, 2);
            IntertwinerReport report;
            intertwiners(a, field, rep, &report);
            CHECK(report.row_isometry_residual < 1e-10);
            CHECK(report.covariance_residual < 1e-10);
            CHECK(report.recovery_error == 0.0);
        }
        CHECK(built > 0);
    }
}
