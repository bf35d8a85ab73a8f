#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mvdyn/dynamics.hpp"
#include "mvdyn/fock.hpp"

using namespace mvdyn;
using namespace mvdyn::testing;

TEST_SUITE("fock") {
    TEST_CASE("orbit representation diagonals follow the orbit") {
        MultiSystem fixed(1, {{0}});
        FockRep rep = orbit_rep(fixed, 0, 2);
        CHECK(max_abs(rep.diag_fn(CoeffFn{cplx(1.0)}) - Matrix::identity(3)) == 0.0);

        FockRep swap_rep = orbit_rep(id_swap(), 0, 1);
        Matrix d = swap_rep.diag_fn(CoeffFn{cplx(1.0), cplx(0.0)});
        CHECK(d(0, 0) == cplx(1.0));  // empty word sits at 0
        CHECK(d(1, 1) == cplx(1.0));  // map 1 fixes 0
        CHECK(d(2, 2) == cplx(0.0));  // map 2 moves 0 to 1
    }

    TEST_CASE("covariance holds exactly at every depth") {
        SplitMix64 rng(41);
        for (int trial = 0; trial < 10; ++trial) {
            MultiSystem sys = random_system(rng, 4, 3);
            FockRep rep = full_fock_rep(sys, 1 + static_cast<int>(rng.below(3)));
            CoeffFn f = random_fn(rng, sys.m);
            for (int i = 1; i <= sys.n; ++i) {
                Matrix lhs = matmul(rep.diag_fn(f), rep.creation(i));
                Matrix rhs = matmul(rep.creation(i), rep.diag_fn(compose(sys, f, Word{{i}})));
                CHECK(max_abs(lhs - rhs) == 0.0);
            }
        }
    }

    TEST_CASE("interior row isometry is exact") {
        MultiSystem sys = id_swap();
        FockRep rep = full_fock_rep(sys, 3);
        Matrix p = rep.grade_projector(2);
        for (int i = 1; i <= 2; ++i) {
            for (int j = 1; j <= 2; ++j) {
                Matrix g = gram_sparse(rep.creation(j), rep.creation(i));
                Matrix expected = i == j ? p : Matrix(rep.dim(), rep.dim());
                CHECK(max_abs(matmul(g, p) - matmul(expected, p)) == 0.0);
            }
        }
    }

    TEST_CASE("full representation dimension and faithfulness on functions") {
        MultiSystem sys = id_swap();
        FockRep rep = full_fock_rep(sys, 3);
        CHECK(rep.dim() == 2 * (1 + 2 + 4 + 8));

        MultiSystem single(1, {{0}, {0}});
        CHECK(full_fock_rep(single, 2).sites.size() == 1);

        SplitMix64 rng(42);
        for (int trial = 0; trial < 10; ++trial) {
            MultiSystem s = random_system(rng, 4, 2);
            FockRep r = full_fock_rep(s, 1);
            CoeffFn f = random_fn(rng, s.m);
            if (sup_norm(f) > 0.0) CHECK(max_abs(r.diag_fn(f)) > 0.0);
        }
    }

    TEST_CASE("represent maps the unit to the identity and letters to creations") {
        MultiSystem sys = id_swap();
        FockRep rep = full_fock_rep(sys, 2);
        Polynomial unit = Polynomial::function(CoeffFn{cplx(1.0), cplx(1.0)});
        CHECK(max_abs(represent(rep, unit) - Matrix::identity(rep.dim())) == 0.0);
        CHECK(max_abs(represent(rep, Polynomial::generator(1, 2)) - rep.creation(1)) == 0.0);
    }

    TEST_CASE("represent is multiplicative on the interior") {
        SplitMix64 rng(43);
        for (int trial = 0; trial < 12; ++trial) {
            MultiSystem sys = random_system(rng, 3, 2);
            Polynomial a = random_poly(rng, sys, 1, 2);
            Polynomial b = random_poly(rng, sys, 1, 2);
            int depth = 3;
            FockRep rep = full_fock_rep(sys, depth);
            int slack = depth - a.degree() - b.degree();
            if (slack < 0 || a.is_zero() || b.is_zero()) continue;
            Matrix p = rep.grade_projector(slack);
            Matrix lhs = matmul(represent(rep, poly_mul(sys, a, b)), p);
            Matrix rhs = matmul(matmul(represent(rep, a), represent(rep, b)), p);
            CHECK(max_abs(lhs - rhs) < 1e-12);
        }
    }

    TEST_CASE("norm of a monomial is the sup of its coefficient") {
        MultiSystem sys = id_swap();
        // power-of-two values survive the Gram square exactly
        CoeffFn f{cplx(-2.0), cplx(0.5)};
        for (int depth = 1; depth <= 3; ++depth)
            CHECK(norm_estimate(sys, Polynomial::monomial(Word{{1}}, f), depth) == 2.0);
        CHECK(norm_estimate(sys, Polynomial::monomial(Word{{2, 1}}, f), 2) == 2.0);

        SplitMix64 rng(44);
        for (int trial = 0; trial < 8; ++trial) {
            MultiSystem s = random_system(rng, 3, 2);
            Word w = random_word(rng, s.n, 2);
            CoeffFn g = random_fn(rng, s.m);
            double norm = norm_estimate(s, Polynomial::monomial(w, g), w.size() + 1);
            CHECK(norm == doctest::Approx(sup_norm(g)).epsilon(1e-13));
        }
    }

    TEST_CASE("norm of the creation row sum is sqrt(2)") {
        MultiSystem sys = id_swap();
        Polynomial sum = Polynomial::generator(1, 2) + Polynomial::generator(2, 2);
        for (int depth = 1; depth <= 4; ++depth)
            CHECK(std::abs(norm_estimate(sys, sum, depth) - std::sqrt(2.0)) < 1e-12);
    }

    TEST_CASE("norm estimates are monotone in depth") {
        SplitMix64 rng(45);
        for (int trial = 0; trial < 8; ++trial) {
            MultiSystem sys = random_system(rng, 3, 2);
            Polynomial a = random_poly(rng, sys, 2, 3);
            double prev = 0.0;
            for (int depth = 1; depth <= 5; ++depth) {
                double norm = norm_estimate(sys, a, depth);
                CHECK(norm >= prev - 1e-12);
                prev = norm;
            }
        }
    }

    TEST_CASE("gauge projection: symbolic grading fixtures") {
        MultiSystem sys = id_swap();
        CoeffFn f{cplx(1.0), cplx(2.0)};
        Polynomial p = Polynomial::function(f);
        CHECK(gauge_projection(p, 0) == p);
        CHECK(gauge_projection(p, 1).is_zero());

        Polynomial mixed = Polynomial::monomial(Word{{1, 2}}, f) +
                           Polynomial::monomial(Word{{2, 1}}, f) +
                           Polynomial::monomial(Word{{1, 1}}, f);
        Polynomial kept = abelian_projection(mixed, {1, 1});
        CHECK(kept.terms.size() == 2);
        CHECK(kept.terms.count(Word{{1, 2}}) == 1);
        CHECK(kept.terms.count(Word{{2, 1}}) == 1);
    }

    TEST_CASE("matrix and symbolic gauge projections agree") {
        SplitMix64 rng(46);
        for (int trial = 0; trial < 25; ++trial) {
            MultiSystem sys = random_system(rng, 3, 2);
            Polynomial a = random_poly(rng, sys, 3, 4);
            FockRep rep = full_fock_rep(sys, 3);
            Matrix mat = represent(rep, a);
            for (int k = 0; k <= 3; ++k) {
                Matrix via_matrix = gauge_projection(rep, mat, k);
                Matrix via_symbol = represent(rep, gauge_projection(a, k));
                CHECK(max_abs(via_matrix - via_symbol) < 1e-12);
            }
        }
    }

    TEST_CASE("fourier coefficients return the stored functions") {
        MultiSystem sys = id_swap();
        CoeffFn f{cplx(1.0), cplx(-1.0)}, g{cplx(2.0), cplx(3.0)};
        Polynomial a = Polynomial::function(f) + Polynomial::monomial(Word{{1}}, g);
        CHECK(fourier_coefficient(a, Word{}, 2) == f);
        CHECK(fourier_coefficient(a, Word{{1}}, 2) == g);
        CHECK(fourier_coefficient(a, Word{{2}}, 2) == CoeffFn(2, cplx(0.0)));
    }

    TEST_CASE("cesaro means: exact at grade zero, bounded error in general") {
        MultiSystem sys = id_swap();
        CoeffFn f{cplx(1.0), cplx(4.0)};
        Polynomial constant = Polynomial::function(f);
        for (int k = 1; k <= 4; ++k) CHECK(cesaro(constant, k) == constant);

        SplitMix64 rng(47);
        for (int trial = 0; trial < 10; ++trial) {
            MultiSystem s = random_system(rng, 3, 2);
            Polynomial a = random_poly(rng, s, 2, 3);
            int deg = a.degree();
            if (deg < 1) continue;
            const int depth = deg + 1;
            for (int k : {2, 4, 8}) {
                double error = norm_estimate(s, cesaro(a, k) - a, depth);
                double budget = 0.0;
                for (int i = 0; i <= deg; ++i)
                    budget += norm_estimate(s, gauge_projection(a, i), depth);
                budget *= static_cast<double>(deg) / k;
                CHECK(error <= budget + 1e-12);
            }
        }
    }

    TEST_CASE("factor_tail strips prefixes and reconstructs") {
        MultiSystem sys = id_swap();
        CoeffFn f{cplx(1.0), cplx(2.0)}, g{cplx(3.0), cplx(-1.0)};
        Polynomial a = Polynomial::monomial(Word{{1}}, f) + Polynomial::monomial(Word{{2}}, g);
        auto tail = factor_tail(a, 1);
        REQUIRE(tail.size() == 2);
        CHECK(tail.at(Word{{1}}) == Polynomial::function(f));
        CHECK(tail.at(Word{{2}}) == Polynomial::function(g));

        CHECK_THROWS_AS(factor_tail(Polynomial::function(f), 1), std::invalid_argument);

        SplitMix64 rng(48);
        for (int trial = 0; trial < 15; ++trial) {
            MultiSystem s = random_system(rng, 3, 2);
            int k = 1 + static_cast<int>(rng.below(2));
            Polynomial p;
            for (int t = 0; t < 3; ++t) {
                Word w = random_word(rng, s.n, 3);
                while (w.size() < k) w.letters.push_back(1 + static_cast<int>(rng.below(s.n)));
                p += Polynomial::monomial(w, random_int_fn(rng, s.m));
            }
            if (p.is_zero()) continue;
            Polynomial rebuilt;
            for (const auto& [w, aw] : factor_tail(p, k)) {
                Polynomial prefix = Polynomial::monomial(w, CoeffFn(s.m, cplx(1.0)));
                rebuilt += poly_mul(s, prefix, aw);
            }
            CHECK(rebuilt == p);  // exact with integer coefficients
        }
    }

    TEST_CASE("factor_tail norm identity at depth deg+1") {
        SplitMix64 rng(49);
        for (int trial = 0; trial < 15; ++trial) {
            MultiSystem s = random_system(rng, 3, 2);
            int k = 1 + static_cast<int>(rng.below(2));
            Polynomial a;
            for (int t = 0; t < 3; ++t) {
                Word w = random_word(rng, s.n, 3);
                while (w.size() < k) w.letters.push_back(1 + static_cast<int>(rng.below(s.n)));
                a += Polynomial::monomial(w, random_fn(rng, s.m));
            }
            if (a.is_zero()) continue;
            int depth = a.degree() + 1;
            CHECK(std::abs(norm_estimate(s, a, depth) - factor_tail_norm(s, a, k, depth)) < 1e-10);
        }
    }

    TEST_CASE("depth zero keeps only the vacuum layer") {
        MultiSystem sys = id_swap();
        FockRep rep = orbit_rep(sys, 0, 0);
        CHECK(rep.dim() == 1);
        CHECK(max_abs(represent(rep, Polynomial::generator(1, 2))) == 0.0);
        CoeffFn f{cplx(4.0), cplx(-0.25)};
        CHECK(norm_estimate(sys, Polynomial::function(f), 0) == 4.0);
        CHECK_THROWS_AS(orbit_rep(sys, 0, -1), std::invalid_argument);
    }

    TEST_CASE("nilpotent certificate annihilates in the representation") {
        MultiSystem tau = constants();
        auto verdict = is_semisimple(tau);
        REQUIRE(verdict.certificate.has_value());
        NilpotentElement nil = nilpotent_element(tau, *verdict.certificate);
        Polynomial n = nil.as_polynomial(tau);
        FockRep rep = full_fock_rep(tau, 3);
        SplitMix64 rng(50);
        for (int trial = 0; trial < 20; ++trial) {
            Polynomial a = random_poly(rng, tau, 2, 2);
            Polynomial nan = poly_mul(tau, poly_mul(tau, n, a), n);
            CHECK(max_abs(represent(rep, nan)) == 0.0);
        }
    }
}
