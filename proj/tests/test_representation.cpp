#include <doctest.h>

#include <cmath>

#include "rdil/generators.hpp"
#include "rdil/representation.hpp"

using namespace rdil;

namespace {

Representation nilpotent_pair(double scale) {
    Matrix n = Matrix::Zero(2, 2);
    n(0, 1) = 1.0;
    return Representation(ProductSystem::untwisted({1, 1}), 2, {{scale * n}, {scale * n}});
}

}  // namespace

TEST_CASE("validation of edge cases") {
    SUBCASE("zero representation") {
        const Representation rep = Representation::zero(ProductSystem::untwisted({2, 2}), 3);
        const ValidationReport report = validate(rep);
        CHECK(report.valid);
        CHECK(report.margins[0] == doctest::Approx(1.0));
        CHECK(report.margins[1] == doctest::Approx(1.0));
        for (const auto& p : report.commutation) CHECK(p.residual == 0.0);
    }

    SUBCASE("anticommuting twist with a commuting scalar pair") {
        const ProductSystem sys =
            ProductSystem::scalar({{{1, 0}, {-1, 0}}, {{-1, 0}, {1, 0}}});
        Matrix t1(1, 1), t2(1, 1);
        t1(0, 0) = 0.5;
        t2(0, 0) = 0.5;
        const Representation rep(sys, 1, {{t1}, {t2}});
        const ValidationReport report = validate(rep);
        CHECK_FALSE(report.valid);
        REQUIRE(report.commutation.size() == 1);
        // |0.25 - (-0.25)|
        CHECK(report.commutation[0].residual == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("commuting nilpotent pair is valid") {
        const ValidationReport report = validate(nilpotent_pair(0.9));
        CHECK(report.valid);
        CHECK(report.sigma_max[0] == doctest::Approx(0.9));
    }

    SUBCASE("shape errors") {
        CHECK_THROWS_AS(Representation(ProductSystem::untwisted({2}), 2, {{Matrix::Zero(2, 2)}}),
                        DimensionError);
        CHECK_THROWS_AS(Representation(ProductSystem::untwisted({1}), 0, {{Matrix::Zero(0, 0)}}),
                        DimensionError);
    }
}

TEST_CASE("generalized powers") {
    const Representation rep = scalar_tuple({Complex(0.7, 0.0)});
    CHECK(rep.ttilde_power(1, 0)(0, 0) == Complex(1.0, 0.0));
    CHECK(rep.ttilde_power(1, 1)(0, 0) == Complex(0.7, 0.0));
    CHECK(std::abs(rep.ttilde_power(1, 3)(0, 0) - Complex(0.343, 0.0)) < 1e-15);
    CHECK_THROWS_AS(rep.ttilde_power(1, -1), DomainError);
}

TEST_CASE("graded compositions and symbols") {
    const Representation rep = scalar_tuple({Complex(0.5, 0.0), Complex(0.8, 0.0)});
    CHECK(rep.ttilde(MultiIndex{0, 0})(0, 0) == Complex(1.0, 0.0));
    CHECK(rep.ttilde(MultiIndex{1, 0})(0, 0) == Complex(0.5, 0.0));
    CHECK(std::abs(rep.ttilde(MultiIndex{3, 2})(0, 0) - Complex(0.125 * 0.64, 0.0)) < 1e-15);
    CHECK_THROWS_AS(rep.ttilde(MultiIndex{-1, 0}), DomainError);

    CHECK(rep.symbol(MultiIndex{0, 0})(0, 0) == Complex(1.0, 0.0));
    CHECK(std::abs(rep.symbol(MultiIndex{2, 1})(0, 0) - rep.ttilde(MultiIndex{2, 1})(0, 0)) == 0.0);
    CHECK(std::abs(rep.symbol(MultiIndex{1, -1})(0, 0) - Complex(0.4, 0.0)) < 1e-15);
}

TEST_CASE("symbol adjoint symmetry on random tuples") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Representation rep = random_commuting(rng, 2, {1, 2}, 2);
        std::vector<int> e(2);
        e[0] = rng.uniform_int(-2, 2);
        e[1] = rng.uniform_int(-2, 2);
        const MultiIndex n(e);
        const MultiIndex minus = MultiIndex::zero(2) - n;
        CHECK(spectral_norm(rep.symbol(n).adjoint() - rep.symbol(minus)) == 0.0);
    }
}

TEST_CASE("ttilde multiplicativity modulo theta") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const Representation rep = (trial % 2 == 0)
                                       ? random_commuting(rng, 2, {2, 1}, 2)
                                       : scaled_twisted_unitaries(rng, 2, 3);
        for (const MultiIndex& n : box_grades(MultiIndex{1, 1}))
            for (const MultiIndex& m : box_grades(MultiIndex{1, 1}))
                CHECK(multiplicativity_residual(rep, n, m) < 1e-10);
    }
}

TEST_CASE("doubly commuting checks") {
    SUBCASE("one-dimensional representations always doubly commute") {
        Rng rng(19);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Complex> t;
            for (int i = 0; i < 3; ++i) t.push_back(rng.uniform(0.0, 1.0) * rng.unit_phase());
            CHECK(is_doubly_commuting(scalar_tuple(t)));
        }
    }

    SUBCASE("tensor-leg representations doubly commute") {
        Rng rng(21);
        const Representation rep = tensor_doubly_commuting(rng, 3, {1, 2, 1}, {2, 2, 2});
        CHECK(validate(rep).valid);
        CHECK(is_doubly_commuting(rep));
    }

    SUBCASE("nilpotent triple is commuting but not doubly commuting") {
        const Representation rep = nilpotent_family({0.9, 0.9, 0.9});
        CHECK(validate(rep).valid);
        const DoublyCommutingReport report = doubly_commuting_report(rep);
        CHECK_FALSE(report.doubly_commuting);
        CHECK(report.max_residual == doctest::Approx(0.81).epsilon(1e-10));
    }

    SUBCASE("residuals are invariant under simultaneous unitary conjugation") {
        Rng rng(23);
        const Representation rep = nilpotent_family({0.9, 0.4, 0.7});
        const Representation conj = rep.conjugated(rng.random_unitary(2));
        const auto a = doubly_commuting_report(rep);
        const auto b = doubly_commuting_report(conj);
        for (size_t p = 0; p < a.pairs.size(); ++p)
            CHECK(a.pairs[p].residual == doctest::Approx(b.pairs[p].residual).epsilon(1e-10));
    }
}

TEST_CASE("scalar commutation matches the phase relation literally") {
    // For one-dimensional fibers the twisted relation is
    // T_i T_j = lambda(i,j) T_j T_i and the adjoint form is
    // T_i* T_j = conj(lambda(i,j)) T_j T_i*.
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const Representation rep = scaled_twisted_unitaries(rng, 2, 3);
        const ProductSystem& sys = rep.system();
        const Matrix t1 = rep.block(1, 1), t2 = rep.block(2, 1);
        const Complex l12 = sys.lambda(1, 2);
        CHECK(spectral_norm(t1 * t2 - l12 * t2 * t1) < 1e-12);
        CHECK(spectral_norm(t1.adjoint() * t2 - std::conj(l12) * t2 * t1.adjoint()) < 1e-12);
        CHECK(validate(rep).valid);
        CHECK(is_doubly_commuting(rep));
    }
}

TEST_CASE("consequences of double commutation hold numerically") {
    SUBCASE("single generator is vacuous") {
        const Representation rep = scalar_tuple({Complex(0.6, 0.2)});
        const ConsdcReport r = consdc_report(rep, MultiIndex{2});
        CHECK(r.max() < 1e-12);
    }

    SUBCASE("scalar pair") {
        const Representation rep = scalar_tuple({Complex(0.5, 0.0), Complex(0.0, 0.8)});
        const ConsdcReport r = consdc_report(rep, MultiIndex{2, 2});
        CHECK(r.max() < 1e-12);
    }

    SUBCASE("random tensor representation") {
        Rng rng(31);
        const Representation rep = tensor_doubly_commuting(rng, 2, {2, 2}, {2, 2});
        const ConsdcReport r = consdc_report(rep, MultiIndex{2, 2});
        CHECK(r.max() < 1e-9);
    }

    SUBCASE("twisted unitaries") {
        Rng rng(37);
        const Representation rep = scaled_twisted_unitaries(rng, 3, 3);
        const ConsdcReport r = consdc_report(rep, MultiIndex{1, 1, 1});
        CHECK(r.max() < 1e-9);
    }
}

TEST_CASE("dimension cap fails loudly") {
    Representation rep = Representation::zero(ProductSystem::untwisted({2, 2}), 4);
    rep.set_dimension_cap(100);
    CHECK_THROWS_AS(rep.ttilde(MultiIndex{3, 3}), ResourceError);
}
