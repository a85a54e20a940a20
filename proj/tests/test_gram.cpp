#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "rdil/generators.hpp"
#include "rdil/gram.hpp"

using namespace rdil;

TEST_CASE("diagonal blocks of R are identities") {
    Rng rng(41);
    const Representation rep = random_commuting(rng, 2, {2, 1}, 2);
    const GramFactors f = build_gram(rep, MultiIndex{1, 1});
    for (const MultiIndex& p : f.r.layout().grades()) {
        const Matrix block = f.r.block(p, p);
        CHECK(spectral_norm(block - Matrix::Identity(block.rows(), block.cols())) < 1e-14);
    }
}

TEST_CASE("single contraction gives the Toeplitz Gram matrix") {
    const double t = 0.5;
    const Representation rep = scalar_tuple({Complex(t, 0.0)});
    const GramFactors f = build_gram(rep, MultiIndex{4});

    Matrix expected(5, 5);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) expected(p, q) = std::pow(t, std::abs(q - p));
    CHECK(spectral_norm(f.r.dense() - expected) < 1e-14);

    // Brute-force positivity of the Toeplitz matrix.
    Eigen::SelfAdjointEigenSolver<Matrix> es(expected, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(min_eigenvalue(f.r.dense()) > 0.0);

    // Telescoping: the (0,4) entry of S*DS recovers t^4 and the (0,3) block
    // of the factorization matches R.
    const Matrix sds = f.s.dense().adjoint() * f.d.dense() * f.s.dense();
    CHECK(std::abs(sds(0, 3) - std::pow(t, 3)) < 1e-14);
    CHECK(std::abs(sds(0, 4) - std::pow(t, 4)) < 1e-14);
}

TEST_CASE("factorization identities") {
    SUBCASE("zero representation gives identity factors") {
        const Representation rep = Representation::zero(ProductSystem::untwisted({1, 1}), 2);
        const GramFactors f = build_gram(rep, MultiIndex{2, 2});
        const Index n = f.r.dense().rows();
        CHECK(spectral_norm(f.r.dense() - Matrix::Identity(n, n)) == 0.0);
        CHECK(spectral_norm(f.d.dense() - Matrix::Identity(n, n)) == 0.0);
        const CompIdentityResiduals res = verify_comp_identities(f);
        CHECK(res.max() == 0.0);
    }

    SUBCASE("random representations, mixed systems") {
        Rng rng(43);
        for (int trial = 0; trial < 8; ++trial) {
            const Representation rep = [&]() {
                switch (trial % 4) {
                    case 0: return random_commuting(rng, 2, {2, 2}, 2);
                    case 1: return scaled_twisted_unitaries(rng, 2, 3);
                    case 2: return tensor_doubly_commuting(rng, 2, {2, 1}, {2, 2});
                    default: return kgraph_permutation(rng, 2, {2, 2}, 2);
                }
            }();
            const CompIdentityResiduals res = verify_comp_identities(rep, MultiIndex{2, 2});
            CHECK(res.r_sds < 1e-10);
            CHECK(res.sl_i < 1e-10);
            CHECK(res.d_lrl < 1e-10);
        }
    }

    SUBCASE("invalid-but-contractive input still satisfies the algebra") {
        // The identities are block algebra; they do not require the
        // commutation relation. The nilpotent triple is valid anyway.
        const CompIdentityResiduals res =
            verify_comp_identities(nilpotent_family({0.9, 0.9, 0.9}), MultiIndex{1, 1, 1});
        CHECK(res.max() < 1e-12);
    }
}

TEST_CASE("positivity transfers between R and D") {
    // R = S*DS with S invertible on the box, so the signs agree.
    const Representation bad = nilpotent_family({0.9, 0.9, 0.9});
    const GramFactors f = build_gram(bad, MultiIndex{1, 1, 1});
    CHECK(min_eigenvalue(f.r.dense()) < -1e-3);
    CHECK(min_eigenvalue(f.d.dense()) < -1e-3);

    const Representation good = scalar_tuple({Complex(0.5, 0.0), Complex(0.3, 0.0)});
    const GramFactors g = build_gram(good, MultiIndex{2, 2});
    CHECK(min_eigenvalue(g.r.dense()) > -1e-12);
    CHECK(min_eigenvalue(g.d.dense()) > -1e-12);
}

TEST_CASE("defect operators") {
    SUBCASE("singleton subset is the row defect") {
        Rng rng(47);
        const Representation rep = random_commuting(rng, 2, {2, 2}, 3);
        const Matrix row = rep.row(1);
        const Matrix expected =
            Matrix::Identity(row.cols(), row.cols()) - row.adjoint() * row;
        CHECK(spectral_norm(brehmer_defect(rep, {1}) - expected) < 1e-13);
        CHECK(min_eigenvalue(brehmer_defect(rep, {1})) > -1e-12);
    }

    SUBCASE("scalar commuting tuple factors as a product") {
        const std::vector<Complex> t{Complex(0.5, 0.0), Complex(0.0, 0.6), Complex(-0.3, 0.2)};
        const Representation rep = scalar_tuple(t);
        for (const auto& v : all_subsets(3)) {
            if (v.empty()) continue;
            double expected = 1.0;
            for (int i : v) expected *= 1.0 - std::norm(t[static_cast<size_t>(i - 1)]);
            CHECK(std::abs(brehmer_defect(rep, v)(0, 0) - expected) < 1e-14);
        }
    }

    SUBCASE("nilpotent triple has the exact negative eigenvalue") {
        const Representation rep = nilpotent_family({0.9, 0.9, 0.9});
        const Matrix defect = brehmer_defect(rep, {1, 2, 3});
        Eigen::SelfAdjointEigenSolver<Matrix> es(defect, Eigen::EigenvaluesOnly);
        CHECK(std::abs(es.eigenvalues().minCoeff() - (1.0 - 3 * 0.81)) < 1e-12);
        CHECK(std::abs(es.eigenvalues().maxCoeff() - 1.0) < 1e-12);
    }
}

TEST_CASE("regular dilation criterion") {
    SUBCASE("one generator always passes") {
        Rng rng(53);
        for (int trial = 0; trial < 10; ++trial) {
            const Representation rep = random_commuting(rng, 1, {2}, 3);
            CHECK(check_regular_dilation(rep).condition_d);
        }
    }

    SUBCASE("doubly commuting passes, nilpotent fails") {
        Rng rng(59);
        CHECK(check_regular_dilation(tensor_doubly_commuting(rng, 3, {1, 1, 1}, {2, 2, 2}))
                  .condition_d);
        const BrehmerCertificate cert = check_regular_dilation(nilpotent_family({0.9, 0.9, 0.9}));
        CHECK_FALSE(cert.condition_d);
        CHECK(cert.worst == doctest::Approx(-1.43).epsilon(1e-12));
    }

    SUBCASE("criterion is unitarily invariant") {
        Rng rng(61);
        const Representation rep = nilpotent_family({0.8, 0.5, 0.4});
        const Representation conj = rep.conjugated(rng.random_unitary(2));
        const auto a = check_regular_dilation(rep);
        const auto b = check_regular_dilation(conj);
        REQUIRE(a.subsets.size() == b.subsets.size());
        for (size_t s = 0; s < a.subsets.size(); ++s)
            CHECK(a.subsets[s].min_eigenvalue ==
                  doctest::Approx(b.subsets[s].min_eigenvalue).epsilon(1e-10));
    }
}

TEST_CASE("product formula for doubly commuting representations") {
    SUBCASE("singleton is trivial") {
        Rng rng(67);
        const Representation rep = tensor_doubly_commuting(rng, 2, {1, 1}, {2, 2});
        const ProductFormulaResult r = product_formula_check(rep, {1});
        CHECK(r.residual < 1e-14);
    }

    SUBCASE("scalar pair gives the product of defects") {
        const Representation rep = scalar_tuple({Complex(0.5, 0.0), Complex(0.0, 0.7)});
        const ProductFormulaResult r = product_formula_check(rep, {1, 2});
        CHECK(r.residual < 1e-14);
        const double expected = (1 - 0.25) * (1 - 0.49);
        CHECK(std::abs(brehmer_defect(rep, {1, 2})(0, 0) - expected) < 1e-14);
    }

    SUBCASE("clock and shift pair") {
        Rng rng(71);
        const Representation rep = scaled_twisted_unitaries(rng, 2, 3, {0.5, 0.5});
        const ProductFormulaResult r = product_formula_check(rep, {1, 2});
        CHECK(r.residual < 1e-10);
        CHECK(r.commutator_residual < 1e-10);
    }

    SUBCASE("rejects non doubly commuting input") {
        CHECK_THROWS_AS(product_formula_check(nilpotent_family({0.9, 0.9, 0.9}), {1, 2, 3}),
                        DomainError);
    }
}
