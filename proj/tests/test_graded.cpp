#include <doctest.h>

#include <algorithm>

#include "rdil/generators.hpp"
#include "rdil/graded.hpp"

using namespace rdil;

namespace {

// Random reduction schedule: keep swapping a randomly chosen adjacent
// inversion until the word matches the target.  Used to probe path
// independence of the braided reordering.
Matrix random_schedule_reorder(const ProductSystem& sys, std::vector<int> word,
                               const std::vector<int>& to, Rng& rng) {
    const int len = static_cast<int>(word.size());
    std::vector<int> target(static_cast<size_t>(len));
    std::vector<int> used(static_cast<size_t>(len), 0);
    for (int p = 0; p < len; ++p)
        for (int q = 0; q < len; ++q)
            if (!used[static_cast<size_t>(q)] && to[static_cast<size_t>(q)] == word[static_cast<size_t>(p)]) {
                target[static_cast<size_t>(p)] = q;
                used[static_cast<size_t>(q)] = 1;
                break;
            }
    Matrix u = Matrix::Identity(word_dim(sys, word), word_dim(sys, word));
    while (true) {
        std::vector<int> inversions;
        for (int p = 0; p + 1 < len; ++p)
            if (target[static_cast<size_t>(p)] > target[static_cast<size_t>(p + 1)]) inversions.push_back(p);
        if (inversions.empty()) break;
        const int p = inversions[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(inversions.size()) - 1))];
        u = adjacent_swap_unitary(sys, word, p) * u;
        std::swap(word[static_cast<size_t>(p)], word[static_cast<size_t>(p + 1)]);
        std::swap(target[static_cast<size_t>(p)], target[static_cast<size_t>(p + 1)]);
    }
    return u;
}

ProductSystem lambda_i_system() {
    // lambda(2,1) = i
    return ProductSystem::scalar({{{1.0, 0.0}, {0.0, -1.0}}, {{0.0, 1.0}, {1.0, 0.0}}});
}

}  // namespace

TEST_CASE("scalar twist reorder picks up the stored phase") {
    const ProductSystem sys = lambda_i_system();
    const Matrix u = reorder_unitary(sys, {2, 1}, {1, 2});
    REQUIRE(u.rows() == 1);
    CHECK(std::abs(u(0, 0) - Complex(0, 1)) < 1e-15);

    const Matrix v = reorder_unitary(sys, {1, 2}, {1, 2});
    CHECK(std::abs(v(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("reorder rejects words that differ as multisets") {
    const ProductSystem sys = ProductSystem::untwisted({2, 2});
    CHECK_THROWS_AS(reorder_unitary(sys, {1, 2}, {2, 2}), DomainError);
}

TEST_CASE("reorder is unitary with unitary inverse path") {
    Rng rng(17);
    const ProductSystem sys = random_two_generator_system(rng, 2, 2);
    const std::vector<int> w1{2, 1, 2, 1}, w2{1, 1, 2, 2};
    const Matrix a = reorder_unitary(sys, w1, w2);
    const Matrix b = reorder_unitary(sys, w2, w1);
    const Index d = a.rows();
    CHECK(spectral_norm(a * b - Matrix::Identity(d, d)) < 1e-13);
    CHECK(spectral_norm(a.adjoint() * a - Matrix::Identity(d, d)) < 1e-13);
    CHECK(spectral_norm(reorder_unitary(sys, w1, w1) - Matrix::Identity(d, d)) == 0.0);
}

TEST_CASE("path independence over random schedules") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        ProductSystem sys = [&]() {
            switch (trial % 4) {
                case 0: return random_scalar_system(rng, 3);
                case 1: return random_diagonal_system(rng, 3, {2, 2, 2});
                case 2: return random_permutation_system(rng, 3, {2, 2, 2});
                default: return random_two_generator_system(rng, 2, 2);
            }
        }();
        sys.require_coherent();
        const int k = sys.k();
        std::vector<int> word;
        const int len = rng.uniform_int(2, 5);
        for (int p = 0; p < len; ++p) word.push_back(rng.uniform_int(1, k));
        std::vector<int> sorted = word;
        std::sort(sorted.begin(), sorted.end());
        const Matrix canonical = reorder_unitary(sys, word, sorted);
        for (int rep = 0; rep < 3; ++rep) {
            const Matrix alt = random_schedule_reorder(sys, word, sorted, rng);
            CHECK(spectral_norm(canonical - alt) < 1e-12);
        }
    }
}

TEST_CASE("two bubble schedules agree on the reversed word") {
    Rng rng(29);
    const ProductSystem sys = random_permutation_system(rng, 3, {2, 2, 2});
    const std::vector<int> from{3, 2, 1}, to{1, 2, 3};
    const Matrix canonical = reorder_unitary(sys, from, to);
    for (int rep = 0; rep < 5; ++rep)
        CHECK(spectral_norm(canonical - random_schedule_reorder(sys, from, to, rng)) < 1e-12);
}

TEST_CASE("theta embedding basics") {
    const ProductSystem sys = lambda_i_system();
    const MultiIndex zero = MultiIndex::zero(2);
    const MultiIndex n{2, 1};
    CHECK(spectral_norm(theta_embed(sys, n, zero) -
                        Matrix::Identity(grade_dim(sys, n), grade_dim(sys, n))) == 0.0);
    CHECK(spectral_norm(theta_embed(sys, zero, n) -
                        Matrix::Identity(grade_dim(sys, n), grade_dim(sys, n))) == 0.0);

    const Matrix t = theta_embed(sys, MultiIndex{0, 1}, MultiIndex{1, 0});
    CHECK(std::abs(t(0, 0) - Complex(0, 1)) < 1e-15);

    // Untwisted exchange of two-dimensional fibers is the perfect shuffle.
    const ProductSystem plain = ProductSystem::untwisted({2, 3});
    const Matrix s = theta_embed(plain, MultiIndex{0, 1}, MultiIndex{1, 0});
    CHECK(spectral_norm(s - ProductSystem::shuffle(3, 2)) == 0.0);

    CHECK_THROWS_AS(theta_embed(sys, MultiIndex{-1, 0}, zero), DomainError);
}

TEST_CASE("theta associativity over random coherent families") {
    Rng rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        ProductSystem sys = (trial % 2 == 0) ? random_diagonal_system(rng, 2, {2, 2})
                                             : random_two_generator_system(rng, 2, 2);
        const auto grades = box_grades(MultiIndex{1, 1});
        for (const MultiIndex& n : grades)
            for (const MultiIndex& m : grades)
                for (const MultiIndex& p : grades) {
                    const Matrix lhs = theta_embed(sys, n + m, p) *
                                       kron_id_right(theta_embed(sys, n, m), grade_dim(sys, p));
                    const Matrix rhs = theta_embed(sys, n, m + p) *
                                       kron_id_left(grade_dim(sys, n), theta_embed(sys, m, p));
                    CHECK(spectral_norm(lhs - rhs) < 1e-12);
                }
    }
}

TEST_CASE("coherence report flags broken twists") {
    // Scale one stored twist: unitarity fails.
    Rng rng(37);
    ProductSystem good = random_two_generator_system(rng, 2, 2);
    std::map<std::pair<int, int>, Matrix> twists = good.stored_twists();
    twists[{2, 1}] *= 1.5;
    const ProductSystem bad(good.dims(), twists);
    CHECK(bad.coherence().max_unitarity_residual > 0.1);
    CHECK_THROWS_AS(bad.require_coherent(), DomainError);
}

TEST_CASE("hexagon residual catches an incoherent triple") {
    // Two interacting non-product permutations break the braid identity; a
    // single nontrivial twist never can (the third letter rides along).
    std::map<std::pair<int, int>, Matrix> twists;
    twists[{2, 1}] = ProductSystem::permutation_twist(2, 2, {1, 2, 3, 0});
    const ProductSystem single({2, 2, 2}, twists);
    CHECK(single.coherence().max_hexagon_residual < 1e-15);

    twists[{3, 1}] = ProductSystem::permutation_twist(2, 2, {2, 0, 1, 3});
    const ProductSystem sys({2, 2, 2}, twists);
    CHECK(sys.coherence().max_hexagon_residual > 0.5);
}

TEST_CASE("box layout dimensions and cap") {
    const ProductSystem sys = ProductSystem::untwisted({2, 1});
    const BoxLayout layout(sys, MultiIndex{2, 2}, 3);
    // dims: sum over n of 2^{n1} * 1^{n2} * 3
    Index expect = 0;
    for (const MultiIndex& n : layout.grades()) expect += grade_dim(sys, n) * 3;
    CHECK(layout.total() == expect);
    CHECK(layout.offset(MultiIndex{0, 0}) == 0);
    CHECK(layout.slot_dim(MultiIndex{2, 1}) == 12);
    CHECK_THROWS_AS(BoxLayout(sys, MultiIndex{2, 2}, 3, 10), ResourceError);
}
