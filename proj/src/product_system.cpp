#include "rdil/product_system.hpp"

#include <algorithm>
#include <cmath>

#include "rdil/graded.hpp"

namespace rdil {

ProductSystem::ProductSystem(std::vector<int> dims, std::map<std::pair<int, int>, Matrix> twists)
    : dims_(std::move(dims)), twists_(std::move(twists)) {
    if (dims_.empty()) throw DimensionError("product system needs at least one fiber");
    for (int d : dims_)
        if (d < 1) throw DimensionError("fiber dimensions must be positive");
    for (const auto& [key, t] : twists_) {
        const auto [i, j] = key;
        if (i <= j || j < 1 || i > k())
            throw DomainError("stored twist keys must satisfy k >= i > j >= 1");
        const Index rows = static_cast<Index>(dim(j)) * dim(i);
        const Index cols = static_cast<Index>(dim(i)) * dim(j);
        if (t.rows() != rows || t.cols() != cols)
            throw DimensionError("twist (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") has wrong shape");
    }
}

ProductSystem ProductSystem::untwisted(std::vector<int> dims) {
    return ProductSystem(std::move(dims));
}

ProductSystem ProductSystem::scalar(const std::vector<std::vector<Complex>>& lambda) {
    const int k = static_cast<int>(lambda.size());
    std::map<std::pair<int, int>, Matrix> twists;
    for (int i = 2; i <= k; ++i) {
        if (static_cast<int>(lambda[static_cast<size_t>(i - 1)].size()) != k)
            throw DimensionError("lambda matrix must be square");
        for (int j = 1; j < i; ++j) {
            const Complex lij = lambda[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
            const Complex lji = lambda[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)];
            if (std::abs(std::abs(lij) - 1.0) > 1e-12)
                throw DomainError("scalar twist phases must be unimodular");
            if (std::abs(lij * lji - 1.0) > 1e-12)
                throw DomainError("lambda(j,i) must be the inverse of lambda(i,j)");
            Matrix t(1, 1);
            t(0, 0) = lij;
            twists[{i, j}] = t;
        }
    }
    for (int i = 1; i <= k; ++i)
        if (std::abs(lambda[static_cast<size_t>(i - 1)][static_cast<size_t>(i - 1)] - 1.0) > 1e-12)
            throw DomainError("lambda(i,i) must be 1");
    return ProductSystem(std::vector<int>(static_cast<size_t>(k), 1), std::move(twists));
}

Matrix ProductSystem::shuffle(int di, int dj) {
    Matrix t = Matrix::Zero(static_cast<Index>(dj) * di, static_cast<Index>(di) * dj);
    for (int l = 0; l < di; ++l)
        for (int m = 0; m < dj; ++m) t(m * di + l, l * dj + m) = 1.0;
    return t;
}

Matrix ProductSystem::permutation_twist(int di, int dj, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != di * dj)
        throw DimensionError("permutation has wrong length");
    Matrix t = Matrix::Zero(static_cast<Index>(dj) * di, static_cast<Index>(di) * dj);
    std::vector<bool> hit(perm.size(), false);
    for (int c = 0; c < di * dj; ++c) {
        const int r = perm[static_cast<size_t>(c)];
        if (r < 0 || r >= di * dj || hit[static_cast<size_t>(r)])
            throw DomainError("not a permutation of basis pairs");
        hit[static_cast<size_t>(r)] = true;
        t(r, c) = 1.0;
    }
    return t;
}

int ProductSystem::dim(int i) const {
    if (i < 1 || i > k()) throw DomainError("generator index out of range");
    return dims_[static_cast<size_t>(i - 1)];
}

bool ProductSystem::has_stored_twist(int i, int j) const {
    return twists_.find({i, j}) != twists_.end();
}

Matrix ProductSystem::twist(int i, int j) const {
    if (i < 1 || i > k() || j < 1 || j > k()) throw DomainError("generator index out of range");
    if (i == j) return Matrix::Identity(static_cast<Index>(dim(i)) * dim(i), static_cast<Index>(dim(i)) * dim(i));
    if (i > j) {
        auto it = twists_.find({i, j});
        if (it != twists_.end()) return it->second;
        return shuffle(dim(i), dim(j));
    }
    // t_{i,j} = t_{j,i}^{-1}; the stored matrix is unitary.
    return twist(j, i).adjoint();
}

bool ProductSystem::is_scalar() const {
    return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 1; });
}

Complex ProductSystem::lambda(int i, int j) const {
    if (!is_scalar()) throw DomainError("lambda is defined for scalar systems only");
    return twist(i, j)(0, 0);
}

std::vector<std::vector<Complex>> ProductSystem::lambda_matrix() const {
    std::vector<std::vector<Complex>> l(static_cast<size_t>(k()),
                                        std::vector<Complex>(static_cast<size_t>(k())));
    for (int i = 1; i <= k(); ++i)
        for (int j = 1; j <= k(); ++j) l[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = lambda(i, j);
    return l;
}

CoherenceReport ProductSystem::coherence() const {
    CoherenceReport rep;
    for (const auto& [key, t] : twists_) {
        (void)key;
        const Matrix gram = t.adjoint() * t;
        rep.max_unitarity_residual = std::max(
            rep.max_unitarity_residual,
            spectral_norm(gram - Matrix::Identity(gram.rows(), gram.cols())));
    }
    // Braid identity on E_l (x) E_j (x) E_i for every triple (i,j,l):
    //   (t_{j,i} (x) I_l)(I_j (x) t_{l,i})(t_{l,j} (x) I_i)
    //     = (I_i (x) t_{l,j})(t_{l,i} (x) I_j)(I_l (x) t_{j,i}).
    for (int i = 1; i <= k(); ++i) {
        for (int j = 1; j <= k(); ++j) {
            for (int l = 1; l <= k(); ++l) {
                const Index di = dim(i), dj = dim(j), dl = dim(l);
                const Matrix lhs = kron_id_right(twist(j, i), dl) *
                                   kron_id_left(dj, twist(l, i)) *
                                   kron_id_right(twist(l, j), di);
                const Matrix rhs = kron_id_left(di, twist(l, j)) *
                                   kron_id_right(twist(l, i), dj) *
                                   kron_id_left(dl, twist(j, i));
                rep.max_hexagon_residual =
                    std::max(rep.max_hexagon_residual, spectral_norm(lhs - rhs));
            }
        }
    }
    return rep;
}

void ProductSystem::require_coherent(double tol) const {
    const CoherenceReport rep = coherence();
    if (!rep.ok(tol))
        throw DomainError("twist family is not coherent: unitarity residual " +
                          std::to_string(rep.max_unitarity_residual) + ", hexagon residual " +
                          std::to_string(rep.max_hexagon_residual));
}

}  // namespace rdil
