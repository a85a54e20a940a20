#include "rdil/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace rdil {

std::uint64_t Rng::next_u64() {
    // splitmix64; identical streams on every platform.
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Complex Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) / std::sqrt(2.0);
}

Complex Rng::unit_phase() {
    const double a = 2.0 * std::numbers::pi * uniform();
    return Complex(std::cos(a), std::sin(a));
}

Matrix Rng::gaussian_matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
}

Matrix Rng::random_unitary(Index n) {
    const Matrix g = gaussian_matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < n; ++i) {
        const Complex rii = r(i, i);
        if (std::abs(rii) > 0) q.col(i) *= rii / std::abs(rii);
    }
    return q;
}

Representation random_commuting(Rng& rng, int k, const std::vector<int>& dims, Index hdim) {
    ProductSystem sys = ProductSystem::untwisted(dims);
    const Matrix a = [&] {
        Matrix g = rng.gaussian_matrix(hdim, hdim);
        const double s = spectral_norm(g);
        return s > 0 ? Matrix(g / s) : g;
    }();
    std::vector<std::vector<Matrix>> blocks;
    for (int i = 1; i <= k; ++i) {
        std::vector<Matrix> list;
        for (int l = 0; l < sys.dim(i); ++l) {
            // Low-degree polynomial in the common matrix; all blocks commute.
            Matrix b = rng.complex_gaussian() * Matrix::Identity(hdim, hdim) +
                       rng.complex_gaussian() * a + rng.complex_gaussian() * (a * a);
            list.push_back(std::move(b));
        }
        Matrix rowm(hdim, static_cast<Index>(sys.dim(i)) * hdim);
        for (int l = 0; l < sys.dim(i); ++l)
            rowm.block(0, static_cast<Index>(l) * hdim, hdim, hdim) = list[static_cast<size_t>(l)];
        const double s = spectral_norm(rowm);
        const double target = rng.uniform(0.3, 0.95);
        const double scale = s > 1e-12 ? target / s : 0.0;
        for (Matrix& b : list) b *= scale;
        blocks.push_back(std::move(list));
    }
    return Representation(std::move(sys), hdim, std::move(blocks));
}

Representation scaled_twisted_unitaries(Rng& rng, int k, int q, const std::vector<double>& scales,
                                        const std::vector<std::pair<int, int>>& exponents) {
    if (q < 2) throw DomainError("Weyl construction needs q >= 2");
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / q);
    Matrix clock = Matrix::Zero(q, q);
    Matrix shift = Matrix::Zero(q, q);
    for (int m = 0; m < q; ++m) {
        clock(m, m) = std::pow(omega, m);
        shift((m + 1) % q, m) = 1.0;
    }
    std::vector<int> aexp(static_cast<size_t>(k)), bexp(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(exponents.size()) > i) {
            aexp[static_cast<size_t>(i)] = exponents[static_cast<size_t>(i)].first % q;
            bexp[static_cast<size_t>(i)] = exponents[static_cast<size_t>(i)].second % q;
        } else {
            aexp[static_cast<size_t>(i)] = rng.uniform_int(0, q - 1);
            bexp[static_cast<size_t>(i)] = rng.uniform_int(0, q - 1);
        }
    }
    // W_i W_j = omega^(a_i b_j - a_j b_i) W_j W_i, and the same phases twist
    // the product system, so the relations hold exactly.
    std::vector<std::vector<Complex>> lambda(static_cast<size_t>(k),
                                             std::vector<Complex>(static_cast<size_t>(k), 1.0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const int e = aexp[static_cast<size_t>(i)] * bexp[static_cast<size_t>(j)] -
                          aexp[static_cast<size_t>(j)] * bexp[static_cast<size_t>(i)];
            lambda[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                std::polar(1.0, 2.0 * std::numbers::pi * e / q);
        }
    ProductSystem sys = ProductSystem::scalar(lambda);
    std::vector<std::vector<Matrix>> blocks;
    for (int i = 0; i < k; ++i) {
        Matrix w = Matrix::Identity(q, q);
        for (int r = 0; r < aexp[static_cast<size_t>(i)]; ++r) w = w * clock;
        for (int r = 0; r < bexp[static_cast<size_t>(i)]; ++r) w = w * shift;
        const double c = (static_cast<int>(scales.size()) > i) ? scales[static_cast<size_t>(i)]
                                                               : rng.uniform(0.2, 1.0);
        blocks.push_back({c * w});
    }
    return Representation(std::move(sys), q, std::move(blocks));
}

Representation tensor_doubly_commuting(Rng& rng, int k, const std::vector<int>& dims,
                                       const std::vector<Index>& leg_dims) {
    if (static_cast<int>(leg_dims.size()) != k) throw DimensionError("one leg dimension per generator");
    ProductSystem sys = ProductSystem::untwisted(dims);
    Index hdim = 1;
    for (Index d : leg_dims) hdim *= d;
    std::vector<std::vector<Matrix>> blocks;
    for (int i = 1; i <= k; ++i) {
        const Index hi = leg_dims[static_cast<size_t>(i - 1)];
        std::vector<Matrix> legs;
        Matrix rowm(hi, static_cast<Index>(sys.dim(i)) * hi);
        for (int l = 0; l < sys.dim(i); ++l) {
            legs.push_back(rng.gaussian_matrix(hi, hi));
            rowm.block(0, static_cast<Index>(l) * hi, hi, hi) = legs.back();
        }
        const double s = spectral_norm(rowm);
        const double scale = s > 1e-12 ? rng.uniform(0.3, 0.95) / s : 0.0;
        Index prefix = 1, suffix = 1;
        for (int j = 1; j < i; ++j) prefix *= leg_dims[static_cast<size_t>(j - 1)];
        for (int j = i + 1; j <= k; ++j) suffix *= leg_dims[static_cast<size_t>(j - 1)];
        std::vector<Matrix> list;
        for (Matrix& leg : legs)
            list.push_back(kron_id_left(prefix, kron_id_right(scale * leg, suffix)));
        blocks.push_back(std::move(list));
    }
    return Representation(std::move(sys), hdim, std::move(blocks));
}

namespace {

std::vector<int> cycle_power_perm(int d, int power) {
    std::vector<int> p(static_cast<size_t>(d));
    for (int x = 0; x < d; ++x) p[static_cast<size_t>(x)] = (x + power) % d;
    return p;
}

}  // namespace

ProductSystem random_permutation_system(Rng& rng, int k, const std::vector<int>& dims) {
    // Product-form permutations built from powers of one cycle per fiber;
    // such relabelings commute, which keeps the braid identity exact.
    std::map<std::pair<int, int>, Matrix> twists;
    for (int i = 2; i <= k; ++i) {
        for (int j = 1; j < i; ++j) {
            const int di = dims[static_cast<size_t>(i - 1)];
            const int dj = dims[static_cast<size_t>(j - 1)];
            const auto alpha = cycle_power_perm(di, rng.uniform_int(0, di - 1));
            const auto beta = cycle_power_perm(dj, rng.uniform_int(0, dj - 1));
            std::vector<int> perm(static_cast<size_t>(di) * static_cast<size_t>(dj));
            for (int l = 0; l < di; ++l)
                for (int m = 0; m < dj; ++m) {
                    const int s = alpha[static_cast<size_t>(l)];
                    const int r = beta[static_cast<size_t>(m)];
                    perm[static_cast<size_t>(l * dj + m)] = r * di + s;
                }
            twists[{i, j}] = ProductSystem::permutation_twist(di, dj, perm);
        }
    }
    return ProductSystem(dims, std::move(twists));
}

Representation kgraph_permutation(Rng& rng, int k, const std::vector<int>& dims, Index hdim) {
    ProductSystem sys = random_permutation_system(rng, k, dims);
    // Equal diagonal blocks per generator commute and *-commute, which is all
    // the permutation relations ask of them.
    std::vector<std::vector<Matrix>> blocks;
    for (int i = 1; i <= k; ++i) {
        Matrix diag = Matrix::Zero(hdim, hdim);
        for (Index x = 0; x < hdim; ++x) diag(x, x) = std::sqrt(rng.uniform(0.0, 1.0)) * rng.unit_phase();
        const double c = rng.uniform(0.2, 1.0);
        const Matrix b = (c / std::sqrt(static_cast<double>(sys.dim(i)))) * diag;
        blocks.emplace_back(static_cast<size_t>(sys.dim(i)), b);
    }
    Representation rep(std::move(sys), hdim, std::move(blocks));
    if (!validate(rep).valid || !is_doubly_commuting(rep))
        throw DomainError("permutation-twist construction failed its own relations");
    return rep;
}

Representation scalar_tuple(const std::vector<Complex>& t,
                            const std::vector<std::vector<Complex>>& lambda) {
    const int k = static_cast<int>(t.size());
    ProductSystem sys = lambda.empty()
                            ? ProductSystem::untwisted(std::vector<int>(static_cast<size_t>(k), 1))
                            : ProductSystem::scalar(lambda);
    for (int i = 1; i <= k; ++i) {
        if (std::abs(t[static_cast<size_t>(i - 1)]) > 1.0 + 1e-12)
            throw DomainError("scalar tuple entries must lie in the closed unit disc");
        for (int j = i + 1; j <= k; ++j) {
            const Complex lij = sys.lambda(i, j);
            const Complex prod = t[static_cast<size_t>(i - 1)] * t[static_cast<size_t>(j - 1)];
            if (std::abs(lij - 1.0) > 1e-12 && std::abs(prod) > 1e-12)
                throw DomainError("t_i t_j must vanish when lambda(i,j) != 1");
        }
    }
    std::vector<std::vector<Matrix>> blocks;
    for (int i = 0; i < k; ++i) {
        Matrix b(1, 1);
        b(0, 0) = t[static_cast<size_t>(i)];
        blocks.push_back({b});
    }
    return Representation(std::move(sys), 1, std::move(blocks));
}

Representation nilpotent_family(const std::vector<Complex>& a) {
    const int k = static_cast<int>(a.size());
    ProductSystem sys = ProductSystem::untwisted(std::vector<int>(static_cast<size_t>(k), 1));
    Matrix n = Matrix::Zero(2, 2);
    n(0, 1) = 1.0;
    std::vector<std::vector<Matrix>> blocks;
    for (int i = 0; i < k; ++i) blocks.push_back({a[static_cast<size_t>(i)] * n});
    return Representation(std::move(sys), 2, std::move(blocks));
}

ProductSystem random_scalar_system(Rng& rng, int k) {
    std::vector<std::vector<Complex>> lambda(static_cast<size_t>(k),
                                             std::vector<Complex>(static_cast<size_t>(k), 1.0));
    for (int i = 1; i < k; ++i)
        for (int j = 0; j < i; ++j) {
            const Complex phase = rng.unit_phase();
            lambda[static_cast<size_t>(i)][static_cast<size_t>(j)] = phase;
            lambda[static_cast<size_t>(j)][static_cast<size_t>(i)] = std::conj(phase);
        }
    return ProductSystem::scalar(lambda);
}

ProductSystem random_diagonal_system(Rng& rng, int k, const std::vector<int>& dims) {
    std::map<std::pair<int, int>, Matrix> twists;
    for (int i = 2; i <= k; ++i)
        for (int j = 1; j < i; ++j) {
            const int di = dims[static_cast<size_t>(i - 1)];
            const int dj = dims[static_cast<size_t>(j - 1)];
            Matrix phases = Matrix::Zero(static_cast<Index>(di) * dj, static_cast<Index>(di) * dj);
            for (Index c = 0; c < phases.cols(); ++c) phases(c, c) = rng.unit_phase();
            twists[{i, j}] = ProductSystem::shuffle(di, dj) * phases;
        }
    return ProductSystem(dims, std::move(twists));
}

ProductSystem random_two_generator_system(Rng& rng, int d1, int d2) {
    std::map<std::pair<int, int>, Matrix> twists;
    twists[{2, 1}] = rng.random_unitary(static_cast<Index>(d1) * d2);
    return ProductSystem({d1, d2}, std::move(twists));
}

}  // namespace rdil
