#include "rdil/fock.hpp"

#include <algorithm>
#include <cmath>

namespace rdil {

TruncatedFock::TruncatedFock(ProductSystem system, MultiIndex box, Index cap)
    : system_(std::move(system)), layout_(system_, std::move(box), 1, cap) {}

Matrix TruncatedFock::creation_block(int i, int l, const MultiIndex& n) const {
    const MultiIndex ei = MultiIndex::unit(system_.k(), i);
    Matrix unit = Matrix::Zero(system_.dim(i), 1);
    unit(l - 1, 0) = 1.0;
    const Index dn = grade_dim(system_, n);
    return theta_embed(system_, ei, n) * kron(unit, Matrix::Identity(dn, dn));
}

Matrix TruncatedFock::creation(int i, int l) const {
    Matrix out = Matrix::Zero(layout_.total(), layout_.total());
    const MultiIndex ei = MultiIndex::unit(system_.k(), i);
    for (const MultiIndex& n : layout_.grades()) {
        if (!layout_.contains(n + ei)) continue;
        out.block(layout_.offset(n + ei), layout_.offset(n), layout_.slot_dim(n + ei),
                  layout_.slot_dim(n)) = creation_block(i, l, n);
    }
    return out;
}

Representation TruncatedFock::as_representation() const {
    std::vector<std::vector<Matrix>> blocks;
    for (int i = 1; i <= system_.k(); ++i) {
        std::vector<Matrix> list;
        for (int l = 1; l <= system_.dim(i); ++l) list.push_back(creation(i, l));
        blocks.push_back(std::move(list));
    }
    Representation rep(system_, layout_.total(), std::move(blocks));
    rep.set_dimension_cap(1 << 26);
    return rep;
}

TruncatedDilation TruncatedFock::as_dilation() const {
    const Index total = layout_.total();
    std::vector<std::vector<Matrix>> shifts;
    for (int i = 1; i <= system_.k(); ++i) {
        std::vector<Matrix> list;
        for (int l = 1; l <= system_.dim(i); ++l) list.push_back(creation(i, l));
        shifts.push_back(std::move(list));
    }
    Matrix embed = Matrix::Zero(total, 1);
    embed(0, 0) = 1.0;  // vacuum slot
    return TruncatedDilation(system_, layout_, 1, Matrix::Identity(total, total),
                             Matrix::Identity(total, total), embed, std::move(shifts), 1.0, 0.0,
                             0);
}

Complex scalar_shift_weight(const std::vector<std::vector<Complex>>& lambda, const MultiIndex& n,
                            int i) {
    const int k = static_cast<int>(lambda.size());
    if (n.size() != k) throw DimensionError("grade length must match lambda");
    if (i < 1 || i > k) throw DomainError("generator index out of range");
    if (!n.nonnegative()) throw DomainError("grade must be nonnegative");
    for (int a = 0; a < k; ++a) {
        if (static_cast<int>(lambda[static_cast<size_t>(a)].size()) != k)
            throw DimensionError("lambda matrix must be square");
        for (int b = 0; b < k; ++b) {
            const Complex lab = lambda[static_cast<size_t>(a)][static_cast<size_t>(b)];
            if (std::abs(std::abs(lab) - 1.0) > 1e-12)
                throw DomainError("lambda entries must be unimodular");
            const Complex lba = lambda[static_cast<size_t>(b)][static_cast<size_t>(a)];
            if (std::abs(lab * lba - 1.0) > 1e-12)
                throw DomainError("lambda must satisfy lambda(j,i) = 1/lambda(i,j)");
        }
        if (std::abs(lambda[static_cast<size_t>(a)][static_cast<size_t>(a)] - 1.0) > 1e-12)
            throw DomainError("lambda diagonal must be 1");
    }
    // The inserted letter of generator i hops over every letter of generator
    // j < i with phase lambda(i,j) per hop.
    Complex w = 1.0;
    for (int j = 1; j < i; ++j) {
        const Complex lij = lambda[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
        for (int rep = 0; rep < n[j - 1]; ++rep) w *= lij;
    }
    return w;
}

double fock_oracle_residual(const TruncatedFock& fock) {
    const ProductSystem& sys = fock.system();
    if (!sys.is_scalar()) throw DomainError("the closed-form oracle needs one-dimensional fibers");
    const auto lambda = sys.lambda_matrix();
    const BoxLayout& layout = fock.layout();
    double worst = 0.0;
    for (int i = 1; i <= sys.k(); ++i) {
        const Matrix l = fock.creation(i, 1);
        Matrix expected = Matrix::Zero(l.rows(), l.cols());
        const MultiIndex ei = MultiIndex::unit(sys.k(), i);
        for (const MultiIndex& n : layout.grades()) {
            if (!layout.contains(n + ei)) continue;
            expected(layout.offset(n + ei), layout.offset(n)) = scalar_shift_weight(lambda, n, i);
        }
        worst = std::max(worst, (l - expected).cwiseAbs().maxCoeff());
    }
    return worst;
}

double toeplitz_residual(const TruncatedFock& fock, int i) {
    const ProductSystem& sys = fock.system();
    const BoxLayout& layout = fock.layout();
    const MultiIndex ei = MultiIndex::unit(sys.k(), i);
    std::vector<Index> interior_cols;
    for (const MultiIndex& n : layout.grades())
        if (layout.contains(n + ei))
            for (Index c = 0; c < layout.slot_dim(n); ++c)
                interior_cols.push_back(layout.offset(n) + c);
    if (interior_cols.empty()) return 0.0;
    const Index d = sys.dim(i);
    Matrix row(layout.total(), d * static_cast<Index>(interior_cols.size()));
    for (int l = 1; l <= d; ++l) {
        const Matrix cr = fock.creation(i, l);
        for (size_t c = 0; c < interior_cols.size(); ++c)
            row.col((l - 1) * static_cast<Index>(interior_cols.size()) + static_cast<Index>(c)) =
                cr.col(interior_cols[c]);
    }
    return spectral_norm(row.adjoint() * row -
                         Matrix::Identity(row.cols(), row.cols()));
}

double creation_commutation_residual(const TruncatedFock& fock, int i, int j) {
    const ProductSystem& sys = fock.system();
    const Index total = fock.dim();
    const Index di = sys.dim(i), dj = sys.dim(j);
    Matrix rowi(total, di * total), rowj(total, dj * total);
    for (int l = 1; l <= di; ++l) rowi.middleCols((l - 1) * total, total) = fock.creation(i, l);
    for (int l = 1; l <= dj; ++l) rowj.middleCols((l - 1) * total, total) = fock.creation(j, l);
    const Matrix lhs = rowi * kron_id_left(di, rowj);
    const Matrix rhs =
        rowj * kron_id_left(dj, rowi) * kron_id_right(sys.twist(i, j), total);
    return spectral_norm(lhs - rhs);
}

VnReport vn_margin(const Representation& rep, const NcPolynomial& p, int n_max, Index cap) {
    const ProductSystem& sys = rep.system();
    for (const auto& term : p.terms)
        for (const auto& [i, l] : term.word)
            if (i < 1 || i > sys.k() || l < 1 || l > sys.dim(i))
                throw DomainError("polynomial letter outside the alphabet");
    VnReport out;
    out.norm_t = spectral_norm(
        eval_polynomial(p, rep.hdim(), [&](int i, int l) { return rep.block(i, l); }));
    for (int n = 1; n <= n_max; ++n) {
        TruncatedFock fock(sys, MultiIndex::ones(sys.k(), n), cap);
        std::map<std::pair<int, int>, Matrix> letters;
        const Matrix value = eval_polynomial(p, fock.dim(), [&](int i, int l) -> const Matrix& {
            auto it = letters.find({i, l});
            if (it == letters.end()) it = letters.emplace(std::pair{i, l}, fock.creation(i, l)).first;
            return it->second;
        });
        out.norm_s_by_n.push_back(spectral_norm(value));
    }
    for (size_t x = 1; x < out.norm_s_by_n.size(); ++x)
        if (out.norm_s_by_n[x] < out.norm_s_by_n[x - 1] - 1e-10) out.monotone = false;
    out.margin = (out.norm_s_by_n.empty() ? 0.0 : out.norm_s_by_n.back()) - out.norm_t;
    return out;
}

CharacterVerdict character_check(const std::vector<std::vector<Complex>>& lambda,
                                 const std::vector<Complex>& t, double tol) {
    const int k = static_cast<int>(lambda.size());
    if (static_cast<int>(t.size()) != k) throw DimensionError("point length must match lambda");
    CharacterVerdict verdict;
    verdict.accepted = true;
    for (int i = 0; i < k; ++i) {
        if (std::abs(t[static_cast<size_t>(i)]) > 1.0) {
            verdict.accepted = false;
            verdict.violations.push_back("|t_" + std::to_string(i + 1) + "| > 1");
        }
    }
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const Complex lij = lambda[static_cast<size_t>(i)][static_cast<size_t>(j)];
            const double dist = std::abs(lij - 1.0);
            if (dist > tol / 10.0 && dist <= tol * 10.0)
                verdict.boundary_flags.push_back({i + 1, j + 1});
            if (dist > tol &&
                std::abs(t[static_cast<size_t>(i)] * t[static_cast<size_t>(j)]) > tol) {
                verdict.accepted = false;
                verdict.violations.push_back("t_" + std::to_string(i + 1) + " t_" +
                                             std::to_string(j + 1) + " != 0 while lambda(" +
                                             std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                             ") != 1");
            }
        }
    }
    return verdict;
}

}  // namespace rdil
