#include "rdil/representation.hpp"

#include <algorithm>
#include <cmath>

namespace rdil {

Representation::Representation(ProductSystem system, Index hdim,
                               std::vector<std::vector<Matrix>> blocks)
    : system_(std::move(system)), hdim_(hdim), blocks_(std::move(blocks)) {
    if (hdim_ < 1) throw DimensionError("representation space must have positive dimension");
    if (static_cast<int>(blocks_.size()) != system_.k())
        throw DimensionError("expected one block list per generator");
    for (int i = 1; i <= system_.k(); ++i) {
        const auto& list = blocks_[static_cast<size_t>(i - 1)];
        if (static_cast<int>(list.size()) != system_.dim(i))
            throw DimensionError("generator " + std::to_string(i) + " needs " +
                                 std::to_string(system_.dim(i)) + " blocks");
        for (const Matrix& b : list)
            if (b.rows() != hdim_ || b.cols() != hdim_)
                throw DimensionError("blocks must be h x h");
    }
}

Representation Representation::zero(ProductSystem system, Index hdim) {
    std::vector<std::vector<Matrix>> blocks;
    for (int i = 1; i <= system.k(); ++i)
        blocks.emplace_back(static_cast<size_t>(system.dim(i)), Matrix::Zero(hdim, hdim));
    return Representation(std::move(system), hdim, std::move(blocks));
}

const Matrix& Representation::block(int i, int l) const {
    if (i < 1 || i > k()) throw DomainError("generator index out of range");
    if (l < 1 || l > system_.dim(i)) throw DomainError("letter index out of range");
    return blocks_[static_cast<size_t>(i - 1)][static_cast<size_t>(l - 1)];
}

Matrix Representation::row(int i) const {
    const int d = system_.dim(i);
    Matrix r(hdim_, static_cast<Index>(d) * hdim_);
    for (int l = 1; l <= d; ++l) r.block(0, static_cast<Index>(l - 1) * hdim_, hdim_, hdim_) = block(i, l);
    return r;
}

Matrix Representation::ttilde_power(int i, int n) const {
    if (n < 0) throw DomainError("power must be nonnegative");
    Matrix p = Matrix::Identity(hdim_, hdim_);
    if (n == 0) return p;
    const Matrix r = row(i);
    const Index d = system_.dim(i);
    Index fiber = 1;
    for (int step = 0; step < n; ++step) {
        if (fiber * d * hdim_ > cap_) throw ResourceError("generalized power exceeds dimension cap");
        // T~_{s+1} = T~_s (I_{E^s} x T~) on E^{s+1} (x) H.
        p = p * kron_id_left(fiber, r);
        fiber *= d;
    }
    return p;
}

Matrix Representation::ttilde(const MultiIndex& n) const {
    if (n.size() != k()) throw DimensionError("grade length must equal k");
    if (!n.nonnegative()) throw DomainError("ttilde requires n >= 0");
    if (grade_dim(system_, n) * hdim_ > cap_)
        throw ResourceError("flattened grade dimension exceeds cap");
    // T~_n = T~(1)_{n_1}(I x T~(2)_{n_2}) ... , peeling factors from the right.
    Matrix m = Matrix::Identity(hdim_, hdim_);
    for (int i = k(); i >= 1; --i) {
        const Matrix p = ttilde_power(i, n[i - 1]);
        const Index fiber = p.cols() / hdim_;
        m = p * kron_id_left(fiber, m);
    }
    return m;
}

Matrix Representation::symbol(const MultiIndex& n) const {
    return ttilde(n.neg()).adjoint() * ttilde(n.pos());
}

Representation Representation::conjugated(const Matrix& u) const {
    std::vector<std::vector<Matrix>> blocks = blocks_;
    for (auto& list : blocks)
        for (Matrix& b : list) b = u.adjoint() * b * u;
    Representation out(system_, hdim_, std::move(blocks));
    out.set_dimension_cap(cap_);
    return out;
}

ValidationReport validate(const Representation& rep, double tol_contraction, double tol_residual) {
    ValidationReport report;
    report.tol_contraction = tol_contraction;
    report.tol_residual = tol_residual;
    const int k = rep.k();
    bool ok = true;
    for (int i = 1; i <= k; ++i) {
        const double s = spectral_norm(rep.row(i));
        report.sigma_max.push_back(s);
        report.margins.push_back(1.0 - s);
        if (s > 1.0 + tol_contraction) ok = false;
    }
    const Index h = rep.hdim();
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            const Matrix ti = rep.row(i);
            const Matrix tj = rep.row(j);
            const Index di = rep.system().dim(i), dj = rep.system().dim(j);
            const Matrix lhs = ti * kron_id_left(di, tj);
            const Matrix rhs = tj * kron_id_left(dj, ti) * kron_id_right(rep.system().twist(i, j), h);
            const double res = spectral_norm(lhs - rhs);
            report.commutation.push_back({i, j, res});
            if (res > tol_residual) ok = false;
        }
    }
    report.valid = ok;
    return report;
}

DoublyCommutingReport doubly_commuting_report(const Representation& rep, double tol) {
    DoublyCommutingReport report;
    report.tol = tol;
    const Index h = rep.hdim();
    for (int i = 1; i <= rep.k(); ++i) {
        for (int j = 1; j <= rep.k(); ++j) {
            if (i == j) continue;
            const Index di = rep.system().dim(i), dj = rep.system().dim(j);
            const Matrix lhs = rep.row(j).adjoint() * rep.row(i);
            const Matrix rhs = kron_id_left(dj, rep.row(i)) *
                               kron_id_right(rep.system().twist(i, j), h) *
                               kron_id_left(di, rep.row(j).adjoint());
            const double res = spectral_norm(lhs - rhs);
            report.pairs.push_back({i, j, res});
            report.max_residual = std::max(report.max_residual, res);
        }
    }
    report.doubly_commuting = report.max_residual <= tol;
    return report;
}

double ConsdcReport::max() const {
    return std::max(std::max(part_i, part_ii), std::max(part_iii, part_iv));
}

namespace {

Matrix aligned_id_tensor(const Representation& rep, const MultiIndex& a, const MultiIndex& b,
                         const Matrix& g) {
    return embed_right_factor(rep.system(), a, b, g, rep.hdim());
}

}  // namespace

ConsdcReport consdc_report(const Representation& rep, const MultiIndex& box) {
    ConsdcReport out;
    const ProductSystem& sys = rep.system();
    const Index h = rep.hdim();
    const int k = rep.k();
    const auto grades = box_grades(box);

    // (i): (I_m x T~_n)(I_n x T~_m*) = T~_m* T~_n on X(n) (x) H when n ∧ m = 0.
    for (const MultiIndex& n : grades) {
        for (const MultiIndex& m : grades) {
            if (!n.meet(m).is_zero()) continue;
            const Matrix tn = rep.ttilde(n);
            const Matrix tm = rep.ttilde(m);
            const Index dn = grade_dim(sys, n), dm = grade_dim(sys, m);
            // X(n)(x)H -> X(n)(x)X(m)(x)H -> X(m)(x)X(n)(x)H -> X(m)(x)H
            const Matrix swap = factor_swap(sys, n, m, h);
            const Matrix lhs = kron_id_left(dm, tn) * swap * kron_id_left(dn, tm.adjoint());
            const Matrix rhs = tm.adjoint() * tn;
            out.part_i = std::max(out.part_i, spectral_norm(lhs - rhs));
        }
    }

    // (ii): for p <= n, q ∧ p = 0:
    //   (I_{n-p+q} x T~_p* T~_p)(I_n x T~_q* T~_q) = I_{n-p} x T~_{p+q}* T~_{p+q}
    // as operators on X(n+q) (x) H.
    for (const MultiIndex& n : grades) {
        for (const MultiIndex& p : grades) {
            if (!p.leq(n)) continue;
            for (const MultiIndex& q : grades) {
                if (!q.meet(p).is_zero()) continue;
                if (grade_dim(sys, n + q) * h > rep.dimension_cap()) continue;
                const Matrix gp = rep.ttilde(p).adjoint() * rep.ttilde(p);
                const Matrix gq = rep.ttilde(q).adjoint() * rep.ttilde(q);
                const Matrix gpq = rep.ttilde(p + q).adjoint() * rep.ttilde(p + q);
                const Matrix lhs = aligned_id_tensor(rep, n - p + q, p, gp) *
                                   aligned_id_tensor(rep, n, q, gq);
                const Matrix rhs = aligned_id_tensor(rep, n - p, p + q, gpq);
                out.part_ii = std::max(out.part_ii, spectral_norm(lhs - rhs));
            }
        }
    }

    // (iii): u ⊆ v ⊆ [k], l outside v, on X(e(v)+e_l) (x) H.
    for (const auto& v : all_subsets(k)) {
        for (const auto& u : all_subsets(v)) {
            for (int l = 1; l <= k; ++l) {
                if (std::find(v.begin(), v.end(), l) != v.end()) continue;
                const MultiIndex ev = MultiIndex::unit_set(k, v);
                const MultiIndex eu = MultiIndex::unit_set(k, u);
                const MultiIndex el = MultiIndex::unit(k, l);
                const Matrix gu = rep.ttilde(eu).adjoint() * rep.ttilde(eu);
                const Matrix gl = rep.ttilde(el).adjoint() * rep.ttilde(el);
                const Matrix gul = rep.ttilde(eu + el).adjoint() * rep.ttilde(eu + el);
                const Index total = grade_dim(sys, ev + el) * h;
                const Matrix a = aligned_id_tensor(rep, ev - eu + el, eu, gu);
                const Matrix b = aligned_id_tensor(rep, ev, el, gl);
                const Matrix c = aligned_id_tensor(rep, ev - eu, eu + el, gul);
                const Matrix lhs = a * (Matrix::Identity(total, total) - b);
                const Matrix rhs = a - c;
                out.part_iii = std::max(out.part_iii, spectral_norm(lhs - rhs));
            }
        }
    }

    // (iv): j != l inside w, both orders, on X(e(w)) (x) H.
    for (const auto& w : all_subsets(k)) {
        if (w.size() < 2) continue;
        for (int j : w) {
            for (int l : w) {
                if (j == l) continue;
                const MultiIndex ew = MultiIndex::unit_set(k, w);
                const MultiIndex ej = MultiIndex::unit(k, j);
                const MultiIndex el = MultiIndex::unit(k, l);
                const Matrix gj = rep.ttilde(ej).adjoint() * rep.ttilde(ej);
                const Matrix gl = rep.ttilde(el).adjoint() * rep.ttilde(el);
                const Matrix gjl = rep.ttilde(ej + el).adjoint() * rep.ttilde(ej + el);
                const Matrix lhs = aligned_id_tensor(rep, ew - ej, ej, gj) *
                                   aligned_id_tensor(rep, ew - el, el, gl);
                const Matrix rhs = aligned_id_tensor(rep, ew - el - ej, ej + el, gjl);
                out.part_iv = std::max(out.part_iv, spectral_norm(lhs - rhs));
            }
        }
    }
    return out;
}

double multiplicativity_residual(const Representation& rep, const MultiIndex& n,
                                 const MultiIndex& m) {
    const ProductSystem& sys = rep.system();
    const Matrix theta = kron_id_right(theta_embed(sys, n, m), rep.hdim());
    const Matrix lhs = rep.ttilde(n + m) * theta;
    const Matrix rhs = rep.ttilde(n) * kron_id_left(grade_dim(sys, n), rep.ttilde(m));
    return spectral_norm(lhs - rhs);
}

}  // namespace rdil
