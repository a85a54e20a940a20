#include "rdil/gram.hpp"

#include <algorithm>
#include <map>

namespace rdil {

namespace {

// Memoized generalized powers for one gram assembly.
class TtildeCache {
public:
    explicit TtildeCache(const Representation& rep) : rep_(rep) {}
    const Matrix& get(const MultiIndex& n) {
        auto it = cache_.find(n.entries());
        if (it != cache_.end()) return it->second;
        return cache_.emplace(n.entries(), rep_.ttilde(n)).first->second;
    }
    // T(n) = T~_{n-}* T~_{n+}
    Matrix symbol(const MultiIndex& n) {
        return get(n.neg()).adjoint() * get(n.pos());
    }

private:
    const Representation& rep_;
    std::map<std::vector<int>, Matrix> cache_;
};

}  // namespace

GramFactors build_gram(const Representation& rep, const MultiIndex& box) {
    const ProductSystem& sys = rep.system();
    const Index h = rep.hdim();
    BoxLayout layout(sys, box, h, rep.dimension_cap());
    const Index total = layout.total();
    TtildeCache cache(rep);

    Matrix r = Matrix::Zero(total, total);
    Matrix s = Matrix::Zero(total, total);
    Matrix d = Matrix::Zero(total, total);
    Matrix l = Matrix::Zero(total, total);

    const auto& grades = layout.grades();
    for (const MultiIndex& p : grades) {
        for (const MultiIndex& q : grades) {
            const MultiIndex meet = p.meet(q);
            const MultiIndex up = (q - p).pos();    // q = meet + up
            const MultiIndex down = (p - q).pos();  // p = meet + down
            // X(q)(x)H -> X(meet)(x)X(up)(x)H -> X(meet)(x)X(down)(x)H -> X(p)(x)H
            const Matrix theta_q = kron_id_right(theta_embed(sys, meet, up), h);
            const Matrix theta_p = kron_id_right(theta_embed(sys, meet, down), h);
            const Matrix block =
                theta_p * kron_id_left(grade_dim(sys, meet), cache.symbol(q - p)) * theta_q.adjoint();
            r.block(layout.offset(p), layout.offset(q), layout.slot_dim(p), layout.slot_dim(q)) = block;
            if (p.leq(q))
                s.block(layout.offset(p), layout.offset(q), layout.slot_dim(p), layout.slot_dim(q)) =
                    block;
        }
    }

    for (const MultiIndex& p : grades) {
        Matrix dp = Matrix::Zero(layout.slot_dim(p), layout.slot_dim(p));
        for (const auto& u : all_subsets(sys.k())) {
            const MultiIndex eu = MultiIndex::unit_set(sys.k(), u);
            if (!eu.leq(p)) continue;
            const Matrix gu = cache.get(eu).adjoint() * cache.get(eu);
            const double sign = (u.size() % 2 == 0) ? 1.0 : -1.0;
            dp += sign * embed_right_factor(sys, p - eu, eu, gu, h);
        }
        d.block(layout.offset(p), layout.offset(p), layout.slot_dim(p), layout.slot_dim(p)) = dp;
    }

    for (const MultiIndex& n : grades) {
        for (const auto& v : all_subsets(sys.k())) {
            const MultiIndex ev = MultiIndex::unit_set(sys.k(), v);
            const MultiIndex m = n + ev;
            if (!layout.contains(m)) continue;
            const double sign = (v.size() % 2 == 0) ? 1.0 : -1.0;
            const Matrix theta = kron_id_right(theta_embed(sys, n, ev), h);
            l.block(layout.offset(n), layout.offset(m), layout.slot_dim(n), layout.slot_dim(m)) =
                sign * kron_id_left(grade_dim(sys, n), cache.get(ev)) * theta.adjoint();
        }
    }

    return GramFactors{GradedOperator(layout, std::move(r)), GradedOperator(layout, std::move(s)),
                       GradedOperator(layout, std::move(d)), GradedOperator(layout, std::move(l))};
}

CompIdentityResiduals verify_comp_identities(const GramFactors& f) {
    const Matrix& r = f.r.dense();
    const Matrix& s = f.s.dense();
    const Matrix& d = f.d.dense();
    const Matrix& l = f.l.dense();
    CompIdentityResiduals out;
    out.r_sds = spectral_norm(r - s.adjoint() * d * s);
    out.sl_i = spectral_norm(s * l - Matrix::Identity(r.rows(), r.cols()));
    out.d_lrl = spectral_norm(d - l.adjoint() * r * l);
    return out;
}

CompIdentityResiduals verify_comp_identities(const Representation& rep, const MultiIndex& box) {
    return verify_comp_identities(build_gram(rep, box));
}

Matrix brehmer_defect(const Representation& rep, const std::vector<int>& v) {
    const ProductSystem& sys = rep.system();
    const MultiIndex ev = MultiIndex::unit_set(sys.k(), v);
    const Index total = grade_dim(sys, ev) * rep.hdim();
    Matrix defect = Matrix::Zero(total, total);
    for (const auto& u : all_subsets(v)) {
        const MultiIndex eu = MultiIndex::unit_set(sys.k(), u);
        const Matrix tu = rep.ttilde(eu);
        const double sign = (u.size() % 2 == 0) ? 1.0 : -1.0;
        defect += sign * embed_right_factor(sys, ev - eu, eu, tu.adjoint() * tu, rep.hdim());
    }
    return hermitize(defect);
}

BrehmerCertificate check_regular_dilation(const Representation& rep, double tol_psd) {
    BrehmerCertificate cert;
    bool ok = true;
    double applied_tol = 0.0;
    for (const auto& v : all_subsets(rep.k())) {
        if (v.empty()) continue;
        const Matrix defect = brehmer_defect(rep, v);
        const double lo = min_eigenvalue(defect);
        cert.subsets.push_back({v, lo, defect.rows()});
        cert.worst = std::min(cert.worst, lo);
        const double tol = tol_psd * std::max(1.0, spectral_norm(defect));
        applied_tol = std::max(applied_tol, tol);
        if (lo < -tol) ok = false;
    }
    cert.condition_d = ok;
    cert.tol = applied_tol;
    return cert;
}

ProductFormulaResult product_formula_check(const Representation& rep, const std::vector<int>& v,
                                           double tol_dc) {
    if (!doubly_commuting_report(rep, tol_dc).doubly_commuting)
        throw DomainError("product formula requires a doubly commuting representation");
    const ProductSystem& sys = rep.system();
    const MultiIndex ev = MultiIndex::unit_set(sys.k(), v);
    const Index total = grade_dim(sys, ev) * rep.hdim();

    std::vector<Matrix> factors;
    for (int i : v) {
        const MultiIndex ei = MultiIndex::unit(sys.k(), i);
        const Matrix ti = rep.ttilde(ei);
        factors.push_back(Matrix::Identity(total, total) -
                          embed_right_factor(sys, ev - ei, ei, ti.adjoint() * ti, rep.hdim()));
    }

    ProductFormulaResult out;
    for (size_t a = 0; a < factors.size(); ++a)
        for (size_t b = a + 1; b < factors.size(); ++b)
            out.commutator_residual = std::max(
                out.commutator_residual, spectral_norm(factors[a] * factors[b] - factors[b] * factors[a]));

    Matrix prod = Matrix::Identity(total, total);
    for (const Matrix& f : factors) prod = prod * f;

    // The defect, before Hermitization, against the factored form.
    Matrix defect = Matrix::Zero(total, total);
    for (const auto& u : all_subsets(v)) {
        const MultiIndex eu = MultiIndex::unit_set(sys.k(), u);
        const Matrix tu = rep.ttilde(eu);
        const double sign = (u.size() % 2 == 0) ? 1.0 : -1.0;
        defect += sign * embed_right_factor(sys, ev - eu, eu, tu.adjoint() * tu, rep.hdim());
    }
    out.residual = spectral_norm(defect - prod);
    return out;
}

}  // namespace rdil
