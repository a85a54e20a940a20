#include "rdil/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "rdil/generators.hpp"

namespace rdil {

TruncatedDilation::TruncatedDilation(ProductSystem system, BoxLayout layout, Index rep_hdim,
                                     Matrix quotient, Matrix quotient_pinv, Matrix embed,
                                     std::vector<std::vector<Matrix>> shift_blocks,
                                     double gram_norm, double null_cut_abs, int ambiguous_count)
    : system_(std::move(system)),
      layout_(std::move(layout)),
      rep_hdim_(rep_hdim),
      kdim_(quotient.rows()),
      quotient_(std::move(quotient)),
      quotient_pinv_(std::move(quotient_pinv)),
      embed_(std::move(embed)),
      shift_(std::move(shift_blocks)),
      gram_norm_(gram_norm),
      null_cut_abs_(null_cut_abs),
      ambiguous_count_(ambiguous_count) {}

const Matrix& TruncatedDilation::shift(int i, int l) const {
    if (i < 1 || i > system_.k()) throw DomainError("generator index out of range");
    if (l < 1 || l > system_.dim(i)) throw DomainError("letter index out of range");
    return shift_[static_cast<size_t>(i - 1)][static_cast<size_t>(l - 1)];
}

Matrix TruncatedDilation::frame(const MultiIndex& n) const {
    return quotient_.middleCols(layout_.offset(n), layout_.slot_dim(n));
}

Matrix TruncatedDilation::shift_row(int i) const {
    const int d = system_.dim(i);
    Matrix row(kdim_, static_cast<Index>(d) * kdim_);
    for (int l = 1; l <= d; ++l) row.middleCols(static_cast<Index>(l - 1) * kdim_, kdim_) = shift(i, l);
    return row;
}

Matrix TruncatedDilation::slot_span(const std::vector<MultiIndex>& grades) const {
    Index width = 0;
    for (const MultiIndex& g : grades) width += layout_.slot_dim(g);
    Matrix cols(kdim_, width);
    Index at = 0;
    for (const MultiIndex& g : grades) {
        cols.middleCols(at, layout_.slot_dim(g)) = frame(g);
        at += layout_.slot_dim(g);
    }
    return column_space_basis(cols, 1e-10);
}

std::vector<MultiIndex> TruncatedDilation::interior_grades(const MultiIndex& step) const {
    std::vector<MultiIndex> out;
    for (const MultiIndex& g : layout_.grades())
        if (layout_.contains(g + step)) out.push_back(g);
    return out;
}

Representation TruncatedDilation::as_representation(Index cap) const {
    Representation rep(system_, kdim_, shift_);
    rep.set_dimension_cap(cap);
    return rep;
}

GradedOperator build_gram_r(const Representation& rep, const MultiIndex& box) {
    const ProductSystem& sys = rep.system();
    const Index h = rep.hdim();
    BoxLayout layout(sys, box, h, rep.dimension_cap());
    Matrix r = Matrix::Zero(layout.total(), layout.total());
    // R(p,q) = I_{p∧q} (x) T(q-p), aligned through theta on both sides.
    for (const MultiIndex& p : layout.grades()) {
        for (const MultiIndex& q : layout.grades()) {
            const MultiIndex meet = p.meet(q);
            const Matrix theta_q = kron_id_right(theta_embed(sys, meet, (q - p).pos()), h);
            const Matrix theta_p = kron_id_right(theta_embed(sys, meet, (p - q).pos()), h);
            r.block(layout.offset(p), layout.offset(q), layout.slot_dim(p), layout.slot_dim(q)) =
                theta_p * kron_id_left(grade_dim(sys, meet), rep.symbol(q - p)) * theta_q.adjoint();
        }
    }
    return GradedOperator(std::move(layout), std::move(r));
}

TruncatedDilation construct_dilation(const Representation& rep, const MultiIndex& box,
                                     const DilationOptions& opts) {
    const BrehmerCertificate cert = check_regular_dilation(rep, opts.tol_psd);
    if (!cert.condition_d)
        throw ConditionDError(cert, "condition (D) fails: most negative defect eigenvalue " +
                                        std::to_string(cert.worst));

    const ProductSystem& sys = rep.system();
    const Index h = rep.hdim();
    GradedOperator gram = build_gram_r(rep, box);
    const BoxLayout& layout = gram.layout();
    const Index total = layout.total();

    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(gram.dense()));
    const RealVector eigs = es.eigenvalues();
    const double norm = std::max(std::abs(eigs(0)), std::abs(eigs(total - 1)));
    const double cut = opts.null_cut * norm;

    int ambiguous = 0;
    std::vector<Index> kept;
    for (Index e = 0; e < total; ++e) {
        if (eigs(e) > cut) kept.push_back(e);
        if (eigs(e) > cut / 10.0 && eigs(e) <= cut) ++ambiguous;
    }
    const Index r = static_cast<Index>(kept.size());

    Matrix quotient(r, total);
    Matrix pinv(total, r);
    for (Index x = 0; x < r; ++x) {
        const double s = std::sqrt(eigs(kept[static_cast<size_t>(x)]));
        quotient.row(x) = s * es.eigenvectors().col(kept[static_cast<size_t>(x)]).adjoint();
        pinv.col(x) = es.eigenvectors().col(kept[static_cast<size_t>(x)]) / s;
    }
    if (opts.coordinate_seed != 0) {
        Rng rng(opts.coordinate_seed);
        const Matrix q = rng.random_unitary(r);
        quotient = q * quotient;
        pinv = pinv * q.adjoint();
    }

    const Matrix embed = quotient.middleCols(layout.offset(MultiIndex::zero(sys.k())), h);

    std::vector<std::vector<Matrix>> shifts;
    for (int i = 1; i <= sys.k(); ++i) {
        const MultiIndex ei = MultiIndex::unit(sys.k(), i);
        std::vector<MultiIndex> interior;
        Index m_int = 0;
        for (const MultiIndex& g : layout.grades())
            if (layout.contains(g + ei)) {
                interior.push_back(g);
                m_int += layout.slot_dim(g);
            }
        std::vector<Matrix> row;
        if (m_int == 0) {
            row.assign(static_cast<size_t>(sys.dim(i)), Matrix::Zero(r, r));
            shifts.push_back(std::move(row));
            continue;
        }
        Matrix a(r, m_int);
        {
            Index at = 0;
            for (const MultiIndex& g : interior) {
                a.middleCols(at, layout.slot_dim(g)) = quotient.middleCols(layout.offset(g), layout.slot_dim(g));
                at += layout.slot_dim(g);
            }
        }
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
        for (int l = 1; l <= sys.dim(i); ++l) {
            Matrix unit = Matrix::Zero(sys.dim(i), 1);
            unit(l - 1, 0) = 1.0;
            Matrix b(r, m_int);
            Index at = 0;
            for (const MultiIndex& g : interior) {
                // ζ -> e_l (x) ζ, then theta into X(g + e_i), inside K.
                const Matrix insert =
                    kron_id_right(theta_embed(sys, ei, g), h) * kron(unit, Matrix::Identity(layout.slot_dim(g), layout.slot_dim(g)));
                b.middleCols(at, layout.slot_dim(g)) =
                    quotient.middleCols(layout.offset(g + ei), layout.slot_dim(g + ei)) * insert;
                at += layout.slot_dim(g);
            }
            // Least-squares transport through the quotient: V Phi|int = Phi S.
            row.push_back(b * cod.pseudoInverse());
        }
        shifts.push_back(std::move(row));
    }

    return TruncatedDilation(sys, layout, h, std::move(quotient), std::move(pinv), embed,
                             std::move(shifts), norm, cut, ambiguous);
}

double DilationVerification::max() const {
    double m = std::max(embed_isometry, std::max(symbol_max, isom_max));
    for (double v : shift_isometry) m = std::max(m, v);
    for (double v : adjoint_intertwining) m = std::max(m, v);
    return m;
}

DilationVerification verify_dilation(const Representation& rep, const TruncatedDilation& dil,
                                     Index isom_budget) {
    DilationVerification out;
    const ProductSystem& sys = dil.system();
    const int k = sys.k();
    const Index r = dil.kdim();

    out.embed_isometry = spectral_norm(dil.embed().adjoint() * dil.embed() -
                                       Matrix::Identity(rep.hdim(), rep.hdim()));

    // (i) interior isometry of each V~(i).
    for (int i = 1; i <= k; ++i) {
        const auto interior = dil.interior_grades(MultiIndex::unit(k, i));
        if (interior.empty()) {
            out.shift_isometry.push_back(0.0);
            continue;
        }
        const Matrix q = dil.slot_span(interior);
        const Matrix m = dil.shift_row(i) * kron_id_left(sys.dim(i), q);
        out.shift_isometry.push_back(
            spectral_norm(m.adjoint() * m - Matrix::Identity(m.cols(), m.cols())));
    }

    // (ii) V(e_l)* W = W T(e_l)*.
    for (int i = 1; i <= k; ++i) {
        double worst = 0.0;
        if (dil.box()[i - 1] >= 1) {
            for (int l = 1; l <= sys.dim(i); ++l)
                worst = std::max(worst,
                                 spectral_norm(dil.shift(i, l).adjoint() * dil.embed() -
                                               dil.embed() * rep.block(i, l).adjoint()));
        }
        out.adjoint_intertwining.push_back(worst);
    }

    // (iv) frame compressions reproduce the two-sided symbols.
    for (const MultiIndex& a : dil.layout().grades()) {
        for (const MultiIndex& b : dil.layout().grades()) {
            if (!a.meet(b).is_zero()) continue;
            const Matrix lhs = dil.frame(b).adjoint() * dil.frame(a);
            const Matrix rhs = rep.ttilde(b).adjoint() * rep.ttilde(a);
            out.symbol_max = std::max(out.symbol_max, spectral_norm(lhs - rhs));
        }
    }

    // Lemma-isom form: V~_m* V~_n = I_{n∧m} (x) V(n-m) compressed to grades
    // with room for n on the input side and m on the output side.  Pairs
    // whose assembled shift matrices would blow the entry budget are skipped.
    Representation vrep = dil.as_representation();
    std::map<std::vector<int>, Matrix> vcache, spancache;
    const auto assembled = [&](const MultiIndex& n) -> const Matrix& {
        auto it = vcache.find(n.entries());
        if (it != vcache.end()) return it->second;
        return vcache.emplace(n.entries(), vrep.ttilde(n)).first->second;
    };
    const auto interior_span = [&](const MultiIndex& n) -> const Matrix& {
        auto it = spancache.find(n.entries());
        if (it != spancache.end()) return it->second;
        return spancache.emplace(n.entries(), dil.slot_span(dil.interior_grades(n))).first->second;
    };
    for (const MultiIndex& n : dil.layout().grades()) {
        for (const MultiIndex& m : dil.layout().grades()) {
            const Index wn = grade_dim(sys, n), wm = grade_dim(sys, m);
            if (wn * wn * r * r > isom_budget || wm * wm * r * r > isom_budget) {
                out.isom_complete = false;
                continue;
            }
            const auto in_grades = dil.interior_grades(n);
            const auto out_grades = dil.interior_grades(m);
            if (in_grades.empty() || out_grades.empty()) continue;
            const Matrix& qa = interior_span(n);
            const Matrix& qb = interior_span(m);
            // Compression of both sides to X(n) (x) Phi(interior) on the
            // input and X(m) (x) Phi(interior) on the output.
            const Matrix comp_n = kron_id_left(wn, qa);
            const Matrix comp_m = kron_id_left(wm, qb);
            const Matrix lhs = (assembled(m) * comp_m).adjoint() * (assembled(n) * comp_n);

            const MultiIndex meet = n.meet(m);
            const MultiIndex up = (n - m).pos(), down = (n - m).neg();
            const Matrix vmid = assembled(down).adjoint() * assembled(up);
            const Matrix x1 =
                apply_left_kron_id(theta_embed(sys, meet, up).adjoint(), comp_n, r);
            const Matrix x2 = apply_id_kron_left(grade_dim(sys, meet), vmid, x1);
            const Matrix rhs =
                comp_m.adjoint() * apply_left_kron_id(theta_embed(sys, meet, down), x2, r);
            out.isom_max = std::max(out.isom_max, spectral_norm(lhs - rhs));
        }
    }
    return out;
}

std::optional<double> dilation_doubly_commuting_residual(const TruncatedDilation& dil) {
    const ProductSystem& sys = dil.system();
    const Index r = dil.kdim();
    bool any = false;
    double worst = 0.0;
    for (int i = 1; i <= sys.k(); ++i) {
        for (int j = 1; j <= sys.k(); ++j) {
            if (i == j) continue;
            const MultiIndex deep =
                MultiIndex::unit(sys.k(), i) + MultiIndex::unit(sys.k(), j);
            const auto grades = dil.interior_grades(deep);
            if (grades.empty()) continue;
            any = true;
            const Matrix q = dil.slot_span(grades);
            const Matrix comp = kron_id_left(sys.dim(i), q);
            const Matrix lhs = dil.shift_row(j).adjoint() * (dil.shift_row(i) * comp);
            const Matrix x1 = apply_id_kron_left(sys.dim(i), dil.shift_row(j).adjoint(), comp);
            const Matrix x2 = apply_left_kron_id(sys.twist(i, j), x1, r);
            const Matrix rhs = apply_id_kron_left(sys.dim(j), dil.shift_row(i), x2);
            worst = std::max(worst, spectral_norm(lhs - rhs));
        }
    }
    if (!any) return std::nullopt;
    return worst;
}

NicaCheck nica_residual(const TruncatedDilation& dil, const MultiIndex& n, const MultiIndex& m,
                        Index budget) {
    NicaCheck out;
    const ProductSystem& sys = dil.system();
    const Index r = dil.kdim();
    const MultiIndex join = n.join(m);
    const auto admissible = dil.interior_grades(join);
    if (admissible.empty() || !dil.layout().contains(join)) {
        out.inconclusive = true;
        return out;
    }
    const Index worst_fiber =
        std::max(grade_dim(sys, n), std::max(grade_dim(sys, m), grade_dim(sys, join)));
    if (worst_fiber * r * r > budget) {
        out.inconclusive = true;
        return out;
    }
    Representation vrep = dil.as_representation();
    const Matrix vn = vrep.ttilde(n);
    const Matrix vm = vrep.ttilde(m);
    const Matrix vj = vrep.ttilde(join);
    const Matrix lhs = (vn * vn.adjoint()) * (vm * vm.adjoint());
    const Matrix rhs = vj * vj.adjoint();
    const Matrix q = dil.slot_span(admissible);
    out.residual = spectral_norm(q.adjoint() * (lhs - rhs) * q);
    return out;
}

NicaCheck nica_residual(const Representation& rep, const MultiIndex& n, const MultiIndex& m,
                        double tol_isometry) {
    // Each row must be a genuine isometry for the range projections to mean
    // anything; otherwise the identity is vacuous.
    for (int i = 1; i <= rep.k(); ++i) {
        const Matrix row = rep.row(i);
        if (spectral_norm(row.adjoint() * row -
                          Matrix::Identity(row.cols(), row.cols())) > tol_isometry)
            throw DomainError("nica check requires an isometric representation");
    }
    NicaCheck out;
    const Matrix vn = rep.ttilde(n);
    const Matrix vm = rep.ttilde(m);
    const Matrix vj = rep.ttilde(n.join(m));
    out.residual =
        spectral_norm((vn * vn.adjoint()) * (vm * vm.adjoint()) - vj * vj.adjoint());
    return out;
}

UniquenessResult uniqueness_check(const TruncatedDilation& a, const TruncatedDilation& b) {
    if (a.kdim() != b.kdim())
        throw DimensionError("grade-frame rank mismatch: " + std::to_string(a.kdim()) + " vs " +
                             std::to_string(b.kdim()));
    UniquenessResult out;
    const Matrix m = b.quotient() * a.quotient_pinv();
    const Index r = a.kdim();
    out.unitarity = std::max(
        spectral_norm(m.adjoint() * m - Matrix::Identity(r, r)),
        spectral_norm(m * m.adjoint() - Matrix::Identity(r, r)));
    out.frame_match = spectral_norm(m * a.quotient() - b.quotient());
    const ProductSystem& sys = a.system();
    for (int i = 1; i <= sys.k(); ++i) {
        const auto interior = a.interior_grades(MultiIndex::unit(sys.k(), i));
        if (interior.empty()) continue;
        const Matrix q = a.slot_span(interior);
        for (int l = 1; l <= sys.dim(i); ++l)
            out.intertwining = std::max(
                out.intertwining,
                spectral_norm((m * a.shift(i, l) - b.shift(i, l) * m) * q));
    }
    return out;
}

std::vector<Index> gram_rank_profile(const Representation& rep, const MultiIndex& box,
                                     double null_cut) {
    GradedOperator gram = build_gram_r(rep, box);
    const BoxLayout& layout = gram.layout();
    std::vector<Index> ranks;
    for (const MultiIndex& n : layout.grades()) {
        std::vector<Index> cols;
        for (const MultiIndex& p : layout.grades()) {
            if (!p.leq(n)) continue;
            for (Index c = 0; c < layout.slot_dim(p); ++c) cols.push_back(layout.offset(p) + c);
        }
        Matrix sub(static_cast<Index>(cols.size()), static_cast<Index>(cols.size()));
        for (size_t x = 0; x < cols.size(); ++x)
            for (size_t y = 0; y < cols.size(); ++y)
                sub(static_cast<Index>(x), static_cast<Index>(y)) =
                    gram.dense()(cols[x], cols[y]);
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(sub), Eigen::EigenvaluesOnly);
        const double norm = std::max(std::abs(es.eigenvalues()(0)),
                                     std::abs(es.eigenvalues()(sub.rows() - 1)));
        Index rank = 0;
        for (Index e = 0; e < sub.rows(); ++e)
            if (es.eigenvalues()(e) > null_cut * norm) ++rank;
        ranks.push_back(rank);
    }
    return ranks;
}

}  // namespace rdil
