#pragma once

#include <vector>

#include "rdil/representation.hpp"

namespace rdil {

// Block operator on ⊕_{0 <= n <= box} X(n) (x) H, stored dense with grades
// in lexicographic order.
class GradedOperator {
public:
    GradedOperator(BoxLayout layout, Matrix dense)
        : layout_(std::move(layout)), dense_(std::move(dense)) {}

    const BoxLayout& layout() const { return layout_; }
    const Matrix& dense() const { return dense_; }
    Matrix& dense() { return dense_; }

    // Block X(q) (x) H -> X(p) (x) H.
    Eigen::Block<const Matrix> block(const MultiIndex& p, const MultiIndex& q) const {
        return dense_.block(layout_.offset(p), layout_.offset(q), layout_.slot_dim(p),
                            layout_.slot_dim(q));
    }

private:
    BoxLayout layout_;
    Matrix dense_;
};

// The four factors of the telescoping Gram identities:
//   R(p,q) = I_{p ∧ q} (x) T(q-p)
//   S(p,q) = R(p,q) for q >= p, else 0
//   D(p,p) = Σ_{u, e(u) <= p} (-1)^|u| I_{p-e(u)} (x) T~_{e(u)}* T~_{e(u)}
//   L(n,m) = (-1)^|v| I_n (x) T(e(v)) when m - n = e(v), else 0
// All sums in R = S*DS, SL = I and D = L*RL are internal to the box, so the
// truncated identities hold exactly.
struct GramFactors {
    GradedOperator r;
    GradedOperator s;
    GradedOperator d;
    GradedOperator l;
};

GramFactors build_gram(const Representation& rep, const MultiIndex& box);

struct CompIdentityResiduals {
    double r_sds = 0.0;  // ||R - S*DS||
    double sl_i = 0.0;   // ||SL - I||
    double d_lrl = 0.0;  // ||D - L*RL||
    double max() const { return std::max(r_sds, std::max(sl_i, d_lrl)); }
};

CompIdentityResiduals verify_comp_identities(const GramFactors& f);
CompIdentityResiduals verify_comp_identities(const Representation& rep, const MultiIndex& box);

// Inclusion-exclusion defect over the index subset v (1-based), an operator
// on X(e(v)) (x) H, Hermitized before spectral analysis.
Matrix brehmer_defect(const Representation& rep, const std::vector<int>& v);

struct BrehmerCertificate {
    struct SubsetEntry {
        std::vector<int> v;
        double min_eigenvalue;
        Index dim;
    };
    std::vector<SubsetEntry> subsets;  // all v ⊆ [k] with |v| >= 1
    double worst = 0.0;                // most negative eigenvalue over subsets
    bool condition_d = false;
    double tol = 0.0;                  // absolute threshold actually applied
};

// Condition (D): every defect is PSD up to -tol_psd scaled by the defect norm.
BrehmerCertificate check_regular_dilation(const Representation& rep, double tol_psd = 1e-10);

struct ProductFormulaResult {
    double residual = 0.0;          // defect vs product of one-letter factors
    double commutator_residual = 0.0;  // the factors must commute pairwise
};

// Defect(v) = Π_{i in v} (I - I_{e(v)-e_i} (x) T~(i)* T~(i)) for doubly
// commuting representations.
ProductFormulaResult product_formula_check(const Representation& rep, const std::vector<int>& v,
                                           double tol_dc = 1e-10);

}  // namespace rdil
