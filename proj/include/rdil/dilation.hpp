#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rdil/gram.hpp"
#include "rdil/representation.hpp"

namespace rdil {

struct DilationOptions {
    double tol_psd = 1e-10;            // gate for condition (D)
    double null_cut = 1e-10;           // rank cut, relative to ||R||
    std::uint64_t coordinate_seed = 0; // nonzero: random unitary change of K coordinates
};

// Raised when the positivity condition fails; carries the certificate.
class ConditionDError : public DomainError {
public:
    ConditionDError(BrehmerCertificate cert, const std::string& what)
        : DomainError(what), certificate(std::move(cert)) {}
    BrehmerCertificate certificate;
};

// Finite box piece of the minimal regular isometric dilation.  K is the
// range of the Gram square root over the box; `quotient` maps the flattened
// graded space onto K coordinates, grade frames are its slot restrictions,
// and the shift blocks act on K, defined on the grades that stay in the box.
class TruncatedDilation {
public:
    TruncatedDilation(ProductSystem system, BoxLayout layout, Index rep_hdim, Matrix quotient,
                      Matrix quotient_pinv, Matrix embed,
                      std::vector<std::vector<Matrix>> shift_blocks, double gram_norm,
                      double null_cut_abs, int ambiguous_count);

    const ProductSystem& system() const { return system_; }
    const BoxLayout& layout() const { return layout_; }
    const MultiIndex& box() const { return layout_.box(); }
    Index rep_hdim() const { return rep_hdim_; }
    Index kdim() const { return kdim_; }

    const Matrix& quotient() const { return quotient_; }
    const Matrix& quotient_pinv() const { return quotient_pinv_; }
    const Matrix& embed() const { return embed_; }  // W : H -> K
    const Matrix& shift(int i, int l) const;        // V^(i)(e_l) on K, 1-based
    const std::vector<std::vector<Matrix>>& shifts() const { return shift_; }

    // Grade frame V~_n (X(n) (x) H) in K coordinates.
    Matrix frame(const MultiIndex& n) const;

    // Row [V_1 ... V_{d_i}] : E_i (x) K -> K.
    Matrix shift_row(int i) const;

    // Orthonormal basis of the span of the listed grade slots in K.
    Matrix slot_span(const std::vector<MultiIndex>& grades) const;
    // Grades g in the box with g + step still in the box.
    std::vector<MultiIndex> interior_grades(const MultiIndex& step) const;

    // The shift blocks as a representation-shaped object on K (contractive,
    // with the defining relations valid on interior domains only).
    Representation as_representation(Index cap = 1 << 26) const;

    double gram_norm() const { return gram_norm_; }
    double null_cut_abs() const { return null_cut_abs_; }
    // Eigenvalues inside [cut/10, cut]: the rank cut is ambiguous there.
    int ambiguous_count() const { return ambiguous_count_; }

private:
    ProductSystem system_;
    BoxLayout layout_;
    Index rep_hdim_;
    Index kdim_;
    Matrix quotient_;
    Matrix quotient_pinv_;
    Matrix embed_;
    std::vector<std::vector<Matrix>> shift_;
    double gram_norm_;
    double null_cut_abs_;
    int ambiguous_count_;
};

// Gram matrix R over the box (R factor only).
GradedOperator build_gram_r(const Representation& rep, const MultiIndex& box);

// Throws ConditionDError when condition (D) fails at tol_psd.
TruncatedDilation construct_dilation(const Representation& rep, const MultiIndex& box,
                                     const DilationOptions& opts = {});

struct DilationVerification {
    double embed_isometry = 0.0;                   // ||W*W - I||
    std::vector<double> shift_isometry;            // per generator, interior domain
    std::vector<double> adjoint_intertwining;      // per generator: max_l ||V_l* W - W T_l*||
    double symbol_max = 0.0;                       // compressions reproduce T(n), all mixed n
    double isom_max = 0.0;                         // V~_m* V~_n = I (x) V(n-m) on interiors
    bool isom_complete = true;                     // false when pairs were skipped by budget
    double max() const;
};

// `isom_budget` caps the entry count of intermediate compressed operators in
// the Lemma-isom sweep; over-budget grade pairs are skipped and flagged.
DilationVerification verify_dilation(const Representation& rep, const TruncatedDilation& dil,
                                     Index isom_budget = 1000000);

// Double commutation of the shift blocks compressed to grades with room for
// both letters; empty when no pair has a non-empty domain.
std::optional<double> dilation_doubly_commuting_residual(const TruncatedDilation& dil);

struct NicaCheck {
    bool inconclusive = false;  // admissible domain empty (or over budget)
    double residual = 0.0;
};

// Range-projection lattice identity
//   V~_n V~_n* V~_m V~_m* = V~_{n∨m} V~_{n∨m}*
// compressed to the grades g with g + n∨m inside the box.
NicaCheck nica_residual(const TruncatedDilation& dil, const MultiIndex& n, const MultiIndex& m,
                        Index budget = 4000000);

// The same identity for a genuinely isometric representation on H.
NicaCheck nica_residual(const Representation& isometric_rep, const MultiIndex& n,
                        const MultiIndex& m, double tol_isometry = 1e-8);

struct UniquenessResult {
    double unitarity = 0.0;     // ||M*M - I|| and ||MM* - I||
    double frame_match = 0.0;   // ||M Phi_A - Phi_B||
    double intertwining = 0.0;  // ||(M V_A - V_B M)| interior||
    double max() const { return std::max(unitarity, std::max(frame_match, intertwining)); }
};

// Grade-frame matching unitary between two constructions over the same box.
// Throws DimensionError when the ranks disagree.
UniquenessResult uniqueness_check(const TruncatedDilation& a, const TruncatedDilation& b);

// Numerical rank of the Gram sub-block over {p : p <= n}, per grade n in
// lexicographic order.
std::vector<Index> gram_rank_profile(const Representation& rep, const MultiIndex& box,
                                     double null_cut = 1e-10);

}  // namespace rdil
