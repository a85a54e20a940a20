#pragma once

#include <optional>
#include <vector>

#include "rdil/dilation.hpp"
#include "rdil/polynomial.hpp"
#include "rdil/representation.hpp"

namespace rdil {

// Creation operators on the graded sum ⊕_{0 <= n <= box} X(n).  A creation
// block raises the grade by e_i: insert the letter on the left, then sort it
// into place with theta.  Blocks leaving the box are zero, which keeps the
// truncated operators contractive and the commutation relation exact; the
// Toeplitz isometry only holds on interior grades.
class TruncatedFock {
public:
    TruncatedFock(ProductSystem system, MultiIndex box, Index cap = kDefaultDimensionCap);

    const ProductSystem& system() const { return system_; }
    const BoxLayout& layout() const { return layout_; }
    const MultiIndex& box() const { return layout_.box(); }
    Index dim() const { return layout_.total(); }

    // L(e^(i)_l) on the whole truncated space.
    Matrix creation(int i, int l) const;
    // Single block X(n) -> X(n + e_i).
    Matrix creation_block(int i, int l, const MultiIndex& n) const;

    // The creation tuple as a representation of the system on the box space.
    Representation as_representation() const;
    // The same data as a truncated dilation with trivial quotient (the box
    // space itself is the dilation of the zero representation).
    TruncatedDilation as_dilation() const;

private:
    ProductSystem system_;
    BoxLayout layout_;
};

// Closed-form weight of the twisted shift on l2(Z+^k): generator i acting on
// grade n picks up the product over j < i of the phase by which the new
// letter passes the n_j letters of generator j.  Requires a unimodular phase
// matrix with lambda(j,i) = conj(lambda(i,j)) and unit diagonal.
Complex scalar_shift_weight(const std::vector<std::vector<Complex>>& lambda, const MultiIndex& n,
                            int i);

// Entrywise comparison of the braided creation operators against the scalar
// closed form; the system must have one-dimensional fibers.
double fock_oracle_residual(const TruncatedFock& fock);

// ||L~(i)* L~(i) - I|| restricted to interior grades.
double toeplitz_residual(const TruncatedFock& fock, int i);

// Twisted commutation of the creation operators; exact on the whole
// truncated space because out-of-box blocks vanish on both sides.
double creation_commutation_residual(const TruncatedFock& fock, int i, int j);

struct VnReport {
    double norm_t = 0.0;
    std::vector<double> norm_s_by_n;  // truncated creation norms for N = 1..N_max
    double margin = 0.0;              // last norm_s - norm_t
    bool monotone = true;             // norm_s_by_n nondecreasing
};

// Polynomial norms at the representation blocks and at the truncated
// creation operators over boxes N*(1,...,1), N = 1..n_max.  The truncated
// norms are honest lower bounds for the full creation norm and nondecreasing
// in N, since the boxes are nested co-invariant subspaces.
VnReport vn_margin(const Representation& rep, const NcPolynomial& p, int n_max,
                   Index cap = kDefaultDimensionCap);

struct CharacterVerdict {
    bool accepted = false;
    std::vector<std::string> violations;
    // Pairs whose phase sits within a decade of the lambda = 1 test cutoff;
    // acceptance is discontinuous there.
    std::vector<std::pair<int, int>> boundary_flags;
};

// Membership in the character set: |t_i| <= 1 for all i and t_i t_j = 0
// whenever lambda(i,j) != 1 (both tested at 1e-12).
CharacterVerdict character_check(const std::vector<std::vector<Complex>>& lambda,
                                 const std::vector<Complex>& t, double tol = 1e-12);

}  // namespace rdil
