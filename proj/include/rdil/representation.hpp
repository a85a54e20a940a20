#pragma once

#include <vector>

#include "rdil/graded.hpp"
#include "rdil/product_system.hpp"
#include "rdil/types.hpp"

namespace rdil {

struct ValidationReport {
    std::vector<double> sigma_max;       // per generator, largest singular value of the row
    std::vector<double> margins;         // 1 - sigma_max
    struct PairResidual { int i; int j; double residual; };
    std::vector<PairResidual> commutation;  // pairs i < j
    bool valid = false;
    double tol_contraction = 1e-10;
    double tol_residual = 1e-10;
};

struct DoublyCommutingReport {
    struct PairResidual { int i; int j; double residual; };
    std::vector<PairResidual> pairs;  // ordered pairs i != j
    double max_residual = 0.0;
    bool doubly_commuting = false;
    double tol = 1e-10;
};

struct ConsdcReport {
    double part_i = 0.0;    // (I_m x T_n)(I_n x T_m*) = T_m* T_n for n ∧ m = 0
    double part_ii = 0.0;
    double part_iii = 0.0;
    double part_iv = 0.0;
    double max() const;
};

// A k-tuple of row contractions compatible with the twists of the system.
// Block l of generator i is the image of the basis vector e^(i)_l, an h x h
// matrix; the induced row T~(i) = [T_1 ... T_{d_i}] acts E_i (x) H -> H.
// The coefficient algebra is C, so its representation on H is scalar
// multiplication and carries no explicit data.
class Representation {
public:
    Representation(ProductSystem system, Index hdim, std::vector<std::vector<Matrix>> blocks);

    static Representation zero(ProductSystem system, Index hdim);

    const ProductSystem& system() const { return system_; }
    Index hdim() const { return hdim_; }
    int k() const { return system_.k(); }

    const Matrix& block(int i, int l) const;  // 1-based generator and letter
    const std::vector<std::vector<Matrix>>& blocks() const { return blocks_; }

    // T~(i): h x (d_i * h), blocks concatenated in letter order.
    Matrix row(int i) const;

    // Generalized power of one generator: E_i^n (x) H -> H.
    Matrix ttilde_power(int i, int n) const;

    // T~_n : X(n) (x) H -> H for n >= 0, in the canonical flattening.
    Matrix ttilde(const MultiIndex& n) const;

    // T(n) = T~_{n-}^* T~_{n+} : X(n+) (x) H -> X(n-) (x) H, any n in Z^k.
    Matrix symbol(const MultiIndex& n) const;

    // Conjugate every block by the same unitary (U* T U).
    Representation conjugated(const Matrix& u) const;

    Index dimension_cap() const { return cap_; }
    void set_dimension_cap(Index cap) { cap_ = cap; }

private:
    ProductSystem system_;
    Index hdim_;
    std::vector<std::vector<Matrix>> blocks_;
    Index cap_ = kDefaultDimensionCap;
};

// Contractivity of every row and the twisted commutation relation
//   T~(i)(I_i x T~(j)) = T~(j)(I_j x T~(i))(t_{i,j} x I_H)  on E_i x E_j x H
// for every pair i < j.
ValidationReport validate(const Representation& rep, double tol_contraction = 1e-10,
                          double tol_residual = 1e-10);

// Adjoint-twisted commutation
//   T~(j)* T~(i) = (I_j x T~(i))(t_{i,j} x I_H)(I_i x T~(j)*)  as maps
// E_i (x) H -> E_j (x) H, for every ordered pair i != j.
DoublyCommutingReport doubly_commuting_report(const Representation& rep, double tol = 1e-10);

inline bool is_doubly_commuting(const Representation& rep, double tol = 1e-10) {
    return doubly_commuting_report(rep, tol).doubly_commuting;
}

// Numerical check of the four consequences of double commutation used by the
// product formula, over grades inside `box`.
ConsdcReport consdc_report(const Representation& rep, const MultiIndex& box);

// Residual of T~_{n+m} = T~_n (I_n x T~_m) modulo the theta alignment.
double multiplicativity_residual(const Representation& rep, const MultiIndex& n,
                                 const MultiIndex& m);

}  // namespace rdil
