#pragma once

#include <cstdint>
#include <vector>

#include "rdil/representation.hpp"

namespace rdil {

// Deterministic random source; the raw engine is mapped to doubles by hand
// so that streams are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);        // inclusive bounds
    double gaussian();
    Complex complex_gaussian();
    Complex unit_phase();

    // Gaussian matrix with independent complex entries.
    Matrix gaussian_matrix(Index rows, Index cols);
    // Haar-ish unitary from the QR of a Gaussian matrix.
    Matrix random_unitary(Index n);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// k commuting contractive blocks built from polynomials in one random
// matrix; untwisted system.  Every generator row is scaled strictly inside
// the unit ball.
Representation random_commuting(Rng& rng, int k, const std::vector<int>& dims, Index hdim);

// T_i = c_i W_i with Weyl unitaries W_i = U^{a_i} V^{b_i} on C^q, U the
// clock and V the shift at the primitive root of unity of order q.  The
// scalar system is built from the phases the W_i actually satisfy, so both
// the commutation relation and its adjoint-twisted form hold exactly.
// Exponent pairs (a_i, b_i) are drawn from rng when not supplied.
Representation scaled_twisted_unitaries(Rng& rng, int k, int q,
                                        const std::vector<double>& scales = {},
                                        const std::vector<std::pair<int, int>>& exponents = {});

// T^(i)_l = I (x) ... (x) C^(i)_l (x) ... (x) I on H = (x)_i H_i, with a
// random row contraction per tensor leg; untwisted system.
Representation tensor_doubly_commuting(Rng& rng, int k, const std::vector<int>& dims,
                                       const std::vector<Index>& leg_dims);

// Permutation twists of product form together with equal-weight diagonal
// blocks; doubly commuting by construction (and re-checked numerically).
Representation kgraph_permutation(Rng& rng, int k, const std::vector<int>& dims, Index hdim);

// One-dimensional representation t = (t_1, ..., t_k) of the scalar system
// with the given phase matrix (untwisted when omitted).
Representation scalar_tuple(const std::vector<Complex>& t,
                            const std::vector<std::vector<Complex>>& lambda = {});

// Commuting k-tuple a_i * N with N the 2x2 nilpotent shift; contractive for
// |a_i| <= 1 and never doubly commuting for a_i != 0.  The Brehmer condition
// fails exactly when sum |a_i|^2 > 1.
Representation nilpotent_family(const std::vector<Complex>& a);

// Random coherent twist families for coherence / Fock tests.
ProductSystem random_scalar_system(Rng& rng, int k);
ProductSystem random_diagonal_system(Rng& rng, int k, const std::vector<int>& dims);
// Arbitrary unitary twist; coherent automatically for k = 2.
ProductSystem random_two_generator_system(Rng& rng, int d1, int d2);
// Product-form permutation twists.
ProductSystem random_permutation_system(Rng& rng, int k, const std::vector<int>& dims);

}  // namespace rdil
