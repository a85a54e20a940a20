#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rdil/multi_index.hpp"
#include "rdil/types.hpp"

namespace rdil {

struct CoherenceReport {
    double max_unitarity_residual = 0.0;   // max over stored twists of ||t*t - I||
    double max_hexagon_residual   = 0.0;   // max over triples (i,j,l) of the braid identity
    bool ok(double tol = 1e-12) const {
        return max_unitarity_residual <= tol && max_hexagon_residual <= tol;
    }
};

// Finite-dimensional fibers E_1,...,E_k over C together with the exchange
// unitaries t_{i,j} : E_i (x) E_j -> E_j (x) E_i.  Only pairs i > j are
// stored; t_{j,i} is the inverse (adjoint) and t_{i,i} the identity.
//
// Matrix convention (1-based in this description): the column of t_{i,j}
// indexed by (l-1)*d_j + (m-1) is the image of e^(i)_l (x) e^(j)_m, and the
// row indexed by (r-1)*d_i + (s-1) corresponds to e^(j)_r (x) e^(i)_s.
class ProductSystem {
public:
    ProductSystem(std::vector<int> dims, std::map<std::pair<int, int>, Matrix> twists = {});

    // All exchanges are the plain factor swap (perfect shuffle).
    static ProductSystem untwisted(std::vector<int> dims);

    // One-dimensional fibers twisted by unimodular phases; lambda(i,j) is the
    // multiplier of t_{i,j}, so lambda(j,i) = conj(lambda(i,j)) and
    // lambda(i,i) = 1.  `lambda` is indexed 0-based as lambda[i][j].
    static ProductSystem scalar(const std::vector<std::vector<Complex>>& lambda);

    // Exchange by a permutation of basis pairs: perm maps the (l,m) input
    // pair index (l-1)*d_j + (m-1) to the output pair index (r-1)*d_i + (s-1).
    static Matrix permutation_twist(int di, int dj, const std::vector<int>& perm);

    // Perfect shuffle E_i (x) E_j -> E_j (x) E_i.
    static Matrix shuffle(int di, int dj);

    int k() const { return static_cast<int>(dims_.size()); }
    int dim(int i) const;  // 1-based
    const std::vector<int>& dims() const { return dims_; }

    // t_{i,j} for arbitrary i, j (derived for i < j, identity for i = j).
    Matrix twist(int i, int j) const;

    bool has_stored_twist(int i, int j) const;  // i > j
    const std::map<std::pair<int, int>, Matrix>& stored_twists() const { return twists_; }

    // True when every fiber is one-dimensional.
    bool is_scalar() const;
    // Twist phase t_{i,j} for a scalar system.
    Complex lambda(int i, int j) const;
    // Full k x k phase matrix of a scalar system.
    std::vector<std::vector<Complex>> lambda_matrix() const;

    // Unitarity of the stored twists and the braid (hexagon) identity for
    // every triple of generators.
    CoherenceReport coherence() const;
    // Throws DomainError when coherence fails the tolerance.
    void require_coherent(double tol = 1e-12) const;

private:
    std::vector<int> dims_;
    std::map<std::pair<int, int>, Matrix> twists_;  // keys (i,j) with i > j, 1-based
};

}  // namespace rdil
