#pragma once

#include <vector>

#include "rdil/multi_index.hpp"
#include "rdil/product_system.hpp"
#include "rdil/types.hpp"

namespace rdil {

// Flattening convention used everywhere in this library:
//
//   X(n) = E_1^{n_1} (x) E_2^{n_2} (x) ... (x) E_k^{n_k},
//
// letters sorted ascending by generator index, flat index row-major over the
// tensor factors (leftmost factor slowest), and the coefficient space H as
// the last (fastest) factor.  With this layout I (x) M embeddings are plain
// Kronecker products.

// The letter word of a nonnegative grade: generator 1 repeated n_1 times,
// then generator 2, and so on.
std::vector<int> word_of(const MultiIndex& n);

// dim X(n) = prod_i d_i^{n_i}
Index grade_dim(const ProductSystem& sys, const MultiIndex& n);

// dim of the tensor space spanned by an arbitrary letter word.
Index word_dim(const ProductSystem& sys, const std::vector<int>& word);

// Elementary swap of the letters at positions pos, pos+1 (0-based) of `word`,
// embedded as I (x) t_{a,b} (x) I in the full word space.
Matrix adjacent_swap_unitary(const ProductSystem& sys, const std::vector<int>& word, int pos);

// Unitary carrying the flattened `from` word space onto the flattened `to`
// word space, realized by stable adjacent transpositions.  The two words must
// be equal as multisets.  Path independence is guaranteed by the braid
// coherence of the twists (and checked by tests, not assumed blindly).
Matrix reorder_unitary(const ProductSystem& sys, const std::vector<int>& from,
                       const std::vector<int>& to);

// theta_{n,m} : X(n) (x) X(m) -> X(n+m), built by sorting the concatenated
// word. Grades must be nonnegative.
Matrix theta_embed(const ProductSystem& sys, const MultiIndex& n, const MultiIndex& m);

// I_{X(a)} (x) g, with g acting on X(b) (x) H, viewed as an operator on
// X(a+b) (x) H through theta_{a,b}.
Matrix embed_right_factor(const ProductSystem& sys, const MultiIndex& a, const MultiIndex& b,
                          const Matrix& g, Index hdim);

// The suppressed isomorphism X(n) (x) X(m) -> X(m) (x) X(n) (x H on the right).
Matrix factor_swap(const ProductSystem& sys, const MultiIndex& n, const MultiIndex& m,
                   Index hdim);

// Direct sum ⊕_{0 <= n <= box} X(n) (x) H flattened with grades in
// lexicographic order.
class BoxLayout {
public:
    BoxLayout(const ProductSystem& sys, MultiIndex box, Index hdim,
              Index cap = kDefaultDimensionCap);

    const MultiIndex& box() const { return box_; }
    Index hdim() const { return hdim_; }
    Index total() const { return total_; }
    std::size_t grade_count() const { return grades_.size(); }
    const std::vector<MultiIndex>& grades() const { return grades_; }

    const MultiIndex& grade(std::size_t idx) const { return grades_[idx]; }
    std::size_t index_of(const MultiIndex& n) const { return box_grade_index(box_, n); }
    bool contains(const MultiIndex& n) const { return n.nonnegative() && n.leq(box_); }

    // Slot of grade n inside the flattened sum: offset and width (incl. H).
    Index offset(const MultiIndex& n) const { return offsets_[index_of(n)]; }
    Index slot_dim(const MultiIndex& n) const { return slot_dims_[index_of(n)]; }

private:
    MultiIndex box_;
    Index hdim_;
    Index total_;
    std::vector<MultiIndex> grades_;
    std::vector<Index> offsets_;
    std::vector<Index> slot_dims_;
};

}  // namespace rdil
