#include "rdil/graded.hpp"

#include <algorithm>
#include <numeric>

namespace rdil {

std::vector<int> word_of(const MultiIndex& n) {
    if (!n.nonnegative()) throw DomainError("grade must be nonnegative");
    std::vector<int> w;
    w.reserve(static_cast<size_t>(std::max<long>(0, n.total())));
    for (int i = 0; i < n.size(); ++i)
        for (int r = 0; r < n[i]; ++r) w.push_back(i + 1);
    return w;
}

Index word_dim(const ProductSystem& sys, const std::vector<int>& word) {
    Index d = 1;
    for (int letter : word) d *= sys.dim(letter);
    return d;
}

Index grade_dim(const ProductSystem& sys, const MultiIndex& n) {
    return word_dim(sys, word_of(n));
}

Matrix adjacent_swap_unitary(const ProductSystem& sys, const std::vector<int>& word, int pos) {
    const int len = static_cast<int>(word.size());
    if (pos < 0 || pos + 1 >= len) throw DomainError("swap position out of range");
    Index left = 1, right = 1;
    for (int p = 0; p < pos; ++p) left *= sys.dim(word[static_cast<size_t>(p)]);
    for (int p = pos + 2; p < len; ++p) right *= sys.dim(word[static_cast<size_t>(p)]);
    const Matrix t = sys.twist(word[static_cast<size_t>(pos)], word[static_cast<size_t>(pos + 1)]);
    return kron_id_left(left, kron_id_right(t, right));
}

Matrix reorder_unitary(const ProductSystem& sys, const std::vector<int>& from,
                       const std::vector<int>& to) {
    {
        std::vector<int> a = from, b = to;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) throw DomainError("words are not equal as multisets");
    }
    const Index dim = word_dim(sys, from);
    Matrix u = Matrix::Identity(dim, dim);

    // Stable matching: the r-th occurrence of a letter in `from` is sent to
    // the r-th occurrence of the same letter in `to`.
    const int len = static_cast<int>(from.size());
    std::vector<int> target(static_cast<size_t>(len));
    {
        std::vector<int> used(static_cast<size_t>(len), 0);
        for (int p = 0; p < len; ++p) {
            for (int q = 0; q < len; ++q) {
                if (!used[static_cast<size_t>(q)] && to[static_cast<size_t>(q)] == from[static_cast<size_t>(p)]) {
                    target[static_cast<size_t>(p)] = q;
                    used[static_cast<size_t>(q)] = 1;
                    break;
                }
            }
        }
    }

    // Bubble the target positions into order; each swap is an embedded twist.
    std::vector<int> word = from;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int p = 0; p + 1 < len; ++p) {
            if (target[static_cast<size_t>(p)] > target[static_cast<size_t>(p + 1)]) {
                u = adjacent_swap_unitary(sys, word, p) * u;
                std::swap(word[static_cast<size_t>(p)], word[static_cast<size_t>(p + 1)]);
                std::swap(target[static_cast<size_t>(p)], target[static_cast<size_t>(p + 1)]);
                moved = true;
            }
        }
    }
    return u;
}

Matrix theta_embed(const ProductSystem& sys, const MultiIndex& n, const MultiIndex& m) {
    if (!n.nonnegative() || !m.nonnegative()) throw DomainError("theta_embed requires n, m >= 0");
    std::vector<int> from = word_of(n);
    const std::vector<int> tail = word_of(m);
    from.insert(from.end(), tail.begin(), tail.end());
    return reorder_unitary(sys, from, word_of(n + m));
}

Matrix embed_right_factor(const ProductSystem& sys, const MultiIndex& a, const MultiIndex& b,
                          const Matrix& g, Index hdim) {
    const Matrix theta = kron_id_right(theta_embed(sys, a, b), hdim);
    return theta * kron_id_left(grade_dim(sys, a), g) * theta.adjoint();
}

Matrix factor_swap(const ProductSystem& sys, const MultiIndex& n, const MultiIndex& m,
                   Index hdim) {
    std::vector<int> from = word_of(n);
    const std::vector<int> wm = word_of(m);
    from.insert(from.end(), wm.begin(), wm.end());
    std::vector<int> to = word_of(m);
    const std::vector<int> wn = word_of(n);
    to.insert(to.end(), wn.begin(), wn.end());
    return kron_id_right(reorder_unitary(sys, from, to), hdim);
}

BoxLayout::BoxLayout(const ProductSystem& sys, MultiIndex box, Index hdim, Index cap)
    : box_(std::move(box)), hdim_(hdim) {
    if (box_.size() != sys.k()) throw DimensionError("box length must equal k");
    if (!box_.nonnegative()) throw DomainError("box must be nonnegative");
    if (hdim_ < 1) throw DimensionError("coefficient space must have positive dimension");
    grades_ = box_grades(box_);
    offsets_.reserve(grades_.size());
    slot_dims_.reserve(grades_.size());
    total_ = 0;
    for (const MultiIndex& n : grades_) {
        const Index d = grade_dim(sys, n) * hdim_;
        offsets_.push_back(total_);
        slot_dims_.push_back(d);
        total_ += d;
        if (total_ > cap)
            throw ResourceError("flattened box dimension exceeds cap (" + std::to_string(cap) + ")");
    }
}

}  // namespace rdil
