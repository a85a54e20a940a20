#include "rdil/multi_index.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace rdil {

MultiIndex MultiIndex::unit(int k, int i) {
    if (i < 1 || i > k) throw DomainError("generator index out of range: " + std::to_string(i));
    MultiIndex n = zero(k);
    n[i - 1] = 1;
    return n;
}

MultiIndex MultiIndex::unit_set(int k, const std::vector<int>& u) {
    MultiIndex n = zero(k);
    for (int i : u) {
        if (i < 1 || i > k) throw DomainError("generator index out of range: " + std::to_string(i));
        n[i - 1] += 1;
    }
    return n;
}

void MultiIndex::check_same_size(const MultiIndex& o) const {
    if (size() != o.size())
        throw DimensionError("multi-index length mismatch: " + std::to_string(size()) + " vs " +
                             std::to_string(o.size()));
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    check_same_size(o);
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) r[i] += o[i];
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
    check_same_size(o);
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) r[i] -= o[i];
    return r;
}

MultiIndex MultiIndex::meet(const MultiIndex& o) const {
    check_same_size(o);
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) r[i] = std::min(r[i], o[i]);
    return r;
}

MultiIndex MultiIndex::join(const MultiIndex& o) const {
    check_same_size(o);
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) r[i] = std::max(r[i], o[i]);
    return r;
}

MultiIndex MultiIndex::pos() const {
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) r[i] = std::max(r[i], 0);
    return r;
}

MultiIndex MultiIndex::neg() const {
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) r[i] = std::max(-r[i], 0);
    return r;
}

bool MultiIndex::nonnegative() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int x) { return x >= 0; });
}

bool MultiIndex::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int x) { return x == 0; });
}

bool MultiIndex::leq(const MultiIndex& o) const {
    check_same_size(o);
    for (int i = 0; i < size(); ++i)
        if ((*this)[i] > o[i]) return false;
    return true;
}

long MultiIndex::total() const {
    long s = 0;
    for (int x : entries_) s += x;
    return s;
}

std::vector<int> MultiIndex::support() const {
    std::vector<int> s;
    for (int i = 0; i < size(); ++i)
        if (entries_[static_cast<size_t>(i)] != 0) s.push_back(i + 1);
    return s;
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < size(); ++i) os << (i ? "," : "") << (*this)[i];
    os << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& n) { return os << n.to_string(); }

int signed_subset_sum(const std::vector<int>& v, const MultiIndex& n) {
    if (!n.nonnegative()) throw DomainError("signed_subset_sum requires n >= 0");
    // Only i in v with n_i >= 1 admit a choice; the alternating sum over a
    // nonempty choice set telescopes to zero.
    for (int i : v) {
        if (i < 1 || i > n.size()) throw DomainError("subset index out of range");
        if (n[i - 1] >= 1) return 0;
    }
    return 1;
}

std::vector<std::vector<int>> all_subsets(const std::vector<int>& v) {
    const size_t m = v.size();
    std::vector<std::vector<int>> out;
    out.reserve(size_t{1} << m);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<int> u;
        for (size_t b = 0; b < m; ++b)
            if (mask & (std::uint64_t{1} << b)) u.push_back(v[b]);
        out.push_back(std::move(u));
    }
    return out;
}

std::vector<std::vector<int>> all_subsets(int k) {
    std::vector<int> v(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) v[static_cast<size_t>(i)] = i + 1;
    return all_subsets(v);
}

std::vector<MultiIndex> box_grades(const MultiIndex& box) {
    if (!box.nonnegative()) throw DomainError("box must be nonnegative");
    const int k = box.size();
    std::vector<MultiIndex> grades;
    MultiIndex n = MultiIndex::zero(k);
    while (true) {
        grades.push_back(n);
        int i = k - 1;
        while (i >= 0 && n[i] == box[i]) {
            n[i] = 0;
            --i;
        }
        if (i < 0) break;
        n[i] += 1;
    }
    return grades;
}

std::size_t box_grade_index(const MultiIndex& box, const MultiIndex& n) {
    if (n.size() != box.size()) throw DimensionError("grade/box length mismatch");
    if (!n.nonnegative() || !n.leq(box)) throw DomainError("grade outside box");
    std::size_t idx = 0;
    for (int i = 0; i < box.size(); ++i) idx = idx * static_cast<std::size_t>(box[i] + 1) + static_cast<std::size_t>(n[i]);
    return idx;
}

}  // namespace rdil
