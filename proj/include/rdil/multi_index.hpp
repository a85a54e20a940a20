#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "rdil/types.hpp"

namespace rdil {

// Signed integer grading vector in Z^k with the componentwise lattice order.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {}
    MultiIndex(std::initializer_list<int> entries) : entries_(entries) {}

    static MultiIndex zero(int k) { return MultiIndex(std::vector<int>(static_cast<size_t>(k), 0)); }
    static MultiIndex ones(int k, int value = 1) { return MultiIndex(std::vector<int>(static_cast<size_t>(k), value)); }
    // e_i, 1-based generator index.
    static MultiIndex unit(int k, int i);
    // e(u) = sum of e_i over i in u (1-based indices).
    static MultiIndex unit_set(int k, const std::vector<int>& u);

    int size() const { return static_cast<int>(entries_.size()); }
    int operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    int& operator[](int i) { return entries_[static_cast<size_t>(i)]; }
    const std::vector<int>& entries() const { return entries_; }

    bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
    bool operator!=(const MultiIndex& o) const { return entries_ != o.entries_; }

    MultiIndex operator+(const MultiIndex& o) const;
    MultiIndex operator-(const MultiIndex& o) const;

    // Componentwise lattice operations.
    MultiIndex meet(const MultiIndex& o) const;  // n ∧ m
    MultiIndex join(const MultiIndex& o) const;  // n ∨ m

    // n = pos() - neg(), pos() ∧ neg() = 0.
    MultiIndex pos() const;
    MultiIndex neg() const;

    bool nonnegative() const;
    bool is_zero() const;
    // Componentwise n <= o.
    bool leq(const MultiIndex& o) const;
    // Sum of entries.
    long total() const;
    // Support {i : n_i != 0}, 1-based.
    std::vector<int> support() const;

    std::string to_string() const;

private:
    void check_same_size(const MultiIndex& o) const;
    std::vector<int> entries_;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& n);

// Sum over subsets u of v with e(u) <= n of (-1)^|u|, for n >= 0.
// Equals 1 when n_i = 0 for every i in v, and 0 otherwise.
int signed_subset_sum(const std::vector<int>& v, const MultiIndex& n);

// All subsets of {1,..,k}, or of a given index set v (each sorted ascending).
std::vector<std::vector<int>> all_subsets(int k);
std::vector<std::vector<int>> all_subsets(const std::vector<int>& v);

// Grades 0 <= n <= box in lexicographic order (first entry slowest).
std::vector<MultiIndex> box_grades(const MultiIndex& box);

// Position of n in the lexicographic enumeration of box_grades(box).
std::size_t box_grade_index(const MultiIndex& box, const MultiIndex& n);

}  // namespace rdil
