#pragma once

#include <utility>
#include <vector>

#include "rdil/types.hpp"

namespace rdil {

// Noncommutative polynomial in the letters (i, l), i a generator index and
// l a letter inside that generator's fiber (both 1-based).  The empty word
// is the unit.
struct NcPolynomial {
    struct Term {
        Complex coef;
        std::vector<std::pair<int, int>> word;
    };
    std::vector<Term> terms;

    static NcPolynomial unit(Complex c = Complex(1.0, 0.0)) {
        return NcPolynomial{{Term{c, {}}}};
    }
    static NcPolynomial letter(int i, int l, Complex c = Complex(1.0, 0.0)) {
        return NcPolynomial{{Term{c, {{i, l}}}}};
    }

    int degree() const {
        int d = 0;
        for (const auto& t : terms) d = std::max<int>(d, static_cast<int>(t.word.size()));
        return d;
    }
};

// Evaluate with an arbitrary assignment of matrices to letters.  `image`
// maps (i, l) to a square matrix on a common space of dimension `dim`.
template <typename LetterImage>
Matrix eval_polynomial(const NcPolynomial& p, Index dim, LetterImage&& image) {
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& term : p.terms) {
        Matrix w = Matrix::Identity(dim, dim);
        for (const auto& [i, l] : term.word) w = w * image(i, l);
        out += term.coef * w;
    }
    return out;
}

}  // namespace rdil
