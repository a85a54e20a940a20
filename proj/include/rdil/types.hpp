#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rdil {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index   = Eigen::Index;

// Thrown when shapes of operands disagree (vector lengths, block sizes).
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a value is outside the mathematical domain of an operation
// (negative grade, word mismatch, non-unimodular twist phase, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a flattened tensor dimension exceeds the configured cap.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed input files.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Default numerical tolerances. Inputs are exact-precision data, so these
// only have to absorb rounding accumulated over short contraction products.
struct Tolerances {
    double unitarity   = 1e-12;  // twist unitarity / braiding coherence
    double residual    = 1e-10;  // commutation and identity residuals
    double psd         = 1e-10;  // relative PSD cutoff for defect spectra
    double null_cut    = 1e-10;  // relative rank cut for the Gram quotient
    double dilation    = 1e-8;   // dilation verification residuals
    double oracle      = 1e-12;  // closed-form vs braided construction
};

inline constexpr Index kDefaultDimensionCap = 20000;

// Largest singular value; 0x0 matrices have norm 0.
double spectral_norm(const Matrix& a);

// Smallest eigenvalue of a Hermitian matrix (input is Hermitized first).
double min_eigenvalue(const Matrix& a);

// (a + a*)/2
Matrix hermitize(const Matrix& a);

// Kronecker product, row-major convention: the left factor is the slow index.
Matrix kron(const Matrix& a, const Matrix& b);

// kron(I_d, m) without forming the identity.
Matrix kron_id_left(Index d, const Matrix& m);

// kron(m, I_d)
Matrix kron_id_right(const Matrix& m, Index d);

// Orthonormal basis of the column space of a, rank-cut at `tol` relative
// to the largest singular value. Returns an isometry (cols = rank).
Matrix column_space_basis(const Matrix& a, double tol = 1e-12);

// (t (x) I_r) * x without forming the Kronecker factor; t is p x p and x has
// p*r rows.
Matrix apply_left_kron_id(const Matrix& t, const Matrix& x, Index r);

// (I_d (x) m) * x without forming the block diagonal; x has d*m.cols() rows.
Matrix apply_id_kron_left(Index d, const Matrix& m, const Matrix& x);

}  // namespace rdil
