#include "rdil/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace rdil {

double spectral_norm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    if (a.rows() <= 128 && a.cols() <= 128) {
        Eigen::JacobiSVD<Matrix> svd(a);
        return svd.singularValues()(0);
    }
    // Largest eigenvalue of a*a for bigger operands; Jacobi SVD gets slow.
    const Matrix g = (a.cols() <= a.rows()) ? Matrix(a.adjoint() * a) : Matrix(a * a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

double min_eigenvalue(const Matrix& a) {
    if (a.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Matrix kron_id_left(Index d, const Matrix& m) {
    Matrix out = Matrix::Zero(d * m.rows(), d * m.cols());
    for (Index i = 0; i < d; ++i) out.block(i * m.rows(), i * m.cols(), m.rows(), m.cols()) = m;
    return out;
}

Matrix kron_id_right(const Matrix& m, Index d) {
    return kron(m, Matrix::Identity(d, d));
}

Matrix apply_left_kron_id(const Matrix& t, const Matrix& x, Index r) {
    const Index p = t.cols();
    if (x.rows() != p * r) throw DimensionError("apply_left_kron_id: shape mismatch");
    Matrix out(t.rows() * r, x.cols());
    for (Index c = 0; c < x.cols(); ++c) {
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
            w(x.col(c).data(), p, r);
        Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> u(
            out.col(c).data(), t.rows(), r);
        u = t * w;
    }
    return out;
}

Matrix apply_id_kron_left(Index d, const Matrix& m, const Matrix& x) {
    if (x.rows() != d * m.cols()) throw DimensionError("apply_id_kron_left: shape mismatch");
    Matrix out(d * m.rows(), x.cols());
    for (Index b = 0; b < d; ++b)
        out.middleRows(b * m.rows(), m.rows()) = m * x.middleRows(b * m.cols(), m.cols());
    return out;
}

Matrix column_space_basis(const Matrix& a, double tol) {
    if (a.cols() == 0 || a.rows() == 0) return Matrix::Zero(a.rows(), 0);
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    qr.setThreshold(tol);
    const Index rank = qr.rank();
    Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), rank);
    return q;
}

}  // namespace rdil
