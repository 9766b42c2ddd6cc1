#include "casq/core.hpp"

#include <Eigen/Eigenvalues>

namespace casq {

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
    if (n_max < 1) throw ConfigError("HilbertSpace: photon cutoff n_max must be >= 1");
}

int HilbertSpace::index(int a1, int a2, int n) const {
    return (2 * a1 + a2) * field_dim() + n;
}

Operator::Operator(HilbertSpace s, Matrix m) : space_(s), mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() != space_.dim())
        throw DimensionMismatch("Operator: matrix side does not match space dimension");
}

Operator Operator::dag() const { return Operator(space_, mat_.adjoint()); }

bool Operator::is_hermitian(double tol) const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator operator+(const Operator& a, const Operator& b) {
    if (!(a.space() == b.space())) throw DimensionMismatch("operator+: space mismatch");
    return Operator(a.space(), a.mat() + b.mat());
}

Operator operator-(const Operator& a, const Operator& b) {
    if (!(a.space() == b.space())) throw DimensionMismatch("operator-: space mismatch");
    return Operator(a.space(), a.mat() - b.mat());
}

Operator operator*(const Operator& a, const Operator& b) {
    if (!(a.space() == b.space())) throw DimensionMismatch("operator*: space mismatch");
    return Operator(a.space(), a.mat() * b.mat());
}

Operator operator*(Complex c, const Operator& a) { return Operator(a.space(), c * a.mat()); }

DensityMatrix DensityMatrix::checked(Operator o) {
    const Matrix& m = o.mat();
    const double tr_err = std::abs(m.trace() - Complex{1.0, 0.0});
    if (tr_err > 1e-10)
        throw Unstable("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_err), tr_err);
    const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > 1e-10)
        throw Unstable("DensityMatrix: not Hermitian, deviation " + std::to_string(herm_err),
                       herm_err);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-8)
        throw Unstable("DensityMatrix: negative eigenvalue " + std::to_string(min_eig), -min_eig);
    return DensityMatrix(std::move(o), min_eig);
}

namespace {

Matrix single_atom_lowering() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1.0;  // |g><e|
    return s;
}

Matrix field_annihilation(int field_dim) {
    Matrix a = Matrix::Zero(field_dim, field_dim);
    for (int n = 1; n < field_dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

}  // namespace

OperatorSet::OperatorSet(HilbertSpace space)
    : space_(space),
      a_(space, Matrix::Zero(space.dim(), space.dim())),
      a_dag_(space, Matrix::Zero(space.dim(), space.dim())),
      sigma_{Operator(space, Matrix::Zero(space.dim(), space.dim())),
             Operator(space, Matrix::Zero(space.dim(), space.dim()))},
      sigma_dag_{Operator(space, Matrix::Zero(space.dim(), space.dim())),
                 Operator(space, Matrix::Zero(space.dim(), space.dim()))},
      s_plus_(space, Matrix::Zero(space.dim(), space.dim())),
      s_minus_(space, Matrix::Zero(space.dim(), space.dim())),
      identity_(space, Matrix::Identity(space.dim(), space.dim())),
      number_(space, Matrix::Zero(space.dim(), space.dim())) {
    const Matrix sm = single_atom_lowering();
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix af = field_annihilation(space.field_dim());
    const Matrix idf = Matrix::Identity(space.field_dim(), space.field_dim());

    const Matrix a_full = kron(kron(id2, id2), af);
    const Matrix s1 = kron(kron(sm, id2), idf);
    const Matrix s2 = kron(kron(id2, sm), idf);

    a_ = Operator(space, a_full);
    a_dag_ = Operator(space, a_full.adjoint());
    sigma_[0] = Operator(space, s1);
    sigma_[1] = Operator(space, s2);
    sigma_dag_[0] = Operator(space, s1.adjoint());
    sigma_dag_[1] = Operator(space, s2.adjoint());
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    s_plus_ = Operator(space, (s1 + s2) * inv_sqrt2);
    s_minus_ = Operator(space, (s1 - s2) * inv_sqrt2);
    number_ = Operator(space, a_full.adjoint() * a_full);
}

const Operator& OperatorSet::sigma(int j) const {
    if (j < 1 || j > 2) throw DimensionMismatch("OperatorSet::sigma: atom index must be 1 or 2");
    return sigma_[j - 1];
}

const Operator& OperatorSet::sigma_dag(int j) const {
    if (j < 1 || j > 2)
        throw DimensionMismatch("OperatorSet::sigma_dag: atom index must be 1 or 2");
    return sigma_dag_[j - 1];
}

OperatorSet build_operator_set(HilbertSpace space) { return OperatorSet(space); }

Operator quadrature(double phase, const OperatorSet& ops) {
    const Complex e = std::exp(Complex{0.0, -phase});
    return Operator(ops.space(), e * ops.a().mat() + std::conj(e) * ops.a_dag().mat());
}

Vector vectorize(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());  // Eigen is column-major
}

Matrix devectorize(const Vector& v, int dim) {
    if (v.size() != Eigen::Index(dim) * dim)
        throw DimensionMismatch("devectorize: length is not dim^2");
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Vector vectorize(const DensityMatrix& rho) { return vectorize(rho.mat()); }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix partial_trace_atoms(const Matrix& m, const HilbertSpace& space) {
    const int nf = space.field_dim();
    if (m.rows() != space.dim() || m.cols() != space.dim())
        throw DimensionMismatch("partial_trace_atoms: matrix does not match space");
    Matrix out = Matrix::Zero(nf, nf);
    for (int k = 0; k < 4; ++k) out += m.block(k * nf, k * nf, nf, nf);
    return out;
}

SuperOperator::SuperOperator(HilbertSpace s, Matrix m) : space_(s), mat_(std::move(m)) {
    const Eigen::Index d2 = Eigen::Index(s.dim()) * s.dim();
    if (mat_.rows() != d2 || mat_.cols() != d2)
        throw DimensionMismatch("SuperOperator: matrix side is not dim^2");
}

Matrix left_mult_superop(const Matrix& a) {
    return kron(Matrix::Identity(a.rows(), a.rows()), a);
}

Matrix right_mult_superop(const Matrix& b) {
    return kron(b.transpose(), Matrix::Identity(b.rows(), b.rows()));
}

Matrix sandwich_superop(const Matrix& a, const Matrix& b) { return kron(b.transpose(), a); }

Matrix hamiltonian_superop(const Matrix& h) {
    return -kI * (left_mult_superop(h) - right_mult_superop(h));
}

Matrix lindblad_superop(double rate, const Matrix& c) {
    const Matrix cdc = c.adjoint() * c;
    return rate * (2.0 * sandwich_superop(c, c.adjoint()) - left_mult_superop(cdc) -
                   right_mult_superop(cdc));
}

}  // namespace casq
