#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "casq/errors.hpp"

namespace casq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Composite space of two two-level atoms and one truncated field mode.
/// The tensor-factor order is fixed project-wide: atom 1 ⊗ atom 2 ⊗ field.
/// Basis index of |a1 a2, n⟩ (a_j ∈ {0=g, 1=e}) is (2*a1 + a2)*(n_max+1) + n.
struct HilbertSpace {
    static constexpr int atom_count = 2;

    explicit HilbertSpace(int n_max);

    int n_max() const { return n_max_; }
    int field_dim() const { return n_max_ + 1; }
    int dim() const { return 4 * (n_max_ + 1); }
    int index(int a1, int a2, int n) const;

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

  private:
    int n_max_;
};

/// Dense operator tagged with its space. Immutable by convention: all
/// operations below return new values.
struct Operator {
    Operator(HilbertSpace s, Matrix m);

    const HilbertSpace& space() const { return space_; }
    const Matrix& mat() const { return mat_; }

    Operator dag() const;
    bool is_hermitian(double tol = 1e-12) const;

  private:
    HilbertSpace space_;
    Matrix mat_;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex c, const Operator& a);

/// Trace-one, Hermitian, positive (up to numerical noise) state.
struct DensityMatrix {
    // Validates trace (1e-10), Hermiticity (1e-10) and positivity (min
    // eigenvalue >= -1e-8); throws Unstable otherwise.
    static DensityMatrix checked(Operator o);

    const Operator& op() const { return op_; }
    const Matrix& mat() const { return op_.mat(); }
    const HilbertSpace& space() const { return op_.space(); }
    double min_eigenvalue() const { return min_eig_; }

  private:
    explicit DensityMatrix(Operator o, double min_eig) : op_(std::move(o)), min_eig_(min_eig) {}
    Operator op_;
    double min_eig_;
};

/// The standard operator family on a HilbertSpace. sigma(j) takes j in {1, 2}.
struct OperatorSet {
    explicit OperatorSet(HilbertSpace space);

    const HilbertSpace& space() const { return space_; }
    const Operator& a() const { return a_; }
    const Operator& a_dag() const { return a_dag_; }
    const Operator& sigma(int j) const;
    const Operator& sigma_dag(int j) const;
    const Operator& s_plus() const { return s_plus_; }
    const Operator& s_minus() const { return s_minus_; }
    const Operator& identity() const { return identity_; }
    const Operator& number() const { return number_; }

  private:
    HilbertSpace space_;
    Operator a_, a_dag_;
    std::array<Operator, 2> sigma_, sigma_dag_;
    Operator s_plus_, s_minus_, identity_, number_;
};

/// Rejects n_max < 1.
OperatorSet build_operator_set(HilbertSpace space);

/// X_phi = a e^{-i phi} + a† e^{i phi}; Hermitian.
Operator quadrature(double phase, const OperatorSet& ops);

// Column-stacking vectorization. vec(A rho B) = (B^T ⊗ A) vec(rho) is the
// single source of truth for every superoperator below.
Vector vectorize(const Matrix& m);
Matrix devectorize(const Vector& v, int dim);
Vector vectorize(const DensityMatrix& rho);

Matrix kron(const Matrix& a, const Matrix& b);

/// Partial trace over both atomic factors; returns a field_dim x field_dim matrix.
Matrix partial_trace_atoms(const Matrix& m, const HilbertSpace& space);

/// d²×d² matrix acting on vectorized density matrices.
struct SuperOperator {
    SuperOperator(HilbertSpace s, Matrix m);

    const HilbertSpace& space() const { return space_; }
    const Matrix& mat() const { return mat_; }
    Matrix& mat() { return mat_; }
    int hilbert_dim() const { return space_.dim(); }

  private:
    HilbertSpace space_;
    Matrix mat_;
};

// Superoperator building blocks (matrix level, usable on any square matrix).
Matrix left_mult_superop(const Matrix& a);
Matrix right_mult_superop(const Matrix& b);
Matrix sandwich_superop(const Matrix& a, const Matrix& b);  // rho -> A rho B
// -i [H, .]
Matrix hamiltonian_superop(const Matrix& h);
// rate * (2 C rho C† - C†C rho - rho C†C)
Matrix lindblad_superop(double rate, const Matrix& c);

}  // namespace casq
