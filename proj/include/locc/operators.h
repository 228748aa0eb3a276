// Copyright 2026 The locc-detect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCC_OPERATORS_H
#define LOCC_OPERATORS_H

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

namespace locc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdFloor = -1e-10;

/// Maximum number of matrix entries any operator may hold. Defaults to 2^20;
/// the LOCC_SIZE_CAP environment variable overrides it.
size_t size_cap();

/// Throws SizeError if a dim x dim matrix would exceed size_cap().
void check_size(size_t dim, const std::string &what);

/// max |m - m^dagger| over entries.
double max_asymmetry(const ComplexMatrix &m);

/// Operator on C^d (x) C^d. Basis vector |i (x) j> sits at flat index i*d + j.
class BipartiteOperator {
   public:
    BipartiteOperator(size_t local_dim, ComplexMatrix matrix);

    static BipartiteOperator identity(size_t local_dim);
    static BipartiteOperator zero(size_t local_dim);
    /// |v><v| for a ket of length d^2.
    static BipartiteOperator projector(size_t local_dim, const ComplexVector &ket);

    size_t local_dim() const {
        return local_dim_;
    }
    size_t dim() const {
        return local_dim_ * local_dim_;
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    static size_t flat(size_t i, size_t j, size_t d) {
        return i * d + j;
    }

    Complex trace() const {
        return matrix_.trace();
    }
    bool is_hermitian(double tol = kHermitianTol) const {
        return max_asymmetry(matrix_) <= tol;
    }
    /// Tr(this * other).
    Complex expectation(const BipartiteOperator &other) const;

    BipartiteOperator operator+(const BipartiteOperator &o) const;
    BipartiteOperator operator-(const BipartiteOperator &o) const;
    BipartiteOperator operator*(const BipartiteOperator &o) const;
    BipartiteOperator scaled(Complex c) const;
    BipartiteOperator adjoint() const;

    bool operator==(const BipartiteOperator &o) const {
        return local_dim_ == o.local_dim_ && matrix_ == o.matrix_;
    }

   private:
    size_t local_dim_;
    ComplexMatrix matrix_;
};

/// max |a - b| over entries; dimensions must agree.
double max_entry_diff(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Transpose on the first tensor factor: out(ij, kl) = in(kj, il).
BipartiteOperator partial_transpose(const BipartiteOperator &t);

/// Swap operator S|i (x) j> = |j (x) i>.
BipartiteOperator swap_operator(size_t local_dim);

struct EigenSystem {
    /// Ascending.
    RealVector values;
    /// Orthonormal columns matching `values`.
    ComplexMatrix vectors;

    double min() const {
        return values(0);
    }
    double max() const {
        return values(values.size() - 1);
    }
    double trace_norm() const {
        return values.cwiseAbs().sum();
    }
    double op_norm() const {
        return values.cwiseAbs().maxCoeff();
    }
    /// Eigenvector for the largest eigenvalue. Among (numerically) tied
    /// eigenvalues this is the last column the solver returned.
    ComplexVector top_vector() const {
        return vectors.col(vectors.cols() - 1);
    }
};

/// Hermitian eigendecomposition. Throws ContractError naming the max asymmetry
/// when the input is not hermitian to kHermitianTol. The symmetrized matrix
/// (m + m^dagger)/2 is what actually gets diagonalized, so the output order is
/// the solver's ascending order and reproducible for a given input.
EigenSystem eig_hermitian(const ComplexMatrix &m);

/// Largest singular value.
double op_norm(const ComplexMatrix &m);

struct PovmVerdict {
    bool pass;
    double min_eigenvalue;
    double max_eigenvalue;
    bool ppt;
    double pt_min_eigenvalue;
};

/// Checks 0 <= t <= I (within kPsdFloor) and reports whether t^PT >= 0.
PovmVerdict validate_povm_element(const BipartiteOperator &t);

}  // namespace locc

#endif
