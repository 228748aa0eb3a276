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

#include "locc/operators.h"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "locc/errors.h"

namespace locc {

size_t size_cap() {
    constexpr size_t kDefault = size_t{1} << 20;
    const char *env = std::getenv("LOCC_SIZE_CAP");
    if (env == nullptr || *env == '\0') {
        return kDefault;
    }
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
        throw ValidationError("LOCC_SIZE_CAP must be a positive integer, got '" + std::string(env) + "'");
    }
    return static_cast<size_t>(v);
}

void check_size(size_t dim, const std::string &what) {
    size_t cap = size_cap();
    if (dim != 0 && dim > cap / dim) {
        std::ostringstream ss;
        ss << what << ": a " << dim << "x" << dim << " matrix exceeds the entry cap of " << cap
           << " (raise LOCC_SIZE_CAP to allow it)";
        throw SizeError(ss.str());
    }
}

double max_asymmetry(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw ContractError("matrix is not square");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_entry_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ContractError("max_entry_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

BipartiteOperator::BipartiteOperator(size_t local_dim, ComplexMatrix matrix)
    : local_dim_(local_dim), matrix_(std::move(matrix)) {
    if (local_dim_ < 2) {
        throw ContractError("local dimension must be at least 2");
    }
    size_t D = local_dim_ * local_dim_;
    if (static_cast<size_t>(matrix_.rows()) != D || static_cast<size_t>(matrix_.cols()) != D) {
        std::ostringstream ss;
        ss << "bipartite operator with local_dim " << local_dim_ << " needs a " << D << "x" << D << " matrix, got "
           << matrix_.rows() << "x" << matrix_.cols();
        throw ContractError(ss.str());
    }
    if (!matrix_.allFinite()) {
        throw ContractError("bipartite operator has non-finite entries");
    }
}

BipartiteOperator BipartiteOperator::identity(size_t local_dim) {
    size_t D = local_dim * local_dim;
    check_size(D, "identity");
    return BipartiteOperator(local_dim, ComplexMatrix::Identity(D, D));
}

BipartiteOperator BipartiteOperator::zero(size_t local_dim) {
    size_t D = local_dim * local_dim;
    check_size(D, "zero");
    return BipartiteOperator(local_dim, ComplexMatrix::Zero(D, D));
}

BipartiteOperator BipartiteOperator::projector(size_t local_dim, const ComplexVector &ket) {
    check_size(static_cast<size_t>(ket.size()), "projector");
    return BipartiteOperator(local_dim, ket * ket.adjoint());
}

Complex BipartiteOperator::expectation(const BipartiteOperator &other) const {
    // Tr(AB) = sum_ij A_ij B_ji
    return (matrix_.cwiseProduct(other.matrix_.transpose())).sum();
}

BipartiteOperator BipartiteOperator::operator+(const BipartiteOperator &o) const {
    return BipartiteOperator(local_dim_, matrix_ + o.matrix_);
}
BipartiteOperator BipartiteOperator::operator-(const BipartiteOperator &o) const {
    return BipartiteOperator(local_dim_, matrix_ - o.matrix_);
}
BipartiteOperator BipartiteOperator::operator*(const BipartiteOperator &o) const {
    return BipartiteOperator(local_dim_, matrix_ * o.matrix_);
}
BipartiteOperator BipartiteOperator::scaled(Complex c) const {
    return BipartiteOperator(local_dim_, matrix_ * c);
}
BipartiteOperator BipartiteOperator::adjoint() const {
    return BipartiteOperator(local_dim_, matrix_.adjoint());
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t rows = static_cast<size_t>(a.rows() * b.rows());
    size_t cols = static_cast<size_t>(a.cols() * b.cols());
    check_size(std::max(rows, cols), "kron");
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

BipartiteOperator partial_transpose(const BipartiteOperator &t) {
    size_t d = t.local_dim();
    const ComplexMatrix &m = t.matrix();
    ComplexMatrix out(m.rows(), m.cols());
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            for (size_t k = 0; k < d; k++) {
                for (size_t l = 0; l < d; l++) {
                    out(i * d + j, k * d + l) = m(k * d + j, i * d + l);
                }
            }
        }
    }
    return BipartiteOperator(d, std::move(out));
}

BipartiteOperator swap_operator(size_t local_dim) {
    size_t d = local_dim;
    size_t D = d * d;
    check_size(D, "swap operator");
    ComplexMatrix s = ComplexMatrix::Zero(D, D);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            s(j * d + i, i * d + j) = 1.0;
        }
    }
    return BipartiteOperator(d, std::move(s));
}

EigenSystem eig_hermitian(const ComplexMatrix &m) {
    double asym = max_asymmetry(m);
    if (!(asym <= kHermitianTol)) {
        std::ostringstream ss;
        ss << "eig_hermitian: matrix is not hermitian (max |M - M^dagger| = " << asym << ")";
        throw ContractError(ss.str());
    }
    ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eig_hermitian: eigensolver did not converge");
    }
    return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

double op_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

PovmVerdict validate_povm_element(const BipartiteOperator &t) {
    EigenSystem es = eig_hermitian(t.matrix());
    EigenSystem pt = eig_hermitian(partial_transpose(t).matrix());
    PovmVerdict v{};
    v.min_eigenvalue = es.min();
    v.max_eigenvalue = es.max();
    v.pass = v.min_eigenvalue >= kPsdFloor && v.max_eigenvalue <= 1.0 - kPsdFloor;
    v.pt_min_eigenvalue = pt.min();
    v.ppt = v.pt_min_eigenvalue >= kPsdFloor;
    return v;
}

}  // namespace locc
