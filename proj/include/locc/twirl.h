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

#ifndef LOCC_TWIRL_H
#define LOCC_TWIRL_H

#include <cstdint>

#include "locc/operators.h"

namespace locc {

// The symmetrizing map Phi averages over conjugation by U_x (x) U_{-x}, U_x
// diagonal phases. It keeps entry (ij, kl) iff (i == j and k == l) or
// (i == k and j == l), and zeroes everything else.

BipartiteOperator twirl_entrywise(const BipartiteOperator &t);

/// Smallest odd prime >= d.
uint64_t twirl_prime(size_t d);

/// Diagonal of (U (x) conj U)^k (Z (x) conj Z)^l, with Z = sum_j w^j |j><j|,
/// U = sum_j w^{j^2} |j><j| and w = exp(2 pi i / p).
ComplexVector twirl_unitary_diagonal(size_t d, uint64_t p, uint64_t k, uint64_t l);

/// Phi as the finite average over (k, l) in Z_p^2 of conjugations by the
/// unitaries above, p = twirl_prime(d). Independent of the entrywise rule.
BipartiteOperator twirl_discrete(const BipartiteOperator &t);

/// T = A + B for a Phi-invariant T.
struct ABDecomposition {
    /// a(i, j) = T(ii, jj): the block on span{|i (x) i>}.
    ComplexMatrix a;
    /// b(i, j) = T(ij, ij) for i != j; zero diagonal.
    Eigen::MatrixXd b;

    size_t local_dim() const {
        return static_cast<size_t>(a.rows());
    }
    /// |a_ij|^2 <= b_ij b_ji + 1e-12 for all i != j.
    bool ppt_form() const;
    BipartiteOperator reassemble() const;
};

/// Throws ContractError (naming the offending entry) if t is not Phi-invariant to 1e-10.
ABDecomposition ab_decompose(const BipartiteOperator &t);

/// Random Phi-symmetric PPT measurement operator: A = c G^dagger G / ||G^dagger G||
/// with c uniform in (0, 1], b_ij = b_ji = |a_ij| + u_ij (1 - |a_ij|).
/// Deterministic in (d, seed).
BipartiteOperator random_phi_symmetric_ppt(size_t d, uint64_t seed);

/// Random hermitian operator with standard-normal real and imaginary parts.
BipartiteOperator random_hermitian(size_t d, uint64_t seed);

}  // namespace locc

#endif
