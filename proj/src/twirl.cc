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

#include "locc/twirl.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "locc/errors.h"
#include "locc/rng.h"

namespace locc {

namespace {

bool kept(size_t i, size_t j, size_t k, size_t l) {
    return (i == j && k == l) || (i == k && j == l);
}

bool is_prime(uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (uint64_t f = 2; f * f <= n; f++) {
        if (n % f == 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

BipartiteOperator twirl_entrywise(const BipartiteOperator &t) {
    size_t d = t.local_dim();
    ComplexMatrix out = ComplexMatrix::Zero(t.dim(), t.dim());
    const ComplexMatrix &m = t.matrix();
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            for (size_t k = 0; k < d; k++) {
                for (size_t l = 0; l < d; l++) {
                    if (kept(i, j, k, l)) {
                        out(i * d + j, k * d + l) = m(i * d + j, k * d + l);
                    }
                }
            }
        }
    }
    return BipartiteOperator(d, std::move(out));
}

uint64_t twirl_prime(size_t d) {
    uint64_t p = std::max<uint64_t>(3, d);
    while (!is_prime(p)) {
        p++;
    }
    return p;
}

ComplexVector twirl_unitary_diagonal(size_t d, uint64_t p, uint64_t k, uint64_t l) {
    // Exponents are reduced mod p before forming the phase so the root of
    // unity is evaluated at exactly the p points of the cyclic group.
    auto phase = [p](int64_t e) {
        int64_t r = ((e % static_cast<int64_t>(p)) + static_cast<int64_t>(p)) % static_cast<int64_t>(p);
        double ang = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
        return Complex(std::cos(ang), std::sin(ang));
    };
    ComplexVector u(d * d);
    auto ki = static_cast<int64_t>(k);
    auto li = static_cast<int64_t>(l);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            auto a = static_cast<int64_t>(i);
            auto b = static_cast<int64_t>(j);
            // (U^k Z^l)_a * conj((U^k Z^l)_b)
            u(i * d + j) = phase(ki * (a * a - b * b) + li * (a - b));
        }
    }
    return u;
}

BipartiteOperator twirl_discrete(const BipartiteOperator &t) {
    size_t d = t.local_dim();
    uint64_t p = twirl_prime(d);
    const ComplexMatrix &m = t.matrix();
    ComplexMatrix acc = ComplexMatrix::Zero(t.dim(), t.dim());
    for (uint64_t k = 0; k < p; k++) {
        for (uint64_t l = 0; l < p; l++) {
            ComplexVector u = twirl_unitary_diagonal(d, p, k, l);
            // W m W^dagger for diagonal W.
            acc += u.asDiagonal() * m * u.conjugate().asDiagonal();
        }
    }
    acc /= static_cast<double>(p * p);
    return BipartiteOperator(d, std::move(acc));
}

bool ABDecomposition::ppt_form() const {
    size_t d = local_dim();
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            if (i != j && std::norm(a(i, j)) > b(i, j) * b(j, i) + 1e-12) {
                return false;
            }
        }
    }
    return true;
}

BipartiteOperator ABDecomposition::reassemble() const {
    size_t d = local_dim();
    ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            m(i * d + i, j * d + j) = a(i, j);
            if (i != j) {
                m(i * d + j, i * d + j) = b(i, j);
            }
        }
    }
    return BipartiteOperator(d, std::move(m));
}

ABDecomposition ab_decompose(const BipartiteOperator &t) {
    size_t d = t.local_dim();
    const ComplexMatrix &m = t.matrix();
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            for (size_t k = 0; k < d; k++) {
                for (size_t l = 0; l < d; l++) {
                    Complex v = m(i * d + j, k * d + l);
                    if (!kept(i, j, k, l) && std::abs(v) > 1e-10) {
                        std::ostringstream ss;
                        ss << "ab_decompose: operator is not Phi-invariant; entry (" << i << j << ", " << k << l
                           << ") = " << v;
                        throw ContractError(ss.str());
                    }
                }
            }
        }
    }
    ABDecomposition out{ComplexMatrix(d, d), Eigen::MatrixXd::Zero(d, d)};
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            out.a(i, j) = m(i * d + i, j * d + j);
            if (i != j) {
                out.b(i, j) = m(i * d + j, i * d + j).real();
            }
        }
    }
    return out;
}

BipartiteOperator random_phi_symmetric_ppt(size_t d, uint64_t seed) {
    if (d < 2) {
        throw ValidationError("random_phi_symmetric_ppt needs d >= 2");
    }
    SplitMix64 rng = SplitMix64::stream(seed, d);
    ComplexMatrix g(d, d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix gg = g.adjoint() * g;
    gg = 0.5 * (gg + gg.adjoint());
    double scale = rng.uniform_open_closed() / eig_hermitian(gg).max();
    ABDecomposition ab{gg * scale, Eigen::MatrixXd::Zero(d, d)};
    for (size_t i = 0; i < d; i++) {
        for (size_t j = i + 1; j < d; j++) {
            double mag = std::min(1.0, std::abs(ab.a(i, j)));
            double bij = mag + rng.uniform() * (1.0 - mag);
            ab.b(i, j) = bij;
            ab.b(j, i) = bij;
        }
    }
    return ab.reassemble();
}

BipartiteOperator random_hermitian(size_t d, uint64_t seed) {
    SplitMix64 rng = SplitMix64::stream(seed, 0x4e524d4cULL + d);
    size_t D = d * d;
    check_size(D, "random_hermitian");
    ComplexMatrix m(D, D);
    for (size_t r = 0; r < D; r++) {
        for (size_t c = 0; c < D; c++) {
            double re = rng.normal();
            double im = rng.normal();
            m(r, c) = Complex(re, im);
        }
    }
    return BipartiteOperator(d, 0.5 * (m + m.adjoint()));
}

}  // namespace locc
