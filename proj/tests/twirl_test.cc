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

#include "gtest/gtest.h"
#include "locc/errors.h"
#include "locc/measurements.h"
#include "test_support.h"

using namespace locc;

namespace {

/// Keep-rule applied by explicit index enumeration.
ComplexMatrix oracle_twirl(const ComplexMatrix &m, size_t d) {
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            for (size_t k = 0; k < d; k++) {
                for (size_t l = 0; l < d; l++) {
                    bool keep = (i == j && k == l) || (i == k && j == l);
                    if (keep) {
                        out(i * d + j, k * d + l) = m(i * d + j, k * d + l);
                    }
                }
            }
        }
    }
    return out;
}

std::vector<BipartiteOperator> corpus(size_t d) {
    std::vector<BipartiteOperator> out;
    for (uint64_t seed = 0; seed < 50; seed++) {
        out.push_back(random_hermitian(d, 1000 + seed));
    }
    return out;
}

}  // namespace

TEST(twirl_entrywise, all_ones) {
    BipartiteOperator ones(2, ComplexMatrix::Ones(4, 4));
    ComplexMatrix t = twirl_entrywise(ones).matrix();
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    want(0, 0) = want(0, 3) = want(3, 0) = want(3, 3) = want(1, 1) = want(2, 2) = 1.0;
    EXPECT_EQ(t, want);
}

TEST(twirl_entrywise, matches_index_oracle) {
    for (size_t d : {2, 3, 4}) {
        for (const auto &t : corpus(d)) {
            EXPECT_EQ(twirl_entrywise(t).matrix(), oracle_twirl(t.matrix(), d));
        }
    }
}

TEST(twirl_entrywise, fixes_rho) {
    SplitMix64 rng(31);
    for (size_t d : {2, 3, 5}) {
        PureState rho = schmidt_state(locc::testing::random_spectrum(d, rng));
        EXPECT_EQ(twirl_entrywise(rho.density), rho.density);
    }
}

TEST(twirl_entrywise, q0_to_q) {
    SchmidtSpectrum s = make_spectrum({0.6, 0.4});
    BipartiteOperator q = twirl_entrywise(build_q0(s).op);
    ComplexMatrix want = schmidt_state(s).density.matrix();
    want(1, 1) += 0.4;
    want(2, 2) += 0.6;
    EXPECT_LE(max_entry_diff(q.matrix(), want), 1e-12);
}

TEST(twirl_entrywise, idempotent_and_trace_preserving) {
    for (size_t d = 2; d <= 5; d++) {
        for (const auto &t : corpus(d)) {
            BipartiteOperator once = twirl_entrywise(t);
            EXPECT_LE(max_entry_diff(twirl_entrywise(once).matrix(), once.matrix()), 1e-12);
            EXPECT_LE(std::abs(once.trace() - t.trace()), 1e-12);
            EXPECT_LE(max_asymmetry(once.matrix()), 1e-12);
        }
    }
}

TEST(twirl_entrywise, preserves_positivity) {
    SplitMix64 rng(41);
    for (size_t d : {2, 3}) {
        for (int trial = 0; trial < 10; trial++) {
            BipartiteOperator e = locc::testing::random_effect(d, rng);
            EigenSystem es = eig_hermitian(twirl_entrywise(e).matrix());
            EXPECT_GE(es.min(), -1e-10);
            EXPECT_LE(es.max(), 1.0 + 1e-10);
        }
    }
}

TEST(twirl_prime, smallest_odd_prime) {
    EXPECT_EQ(twirl_prime(2), 3u);
    EXPECT_EQ(twirl_prime(3), 3u);
    EXPECT_EQ(twirl_prime(4), 5u);
    EXPECT_EQ(twirl_prime(5), 5u);
    EXPECT_EQ(twirl_prime(8), 11u);
    EXPECT_EQ(twirl_prime(14), 17u);
}

TEST(twirl_discrete, identity) {
    for (size_t d : {2, 3, 4}) {
        BipartiteOperator id = BipartiteOperator::identity(d);
        EXPECT_LE(max_entry_diff(twirl_discrete(id).matrix(), id.matrix()), 1e-12);
    }
}

TEST(twirl_discrete, agrees_with_entrywise) {
    for (size_t d = 2; d <= 5; d++) {
        for (const auto &t : corpus(d)) {
            EXPECT_LE(max_entry_diff(twirl_discrete(t).matrix(), twirl_entrywise(t).matrix()), 1e-10)
                << "d=" << d;
        }
    }
}

TEST(twirl_discrete, non_hermitian_input) {
    SplitMix64 rng(12);
    BipartiteOperator t(3, locc::testing::random_matrix(9, rng));
    EXPECT_LE(max_entry_diff(twirl_discrete(t).matrix(), twirl_entrywise(t).matrix()), 1e-10);
}

TEST(twirl_unitary_diagonal, unit_modulus) {
    ComplexVector v = twirl_unitary_diagonal(4, 5, 2, 3);
    ASSERT_EQ(v.size(), 16);
    for (Eigen::Index i = 0; i < v.size(); i++) {
        EXPECT_NEAR(std::abs(v(i)), 1.0, 1e-14);
    }
    // |i i> picks up no phase.
    for (size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(std::abs(v(i * 4 + i) - 1.0), 0.0, 1e-14);
    }
}

TEST(ab_decompose, t_tilde) {
    SchmidtSpectrum s = make_spectrum({0.6, 0.4});
    NamedMeasurement t = build_t_tilde(s);
    ABDecomposition ab = ab_decompose(t.op);
    EXPECT_NEAR(ab.b(0, 1), 0.25, 1e-12);
    EXPECT_NEAR(ab.b(1, 0), 0.375, 1e-12);
    EXPECT_EQ(ab.b(0, 0), 0.0);
    // a = rho block + mu R restricted to the Schmidt span.
    double mu = 0.375;
    ComplexMatrix rho_block(2, 2);
    rho_block << 0.6, std::sqrt(0.24), std::sqrt(0.24), 0.4;
    ComplexMatrix want = (1 - mu) * rho_block + mu * ComplexMatrix::Identity(2, 2);
    EXPECT_LE(max_entry_diff(ab.a, want), 1e-12);
    EXPECT_TRUE(ab.ppt_form());
    EXPECT_LE(max_entry_diff(ab.reassemble().matrix(), t.op.matrix()), 1e-12);
}

TEST(ab_decompose, r) {
    for (size_t d : {2, 3, 4}) {
        ABDecomposition ab = ab_decompose(build_r(d).op);
        EXPECT_EQ(ab.a, ComplexMatrix::Identity(d, d));
        EXPECT_EQ(ab.b, Eigen::MatrixXd::Zero(d, d));
        EXPECT_TRUE(ab.ppt_form());
    }
}

TEST(ab_decompose, maximally_entangled_state) {
    ABDecomposition ab = ab_decompose(schmidt_state(make_spectrum({0.5, 0.5})).density);
    EXPECT_LE(max_entry_diff(ab.a, ComplexMatrix::Constant(2, 2, 0.5)), 1e-15);
    EXPECT_EQ(ab.b, Eigen::MatrixXd::Zero(2, 2));
    EXPECT_FALSE(ab.ppt_form());
}

TEST(ab_decompose, rejects_non_invariant) {
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    m(0, 1) = m(1, 0) = 0.2;
    try {
        ab_decompose(BipartiteOperator(2, m));
        FAIL() << "expected ContractError";
    } catch (const ContractError &e) {
        EXPECT_NE(std::string(e.what()).find("0.2"), std::string::npos) << e.what();
    }
}

TEST(ab_decompose, reassembles_twirl) {
    for (size_t d : {2, 3, 4}) {
        for (const auto &t : corpus(d)) {
            BipartiteOperator phi = twirl_entrywise(t);
            EXPECT_LE(max_entry_diff(ab_decompose(phi).reassemble().matrix(), phi.matrix()), 1e-12);
        }
    }
}

TEST(random_phi_symmetric_ppt, qubit_seed_one) {
    PovmVerdict v = validate_povm_element(random_phi_symmetric_ppt(2, 1));
    EXPECT_TRUE(v.pass);
    EXPECT_TRUE(v.ppt);
}

TEST(random_phi_symmetric_ppt, twirl_fixed_point) {
    BipartiteOperator t = random_phi_symmetric_ppt(4, 7);
    EXPECT_EQ(twirl_entrywise(t), t);
}

TEST(random_phi_symmetric_ppt, deterministic) {
    for (size_t d : {2, 3, 5}) {
        EXPECT_EQ(random_phi_symmetric_ppt(d, 42).matrix(), random_phi_symmetric_ppt(d, 42).matrix());
        EXPECT_NE(random_phi_symmetric_ppt(d, 42).matrix(), random_phi_symmetric_ppt(d, 43).matrix());
    }
}

TEST(random_phi_symmetric_ppt, ppt_characterizations_agree) {
    for (size_t d = 2; d <= 5; d++) {
        for (uint64_t seed = 0; seed < 50; seed++) {
            BipartiteOperator t = random_phi_symmetric_ppt(d, seed);
            PovmVerdict v = validate_povm_element(t);
            ABDecomposition ab = ab_decompose(t);
            EXPECT_TRUE(v.pass);
            EXPECT_GE(v.pt_min_eigenvalue, -1e-10);
            EXPECT_TRUE(v.ppt);
            EXPECT_TRUE(ab.ppt_form());
            EigenSystem a = eig_hermitian(ab.a);
            EXPECT_GE(a.min(), -1e-12);
            EXPECT_LE(a.max(), 1.0 + 1e-12);
            EXPECT_GE(ab.b.minCoeff(), 0.0);
            EXPECT_LE(ab.b.maxCoeff(), 1.0);
        }
    }
}
