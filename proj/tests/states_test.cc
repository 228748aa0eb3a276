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

#include "locc/states.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "locc/errors.h"
#include "test_support.h"

using namespace locc;

TEST(make_spectrum, sorts_and_derives) {
    SchmidtSpectrum s = make_spectrum({0.4, 0.6});
    EXPECT_EQ(s.coeffs(), (std::vector<double>{0.6, 0.4}));
    EXPECT_DOUBLE_EQ(s.lambda(), 0.6);
    EXPECT_NEAR(s.alpha(), 0.816496580927726, 1e-14);
    EXPECT_NEAR(s.beta(), 5.0 / 6.0, 1e-14);
}

TEST(make_spectrum, product_state) {
    SchmidtSpectrum s = make_spectrum({1.0, 0.0});
    EXPECT_EQ(s.lambda(), 1.0);
    EXPECT_EQ(s.alpha(), 0.0);
    EXPECT_EQ(s.beta(), 0.5);
    EXPECT_EQ(s.dim(), 2u);
}

TEST(make_spectrum, maximally_entangled) {
    SchmidtSpectrum s = make_spectrum({0.5, 0.5});
    EXPECT_EQ(s.lambda(), 0.5);
    EXPECT_EQ(s.alpha(), 1.0);
    EXPECT_EQ(s.beta(), 1.0);
    EXPECT_EQ(s.lambda_beta(), 0.5);
    EXPECT_TRUE(s.is_uniform());
}

TEST(make_spectrum, rejects_bad_input) {
    std::vector<double> three{0.5, 0.3, 0.2};
    EXPECT_THROW(make_spectrum(three, 2), ValidationError);
    EXPECT_THROW(make_spectrum({1.0}), ValidationError);
    EXPECT_THROW(make_spectrum({1.1, -0.1}), ValidationError);
    EXPECT_THROW(make_spectrum({0.6, 0.5}), ValidationError);
    EXPECT_THROW(make_spectrum({0.6, 0.4 - 2e-9}), ValidationError);
    EXPECT_THROW(parse_spectrum("0.6;0.4"), ValidationError);
    EXPECT_THROW(parse_spectrum("0.6,"), ValidationError);
    EXPECT_THROW(parse_spectrum(""), ValidationError);
}

TEST(make_spectrum, clamps_roundoff) {
    SchmidtSpectrum s = make_spectrum({1.0 + 5e-13, -5e-13});
    EXPECT_EQ(s.coeffs()[1], 0.0);
    EXPECT_EQ(s.coeffs()[0], 1.0);
}

TEST(make_spectrum, parses_cli_syntax) {
    SchmidtSpectrum s = parse_spectrum("0.2,0.5,0.3");
    EXPECT_EQ(s.coeffs(), (std::vector<double>{0.5, 0.3, 0.2}));
}

TEST(make_spectrum, invariants_on_random_spectra) {
    SplitMix64 rng(1);
    for (size_t d = 2; d <= 6; d++) {
        for (int trial = 0; trial < 20; trial++) {
            SchmidtSpectrum s = locc::testing::random_spectrum(d, rng);
            EXPECT_TRUE(std::is_sorted(s.coeffs().rbegin(), s.coeffs().rend()));
            EXPECT_LE(s.lambda(), 1.0 / (1.0 + s.alpha() * s.alpha()) + 1e-12);
            EXPECT_GE(s.lambda(), 1.0 / static_cast<double>(d) - 1e-12);
            EXPECT_GE(s.beta(), 0.5);
            EXPECT_LE(s.beta(), 1.0);
            double l1 = s.coeffs()[1];
            EXPECT_NEAR(l1, s.lambda() * s.alpha() * s.alpha(), 1e-12);
            EXPECT_NEAR(l1, s.lambda() * (2.0 * s.beta() - 1.0), 1e-12);
        }
    }
}

TEST(schmidt_state, product) {
    PureState p = schmidt_state(make_spectrum({1.0, 0.0}));
    ComplexVector want = ComplexVector::Zero(4);
    want(0) = 1.0;
    EXPECT_EQ(p.ket, want);
}

TEST(schmidt_state, bell) {
    PureState p = schmidt_state(make_spectrum({0.5, 0.5}));
    EXPECT_NEAR(p.ket(0).real(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(p.ket(3).real(), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(p.ket(1), Complex(0.0));
    EXPECT_EQ(p.ket(2), Complex(0.0));
}

TEST(schmidt_state, pure_and_normalized) {
    PureState p = schmidt_state(make_spectrum({0.6, 0.4}));
    EXPECT_NEAR(p.ket.squaredNorm(), 1.0, 1e-12);
    EXPECT_NEAR((p.density * p.density).trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(p.density.trace().real(), 1.0, 1e-12);

    SplitMix64 rng(2);
    for (size_t d : {2, 3, 4}) {
        PureState r = schmidt_state(locc::testing::random_spectrum(d, rng));
        EigenSystem es = eig_hermitian(r.density.matrix());
        EXPECT_NEAR(es.max(), 1.0, 1e-12);
        for (Eigen::Index i = 0; i + 1 < es.values.size(); i++) {
            EXPECT_NEAR(es.values(i), 0.0, 1e-12);
        }
    }
}

TEST(tensor_power_spectrum, two_copies) {
    SchmidtSpectrum s = tensor_power_spectrum(make_spectrum({0.6, 0.4}), 2);
    std::vector<double> want{0.36, 0.24, 0.24, 0.16};
    ASSERT_EQ(s.dim(), 4u);
    for (size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(s.coeffs()[i], want[i], 1e-15);
    }
    EXPECT_NEAR(s.coeffs()[1], 0.36 * (0.4 / 0.6), 1e-15);
}

TEST(tensor_power_spectrum, identity_and_product) {
    SchmidtSpectrum s = make_spectrum({0.5, 0.3, 0.2});
    EXPECT_EQ(tensor_power_spectrum(s, 1).coeffs(), s.coeffs());
    SchmidtSpectrum p = tensor_power_spectrum(make_spectrum({1.0, 0.0}), 3);
    ASSERT_EQ(p.dim(), 8u);
    EXPECT_EQ(p.coeffs()[0], 1.0);
    for (size_t i = 1; i < 8; i++) {
        EXPECT_EQ(p.coeffs()[i], 0.0);
    }
    EXPECT_THROW(tensor_power_spectrum(s, 0), ValidationError);
}

TEST(tensor_power_spectrum, composes) {
    SplitMix64 rng(8);
    for (size_t d : {2, 3}) {
        for (int m = 1; m <= 3; m++) {
            for (int n = 1; n <= 3; n++) {
                SchmidtSpectrum s = locc::testing::random_spectrum(d, rng);
                SchmidtSpectrum whole = tensor_power_spectrum(s, m + n);
                SchmidtSpectrum a = tensor_power_spectrum(s, m);
                SchmidtSpectrum b = tensor_power_spectrum(s, n);
                std::vector<double> prod;
                for (double x : a.coeffs()) {
                    for (double y : b.coeffs()) {
                        prod.push_back(x * y);
                    }
                }
                std::sort(prod.begin(), prod.end(), std::greater<>());
                ASSERT_EQ(prod.size(), whole.dim());
                for (size_t i = 0; i < prod.size(); i++) {
                    EXPECT_NEAR(prod[i], whole.coeffs()[i], 1e-14);
                }
                EXPECT_NEAR(whole.lambda(), std::pow(s.lambda(), m + n), 1e-14);
            }
        }
    }
}

TEST(tensor_power_spectrum, size_cap) {
    EXPECT_THROW(tensor_power_spectrum(make_spectrum({0.6, 0.4}), 40), SizeError);
}

TEST(decompose_pure, recovers_schmidt_coefficients_under_local_unitaries) {
    SplitMix64 rng(4);
    for (size_t d : {2, 3, 4}) {
        SchmidtSpectrum s = locc::testing::random_spectrum(d, rng);
        ComplexMatrix u = kron(locc::testing::random_unitary(d, rng), locc::testing::random_unitary(d, rng));
        ComplexVector ket = u * schmidt_state(s).ket;
        PureDecomposition pd = decompose_pure(BipartiteOperator::projector(d, ket));
        for (size_t i = 0; i < d; i++) {
            EXPECT_NEAR(pd.coeffs[i], s.coeffs()[i], 1e-10);
        }
        EXPECT_NEAR(std::norm(pd.ket.dot(ket)), 1.0, 1e-10);
    }
    EXPECT_THROW(decompose_pure(BipartiteOperator::identity(2).scaled(0.25)), ContractError);
}
