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

#include "locc/measurements.h"

#include <algorithm>

#include "gtest/gtest.h"
#include "locc/errors.h"
#include "locc/twirl.h"
#include "test_support.h"

using namespace locc;

namespace {

std::vector<SchmidtSpectrum> spectra() {
    std::vector<SchmidtSpectrum> out{
        make_spectrum({0.5, 0.5}),
        make_spectrum({0.6, 0.4}),
        make_spectrum({0.9, 0.1}),
        make_spectrum({1.0, 0.0}),
        make_spectrum({0.5, 0.3, 0.2}),
        make_spectrum({0.4, 0.4, 0.2}),
        make_spectrum({0.25, 0.25, 0.25, 0.25}),
        make_spectrum({0.7, 0.1, 0.1, 0.1}),
    };
    SplitMix64 rng(77);
    for (size_t d : {2, 3, 4}) {
        for (int i = 0; i < 4; i++) {
            out.push_back(locc::testing::random_spectrum(d, rng));
        }
    }
    return out;
}

std::vector<double> sorted_eigenvalues(const BipartiteOperator &t) {
    EigenSystem es = eig_hermitian(t.matrix());
    return {es.values.data(), es.values.data() + es.values.size()};
}

}  // namespace

TEST(build_q0, accepts_rho) {
    for (const auto &s : spectra()) {
        PureState rho = schmidt_state(s);
        EXPECT_NEAR(build_q0(s).op.expectation(rho.density).real(), 1.0, 1e-12);
    }
}

TEST(build_q0, schmidt_span_sigma) {
    SchmidtSpectrum s = make_spectrum({0.6, 0.4});
    ComplexVector e00 = ComplexVector::Zero(4);
    e00(0) = 1.0;
    BipartiteOperator sigma = BipartiteOperator::projector(2, e00);
    EXPECT_NEAR(build_q0(s).op.expectation(sigma).real(), 0.6, 1e-12);

    // Any sigma on span{|ii>} gives Tr Q0 sigma = Tr rho sigma.
    SplitMix64 rng(5);
    for (size_t d : {2, 3, 4}) {
        SchmidtSpectrum r = locc::testing::random_spectrum(d, rng);
        ComplexVector coeffs = locc::testing::random_unit(d, rng);
        ComplexVector ket = ComplexVector::Zero(d * d);
        for (size_t i = 0; i < d; i++) {
            ket(i * d + i) = coeffs(i);
        }
        BipartiteOperator sg = BipartiteOperator::projector(d, ket);
        EXPECT_NEAR(build_q0(r).op.expectation(sg).real(), schmidt_state(r).density.expectation(sg).real(), 1e-12);
    }
}

TEST(build_q0, bob_effects_are_projectors) {
    for (const auto &s : spectra()) {
        for (size_t j = 0; j < s.dim(); j++) {
            EXPECT_NEAR(bob_vector(s, j).norm(), 1.0, 1e-12);
            EXPECT_NEAR(fourier_vector(s.dim(), j).norm(), 1.0, 1e-12);
        }
        EXPECT_LE(eig_hermitian(build_q0(s).op.matrix()).max(), 1.0 + 1e-12);
    }
}

TEST(build_q, eigenvalues) {
    std::vector<double> q64 = sorted_eigenvalues(build_q(make_spectrum({0.6, 0.4})).op);
    std::vector<double> want{0.0, 0.4, 0.6, 1.0};
    for (size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(q64[i], want[i], 1e-12);
    }
    std::vector<double> q55 = sorted_eigenvalues(build_q(make_spectrum({0.5, 0.5})).op);
    want = {0.0, 0.5, 0.5, 1.0};
    for (size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(q55[i], want[i], 1e-12);
    }
}

TEST(build_q, product_spectrum) {
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    want(0, 0) = want(2, 2) = 1.0;
    EXPECT_LE(max_entry_diff(build_q(make_spectrum({1.0, 0.0})).op.matrix(), want), 1e-12);
}

TEST(build_q, multiplicities) {
    SplitMix64 rng(13);
    for (size_t d : {2, 3, 4}) {
        for (int trial = 0; trial < 5; trial++) {
            SchmidtSpectrum s = locc::testing::random_spectrum(d, rng);
            std::vector<double> ev = sorted_eigenvalues(build_q(s).op);
            // Expected multiset: 1, lambda_i x (d - 1), then zeros.
            std::vector<double> want{1.0};
            for (double l : s.coeffs()) {
                for (size_t k = 0; k + 1 < d; k++) {
                    want.push_back(l);
                }
            }
            while (want.size() < d * d) {
                want.push_back(0.0);
            }
            std::sort(want.begin(), want.end());
            for (size_t i = 0; i < ev.size(); i++) {
                EXPECT_NEAR(ev[i], want[i], 1e-9);
            }
            for (double l : s.coeffs()) {
                if (std::abs(l) < 1e-9 || std::abs(l - 1.0) < 1e-9) {
                    continue;
                }
                size_t expected = 0;
                for (double x : s.coeffs()) {
                    expected += std::abs(x - l) < 1e-9 ? d - 1 : 0;
                }
                size_t count = std::count_if(ev.begin(), ev.end(), [&](double x) {
                    return std::abs(x - l) < 1e-9;
                });
                EXPECT_EQ(count, expected);
            }
        }
    }
}

TEST(build_r, qubit) {
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    want(0, 0) = want(3, 3) = 1.0;
    EXPECT_EQ(build_r(2).op.matrix(), want);
    for (size_t d : {2, 3, 5}) {
        BipartiteOperator r = build_r(d).op;
        EXPECT_EQ(r * r, r);
        EXPECT_NEAR(r.trace().real(), static_cast<double>(d), 0.0);
    }
}

TEST(build_r, commutes_with_q_to_rho) {
    for (const auto &s : spectra()) {
        BipartiteOperator q = build_q(s).op;
        BipartiteOperator r = build_r(s.dim()).op;
        BipartiteOperator rho = schmidt_state(s).density;
        EXPECT_LE(max_entry_diff((q * r).matrix(), rho.matrix()), 1e-12);
        EXPECT_LE(max_entry_diff((r * q).matrix(), rho.matrix()), 1e-12);
        EigenSystem es = eig_hermitian((q + r - rho).matrix());
        EXPECT_GE(es.min(), -1e-12);
        EXPECT_LE(es.max(), 1.0 + 1e-12);
    }
}

TEST(build_t_tilde, default_mu) {
    SchmidtSpectrum s = make_spectrum({0.6, 0.4});
    NamedMeasurement t = build_t_tilde(s);
    ASSERT_TRUE(t.mu.has_value());
    EXPECT_NEAR(*t.mu, 0.375, 1e-15);
    std::vector<double> ev = sorted_eigenvalues(t.op);
    std::vector<double> want{0.25, 0.375, 0.375, 1.0};
    for (size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(ev[i], want[i], 1e-12);
    }
    EXPECT_NEAR(off_state_norm(t.op, schmidt_state(s)), 0.375, 1e-12);
}

TEST(build_t_tilde, maximally_entangled) {
    SchmidtSpectrum s = make_spectrum({0.5, 0.5});
    EXPECT_NEAR(off_state_norm(build_t_tilde(s).op, schmidt_state(s)), 1.0 / 3.0, 1e-12);
}

TEST(build_t_tilde, mixture_endpoints_and_range) {
    for (const auto &s : spectra()) {
        EXPECT_LE(max_entry_diff(build_t_tilde(s, 0.0).op.matrix(), build_q(s).op.matrix()), 1e-15);
        EXPECT_LE(max_entry_diff(build_t_tilde(s, 1.0).op.matrix(), build_r(s.dim()).op.matrix()), 1e-15);
        EXPECT_EQ(build_t_tilde(s, 0.3).kind, MeasurementKind::TMu);
    }
    SchmidtSpectrum s = make_spectrum({0.6, 0.4});
    EXPECT_THROW(build_t_tilde(s, -0.1), ValidationError);
    EXPECT_THROW(build_t_tilde(s, 1.5), ValidationError);
}

TEST(build_t_tilde, off_norm_formula) {
    for (const auto &s : spectra()) {
        PureState rho = schmidt_state(s);
        for (double mu : {0.0, 0.1, 0.3, 0.5, 0.9, 1.0}) {
            EXPECT_NEAR(off_state_norm(build_t_tilde(s, mu).op, rho), t_mu_off_norm(s.lambda(), mu), 1e-10);
        }
    }
}

TEST(build_t_tilde, grid_minimum) {
    for (const auto &s : spectra()) {
        PureState rho = schmidt_state(s);
        double best = 1e300;
        double best_mu = -1;
        for (int i = 0; i <= 100; i++) {
            double mu = i / 100.0;
            double v = off_state_norm(build_t_tilde(s, mu).op, rho);
            if (v < best) {
                best = v;
                best_mu = mu;
            }
        }
        double lam = s.lambda();
        EXPECT_LE(std::abs(best_mu - lam / (1 + lam)), 0.01 + 1e-12) << s.to_string();
        EXPECT_GE(best, lam / (1 + lam) - 1e-10);
    }
}

TEST(build_t_tilde2, qubit_closed_form) {
    SplitMix64 rng(19);
    std::vector<SchmidtSpectrum> qubits{make_spectrum({0.5, 0.5}), make_spectrum({0.6, 0.4}),
                                        make_spectrum({0.99, 0.01})};
    for (int i = 0; i < 5; i++) {
        qubits.push_back(locc::testing::random_spectrum(2, rng));
    }
    for (const auto &s : qubits) {
        BipartiteOperator rho = schmidt_state(s).density;
        BipartiteOperator want = rho + (BipartiteOperator::identity(2) - rho).scaled(1.0 / 3.0);
        EXPECT_NEAR(s.lambda_beta(), 0.5, 1e-12);
        EXPECT_LE(max_entry_diff(build_t_tilde2(s).op.matrix(), want.matrix()), 1e-12) << s.to_string();
    }
}

TEST(build_t_tilde2, off_norm) {
    SchmidtSpectrum s = make_spectrum({0.6, 0.4});
    EXPECT_NEAR(off_state_norm(build_t_tilde2(s).op, schmidt_state(s)), 1.0 / 3.0, 1e-12);
    for (const auto &r : spectra()) {
        double lb = r.lambda_beta();
        EXPECT_NEAR(off_state_norm(build_t_tilde2(r).op, schmidt_state(r)), lb / (1 + lb), 1e-10);
    }
}

TEST(build_q2, swap_average) {
    SchmidtSpectrum s = make_spectrum({0.5, 0.5});
    EXPECT_LE(max_entry_diff(build_q2(s).op.matrix(), build_q(s).op.matrix()), 1e-15);
    for (const auto &r : spectra()) {
        size_t d = r.dim();
        BipartiteOperator q2 = build_q2(r).op;
        BipartiteOperator sw = swap_operator(d);
        EXPECT_LE(max_entry_diff((sw * q2 * sw).matrix(), q2.matrix()), 1e-15);
        // Off-rho eigenvalues on the |ij> + |ji> pairs are (lambda_i + lambda_j) / 2.
        for (size_t i = 0; i < d; i++) {
            for (size_t j = i + 1; j < d; j++) {
                double want = 0.5 * (r.coeffs()[i] + r.coeffs()[j]);
                EXPECT_NEAR(q2.matrix()(i * d + j, i * d + j).real(), want, 1e-15);
                EXPECT_NEAR(q2.matrix()(j * d + i, j * d + i).real(), want, 1e-15);
            }
        }
    }
}

TEST(build_reference, product_and_helstrom) {
    SchmidtSpectrum s = make_spectrum({0.6, 0.4});
    PureState rho = schmidt_state(s);
    EXPECT_NEAR(build_reference(s, MeasurementKind::Product).op.expectation(rho.density).real(), 0.6, 1e-12);
    SchmidtSpectrum p = make_spectrum({1.0, 0.0});
    EXPECT_NEAR(build_reference(p, MeasurementKind::Product).op.expectation(schmidt_state(p).density).real(), 1.0, 1e-12);
    for (const auto &r : spectra()) {
        PureState st = schmidt_state(r);
        BipartiteOperator h = build_reference(r, MeasurementKind::Helstrom).op;
        EXPECT_NEAR(h.expectation(st.density).real(), 1.0, 1e-12);
        EXPECT_NEAR(off_state_norm(h, st), 0.0, 1e-12);
    }
    EXPECT_THROW(build_reference(s, MeasurementKind::Q), ContractError);
}

TEST(named_measurements, validity_and_locc_ppt) {
    const MeasurementKind kinds[] = {MeasurementKind::Q0,     MeasurementKind::Q,     MeasurementKind::R,
                                     MeasurementKind::TMu,    MeasurementKind::TTilde, MeasurementKind::Q2,
                                     MeasurementKind::TTilde2, MeasurementKind::Product, MeasurementKind::Helstrom};
    for (const auto &s : spectra()) {
        PureState rho = schmidt_state(s);
        for (MeasurementKind k : kinds) {
            std::optional<double> mu;
            if (k == MeasurementKind::TMu) {
                mu = 0.4;
            }
            NamedMeasurement m = build_measurement(s, k, mu);
            PovmVerdict v = validate_povm_element(m.op);
            EXPECT_TRUE(v.pass) << m.name() << " " << s.to_string();
            if (k != MeasurementKind::Helstrom) {
                EXPECT_TRUE(v.ppt) << m.name() << " " << s.to_string();
            }
            EXPECT_NO_THROW(check_measurement(m, rho)) << m.name();
            if (k != MeasurementKind::Product) {
                ComplexVector image = m.op.matrix() * rho.ket;
                EXPECT_LE((image - rho.ket).cwiseAbs().maxCoeff(), 1e-10) << m.name();
            }
        }
    }
    EXPECT_THROW(build_measurement(make_spectrum({0.6, 0.4}), MeasurementKind::TMu), ValidationError);
}

TEST(named_measurements, cli_spelling) {
    for (std::string_view n : {"q0", "q", "r", "t-mu", "t-tilde", "q2", "t-tilde2", "product", "helstrom"}) {
        EXPECT_EQ(measurement_name(parse_measurement_kind(n)), n);
    }
    EXPECT_THROW(parse_measurement_kind("T-tilde"), ValidationError);
    EXPECT_THROW(parse_measurement_kind(""), ValidationError);
}
