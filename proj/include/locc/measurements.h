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

#ifndef LOCC_MEASUREMENTS_H
#define LOCC_MEASUREMENTS_H

#include <optional>
#include <string>
#include <string_view>

#include "locc/operators.h"
#include "locc/states.h"

namespace locc {

enum class MeasurementKind {
    Q0,
    Q,
    R,
    TMu,
    TTilde,
    Q2,
    TTilde2,
    Product,
    Helstrom,
};

/// CLI spelling: q0, q, r, t-mu, t-tilde, q2, t-tilde2, product, helstrom.
std::string_view measurement_name(MeasurementKind kind);
/// Throws ValidationError for unknown names.
MeasurementKind parse_measurement_kind(std::string_view name);

/// The "accept rho" effect T of a two-outcome measurement {T, I - T}.
struct NamedMeasurement {
    MeasurementKind kind;
    BipartiteOperator op;
    /// Mixing weight on R for the T_mu family.
    std::optional<double> mu;

    std::string_view name() const {
        return measurement_name(kind);
    }
};

/// Alice measures the Fourier basis |phi_j>; on outcome j Bob projects onto
/// |xi_j> = sum_k w^{-jk} sqrt(lambda_k) |k>, w = exp(2 pi i / d).
NamedMeasurement build_q0(const SchmidtSpectrum &s);

/// Alice's Fourier vector |phi_j>.
ComplexVector fourier_vector(size_t d, size_t j);
/// Bob's conditional target |xi_j>.
ComplexVector bob_vector(const SchmidtSpectrum &s, size_t j);

/// Q = Phi(Q0) = rho + sum_{i != j} lambda_j |ij><ij|. The closed form is
/// cross-checked against the twirl of Q0; a mismatch above 1e-10 throws NumericalError.
NamedMeasurement build_q(const SchmidtSpectrum &s);

/// Projector onto span{|k (x) k>}.
NamedMeasurement build_r(size_t d);

/// mu R + (1 - mu) Q. Without mu this is T-tilde with mu = lambda / (1 + lambda);
/// with mu it is the T_mu family member. Throws ValidationError for mu outside [0, 1].
NamedMeasurement build_t_tilde(const SchmidtSpectrum &s, std::optional<double> mu = std::nullopt);

/// (Q + S Q S) / 2 with S the swap.
NamedMeasurement build_q2(const SchmidtSpectrum &s);

/// lambda beta / (1 + lambda beta) R + 1 / (1 + lambda beta) Q2.
NamedMeasurement build_t_tilde2(const SchmidtSpectrum &s);

/// `product`: |0 (x) 0><0 (x) 0|. `helstrom`: rho itself (global, not LOCC).
NamedMeasurement build_reference(const SchmidtSpectrum &s, MeasurementKind kind);

/// Dispatch on kind. `mu` is only read for TMu (and TTilde, where it overrides the default).
NamedMeasurement build_measurement(const SchmidtSpectrum &s, MeasurementKind kind,
                                   std::optional<double> mu = std::nullopt);

/// The off-rho operator norm max(mu, (1 - mu) lambda) of T_mu.
double t_mu_off_norm(double lambda, double mu);

/// ||T (I - rho)||_inf.
double off_state_norm(const BipartiteOperator &t, const PureState &rho);

/// Throws NumericalError unless T is a valid POVM element and (for every kind
/// except `product`) T|rho> = |rho> to 1e-10.
void check_measurement(const NamedMeasurement &m, const PureState &rho);

}  // namespace locc

#endif
