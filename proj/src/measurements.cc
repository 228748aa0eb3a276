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

#include <cmath>
#include <numbers>
#include <sstream>

#include "locc/errors.h"
#include "locc/twirl.h"

namespace locc {

namespace {

struct NameEntry {
    MeasurementKind kind;
    std::string_view name;
};

constexpr NameEntry kNames[] = {
    {MeasurementKind::Q0, "q0"},
    {MeasurementKind::Q, "q"},
    {MeasurementKind::R, "r"},
    {MeasurementKind::TMu, "t-mu"},
    {MeasurementKind::TTilde, "t-tilde"},
    {MeasurementKind::Q2, "q2"},
    {MeasurementKind::TTilde2, "t-tilde2"},
    {MeasurementKind::Product, "product"},
    {MeasurementKind::Helstrom, "helstrom"},
};

Complex root_of_unity(size_t d, int64_t power) {
    int64_t n = static_cast<int64_t>(d);
    int64_t r = ((power % n) + n) % n;
    double ang = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d);
    return {std::cos(ang), std::sin(ang)};
}

BipartiteOperator q_closed_form(const SchmidtSpectrum &s) {
    size_t d = s.dim();
    ComplexMatrix m = schmidt_state(s).density.matrix();
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            if (i != j) {
                m(i * d + j, i * d + j) = s.coeffs()[j];
            }
        }
    }
    return BipartiteOperator(d, std::move(m));
}

BipartiteOperator mixture(const BipartiteOperator &r, const BipartiteOperator &q, double mu) {
    return r.scaled(mu) + q.scaled(1.0 - mu);
}

}  // namespace

std::string_view measurement_name(MeasurementKind kind) {
    for (const auto &e : kNames) {
        if (e.kind == kind) {
            return e.name;
        }
    }
    return "?";
}

MeasurementKind parse_measurement_kind(std::string_view name) {
    for (const auto &e : kNames) {
        if (e.name == name) {
            return e.kind;
        }
    }
    throw ValidationError("unknown measurement '" + std::string(name) +
                          "'; expected one of q0, q, r, t-mu, t-tilde, q2, t-tilde2, product, helstrom");
}

ComplexVector fourier_vector(size_t d, size_t j) {
    ComplexVector v(d);
    double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (size_t k = 0; k < d; k++) {
        v(k) = norm * root_of_unity(d, static_cast<int64_t>(j * k));
    }
    return v;
}

ComplexVector bob_vector(const SchmidtSpectrum &s, size_t j) {
    size_t d = s.dim();
    ComplexVector v(d);
    for (size_t k = 0; k < d; k++) {
        v(k) = std::sqrt(s.coeffs()[k]) * root_of_unity(d, -static_cast<int64_t>(j * k));
    }
    return v;
}

NamedMeasurement build_q0(const SchmidtSpectrum &s) {
    size_t d = s.dim();
    check_size(d * d, "build_q0");
    ComplexMatrix q0 = ComplexMatrix::Zero(d * d, d * d);
    for (size_t j = 0; j < d; j++) {
        ComplexVector phi = fourier_vector(d, j);
        ComplexVector xi = bob_vector(s, j);
        q0 += kron(phi * phi.adjoint(), xi * xi.adjoint());
    }
    return {MeasurementKind::Q0, BipartiteOperator(d, std::move(q0)), std::nullopt};
}

NamedMeasurement build_q(const SchmidtSpectrum &s) {
    BipartiteOperator closed = q_closed_form(s);
    BipartiteOperator twirled = twirl_entrywise(build_q0(s).op);
    double diff = max_entry_diff(closed.matrix(), twirled.matrix());
    if (diff > 1e-10) {
        std::ostringstream ss;
        ss << "build_q: closed form and Phi(Q0) disagree by " << diff;
        throw NumericalError(ss.str());
    }
    return {MeasurementKind::Q, std::move(closed), std::nullopt};
}

NamedMeasurement build_r(size_t d) {
    if (d < 2) {
        throw ValidationError("build_r needs d >= 2");
    }
    check_size(d * d, "build_r");
    ComplexMatrix r = ComplexMatrix::Zero(d * d, d * d);
    for (size_t k = 0; k < d; k++) {
        r(k * d + k, k * d + k) = 1.0;
    }
    return {MeasurementKind::R, BipartiteOperator(d, std::move(r)), std::nullopt};
}

double t_mu_off_norm(double lambda, double mu) {
    return std::max(mu, (1.0 - mu) * lambda);
}

double off_state_norm(const BipartiteOperator &t, const PureState &rho) {
    BipartiteOperator perp = BipartiteOperator::identity(rho.local_dim()) - rho.density;
    return op_norm((t * perp).matrix());
}

NamedMeasurement build_t_tilde(const SchmidtSpectrum &s, std::optional<double> mu) {
    double lambda = s.lambda();
    double weight = mu.value_or(lambda / (1.0 + lambda));
    if (!(weight >= 0.0 && weight <= 1.0)) {
        std::ostringstream ss;
        ss << "mu must lie in [0, 1], got " << weight;
        throw ValidationError(ss.str());
    }
    BipartiteOperator t = mixture(build_r(s.dim()).op, build_q(s).op, weight);
    double got = off_state_norm(t, schmidt_state(s));
    double want = t_mu_off_norm(lambda, weight);
    if (std::abs(got - want) > 1e-9) {
        std::ostringstream ss;
        ss << "build_t_tilde: ||T(I - rho)|| = " << got << " but max(mu, (1 - mu) lambda) = " << want;
        throw NumericalError(ss.str());
    }
    return {mu ? MeasurementKind::TMu : MeasurementKind::TTilde, std::move(t), weight};
}

NamedMeasurement build_q2(const SchmidtSpectrum &s) {
    BipartiteOperator q = build_q(s).op;
    BipartiteOperator swap = swap_operator(s.dim());
    BipartiteOperator q2 = (q + swap * q * swap).scaled(0.5);
    return {MeasurementKind::Q2, std::move(q2), std::nullopt};
}

NamedMeasurement build_t_tilde2(const SchmidtSpectrum &s) {
    double lb = s.lambda_beta();
    double mu = lb / (1.0 + lb);
    BipartiteOperator t = mixture(build_r(s.dim()).op, build_q2(s).op, mu);
    double got = off_state_norm(t, schmidt_state(s));
    if (std::abs(got - mu) > 1e-9) {
        std::ostringstream ss;
        ss << "build_t_tilde2: ||T2(I - rho)|| = " << got << " but lambda beta / (1 + lambda beta) = " << mu;
        throw NumericalError(ss.str());
    }
    return {MeasurementKind::TTilde2, std::move(t), mu};
}

NamedMeasurement build_reference(const SchmidtSpectrum &s, MeasurementKind kind) {
    size_t d = s.dim();
    if (kind == MeasurementKind::Product) {
        ComplexVector e = ComplexVector::Zero(d * d);
        e(0) = 1.0;
        return {kind, BipartiteOperator::projector(d, e), std::nullopt};
    }
    if (kind == MeasurementKind::Helstrom) {
        return {kind, schmidt_state(s).density, std::nullopt};
    }
    throw ContractError("build_reference: kind must be product or helstrom");
}

NamedMeasurement build_measurement(const SchmidtSpectrum &s, MeasurementKind kind, std::optional<double> mu) {
    switch (kind) {
        case MeasurementKind::Q0:
            return build_q0(s);
        case MeasurementKind::Q:
            return build_q(s);
        case MeasurementKind::R:
            return build_r(s.dim());
        case MeasurementKind::TMu:
            if (!mu) {
                throw ValidationError("t-mu needs an explicit mu");
            }
            return build_t_tilde(s, mu);
        case MeasurementKind::TTilde: {
            auto m = build_t_tilde(s, mu);
            m.kind = mu ? MeasurementKind::TMu : MeasurementKind::TTilde;
            return m;
        }
        case MeasurementKind::Q2:
            return build_q2(s);
        case MeasurementKind::TTilde2:
            return build_t_tilde2(s);
        case MeasurementKind::Product:
        case MeasurementKind::Helstrom:
            return build_reference(s, kind);
    }
    throw ContractError("build_measurement: unhandled kind");
}

void check_measurement(const NamedMeasurement &m, const PureState &rho) {
    PovmVerdict v = validate_povm_element(m.op);
    if (!v.pass) {
        std::ostringstream ss;
        ss << m.name() << ": eigenvalues leave [0, 1] (min " << v.min_eigenvalue << ", max " << v.max_eigenvalue
           << ")";
        throw NumericalError(ss.str());
    }
    if (m.kind != MeasurementKind::Product) {
        double err = (m.op.matrix() * rho.ket - rho.ket).cwiseAbs().maxCoeff();
        if (err > 1e-10) {
            std::ostringstream ss;
            ss << m.name() << ": T|rho> differs from |rho> by " << err;
            throw NumericalError(ss.str());
        }
    }
}

}  // namespace locc
