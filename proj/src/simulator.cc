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

#include "locc/simulator.h"

#include <cmath>
#include <sstream>

#include "locc/analysis.h"
#include "locc/errors.h"
#include "locc/rng.h"
#include "locc/twirl.h"

namespace locc {

namespace {

size_t sample(const std::vector<double> &weights, double u) {
    double total = 0;
    for (double w : weights) {
        total += std::max(w, 0.0);
    }
    double target = u * total;
    double acc = 0;
    for (size_t i = 0; i < weights.size(); i++) {
        acc += std::max(weights[i], 0.0);
        if (target < acc) {
            return i;
        }
    }
    // u * total rounded up to total: take the last outcome with positive weight.
    for (size_t i = weights.size(); i-- > 0;) {
        if (weights[i] > 0) {
            return i;
        }
    }
    return weights.size() - 1;
}

}  // namespace

ShotPlan::ShotPlan(const ShotConfig &config) : d_(config.spectrum.dim()), seed_(config.seed) {
    if (config.sigma.local_dim() != d_) {
        throw ValidationError("simulate: sigma and spectrum have different local dimensions");
    }
    check_density(config.sigma, "sigma");
    const SchmidtSpectrum &s = config.spectrum;
    switch (config.measurement) {
        case MeasurementKind::R:
            r_weight_ = 1.0;
            break;
        case MeasurementKind::Q0:
            uses_q_ = true;
            break;
        case MeasurementKind::Q:
            uses_q_ = true;
            twirled_ = true;
            break;
        case MeasurementKind::Q2:
            uses_q_ = true;
            twirled_ = true;
            role_swap_ = true;
            break;
        case MeasurementKind::TTilde:
            r_weight_ = s.lambda() / (1.0 + s.lambda());
            uses_q_ = twirled_ = true;
            break;
        case MeasurementKind::TMu:
            if (!config.mu || !(*config.mu >= 0.0 && *config.mu <= 1.0)) {
                throw ValidationError("simulate: t-mu needs mu in [0, 1]");
            }
            r_weight_ = *config.mu;
            uses_q_ = twirled_ = true;
            break;
        case MeasurementKind::TTilde2:
            r_weight_ = s.lambda_beta() / (1.0 + s.lambda_beta());
            uses_q_ = twirled_ = role_swap_ = true;
            break;
        case MeasurementKind::Product:
            product_ = true;
            break;
        case MeasurementKind::Helstrom:
            throw ValidationError("simulate: helstrom is a global measurement with no LOCC protocol");
    }

    const ComplexMatrix &sigma = config.sigma.matrix();
    joint_.resize(d_ * d_);
    for (size_t a = 0; a < d_ * d_; a++) {
        joint_[a] = sigma(a, a).real();
    }
    if (twirled_) {
        p_ = twirl_prime(d_);
    }
    if (uses_q_) {
        for (size_t j = 0; j < d_; j++) {
            bob_targets_.push_back(bob_vector(s, j));
        }
        direct_ = fourier_table(sigma, twirled_);
        if (role_swap_) {
            BipartiteOperator sw = swap_operator(d_);
            swapped_ = fourier_table(sw.matrix() * sigma * sw.matrix(), twirled_);
        }
    }

    std::optional<double> mu = config.mu;
    if (config.measurement != MeasurementKind::TMu) {
        mu.reset();
    }
    NamedMeasurement t = build_measurement(s, config.measurement, mu);
    analytic_ = std::clamp(t.op.expectation(config.sigma).real(), 0.0, 1.0);
}

ShotPlan::FourierTable ShotPlan::fourier_table(const ComplexMatrix &sigma, bool twirled) const {
    // Alice measures |phi_j>, Bob projects onto |xi_j>. With the twirl, the state
    // is first conjugated by Alice's U^-k Z^-l and Bob's entrywise conjugate.
    size_t d = d_;
    size_t elements = twirled ? p_ * p_ : 1;
    FourierTable table;
    table.alice.assign(elements, std::vector<double>(d));
    table.accept.assign(elements, std::vector<double>(d));
    std::vector<ComplexVector> phis;
    for (size_t j = 0; j < d; j++) {
        phis.push_back(fourier_vector(d, j));
    }
    for (size_t e = 0; e < elements; e++) {
        ComplexMatrix rotated = sigma;
        if (twirled) {
            ComplexVector u = twirl_unitary_diagonal(d, p_, e / p_, e % p_);
            rotated = u.conjugate().asDiagonal() * sigma * u.asDiagonal();
        }
        for (size_t j = 0; j < d; j++) {
            // Alice's marginal: sum_b <phi_j b| sigma' |phi_j b>.
            ComplexMatrix bob_block = ComplexMatrix::Zero(d, d);
            for (size_t a = 0; a < d; a++) {
                for (size_t a2 = 0; a2 < d; a2++) {
                    Complex w = std::conj(phis[j](a)) * phis[j](a2);
                    bob_block += w * rotated.block(a * d, a2 * d, d, d);
                }
            }
            double pj = bob_block.trace().real();
            table.alice[e][j] = std::max(pj, 0.0);
            const ComplexVector &xi = bob_targets_[j];
            double joint = xi.dot(bob_block * xi).real();
            table.accept[e][j] = pj > 1e-300 ? std::clamp(joint / pj, 0.0, 1.0) : 0.0;
        }
    }
    return table;
}

bool ShotPlan::shot(uint64_t index) const {
    SplitMix64 rng = SplitMix64::stream(seed_, index);
    if (product_) {
        return sample(joint_, rng.uniform()) == 0;
    }
    bool r_branch = rng.uniform() < r_weight_;
    if (r_branch) {
        size_t outcome = sample(joint_, rng.uniform());
        return outcome / d_ == outcome % d_;
    }
    const FourierTable *table = &direct_;
    if (role_swap_ && rng.uniform() < 0.5) {
        table = &swapped_;
    }
    size_t element = 0;
    if (twirled_) {
        uint64_t k = rng.below(p_);
        uint64_t l = rng.below(p_);
        element = k * p_ + l;
    }
    size_t j = sample(table->alice[element], rng.uniform());
    return rng.uniform() < table->accept[element][j];
}

uint64_t ShotPlan::count_accepts(uint64_t begin, uint64_t end) const {
    uint64_t n = 0;
    for (uint64_t i = begin; i < end; i++) {
        n += shot(i) ? 1 : 0;
    }
    return n;
}

SimResult simulate(const ShotConfig &config) {
    if (config.shots < 1) {
        throw ValidationError("simulate needs at least one shot");
    }
    ShotPlan plan(config);
    SimResult r{};
    r.shots = config.shots;
    r.accepts = plan.count_accepts(0, config.shots);
    r.estimate = static_cast<double>(r.accepts) / static_cast<double>(r.shots);
    r.analytic = plan.analytic();
    r.ci_halfwidth = 4.0 * std::sqrt(r.analytic * (1.0 - r.analytic) / static_cast<double>(r.shots));
    return r;
}

double estimate_error_rate(const ShotConfig &config, double theta) {
    PureState rho = schmidt_state(config.spectrum);
    double overlap = config.sigma.expectation(rho.density).real();
    if (overlap > theta + 1e-8) {
        std::ostringstream ss;
        ss << "estimate_error_rate: Tr rho sigma = " << overlap << " exceeds theta = " << theta;
        throw ValidationError(ss.str());
    }
    ShotConfig under_rho = config;
    under_rho.sigma = rho.density;
    under_rho.seed = SplitMix64::stream(config.seed, 0).next();
    ShotConfig under_sigma = config;
    under_sigma.seed = SplitMix64::stream(config.seed, 1).next();
    SimResult a = simulate(under_rho);
    SimResult b = simulate(under_sigma);
    return 0.5 * ((1.0 - a.estimate) + b.estimate);
}

BipartiteOperator sigma_family(const std::string &spec, const SchmidtSpectrum &s,
                               const std::optional<NamedMeasurement> &measurement, double theta) {
    size_t d = s.dim();
    PureState rho = schmidt_state(s);
    if (spec == "orthogonal-uniform") {
        double D = static_cast<double>(d * d);
        return (BipartiteOperator::identity(d) - rho.density).scaled(1.0 / (D - 1.0));
    }
    if (spec == "rho") {
        return rho.density;
    }
    if (spec == "worst-case") {
        if (!measurement) {
            throw ValidationError("sigma family 'worst-case' needs a measurement");
        }
        return worst_case_value(measurement->op, rho.density, theta).sigma_star;
    }
    if (spec.rfind("basis:", 0) == 0) {
        std::string rest = spec.substr(6);
        size_t comma = rest.find(',');
        size_t i = 0;
        size_t j = 0;
        try {
            if (comma == std::string::npos) {
                throw std::invalid_argument("no comma");
            }
            size_t used_i = 0;
            size_t used_j = 0;
            i = std::stoul(rest.substr(0, comma), &used_i);
            j = std::stoul(rest.substr(comma + 1), &used_j);
            if (used_i != comma || used_j != rest.size() - comma - 1) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            throw ValidationError("malformed sigma '" + spec + "': expected basis:i,j with integer indices");
        }
        if (i >= d || j >= d) {
            throw ValidationError("sigma '" + spec + "': basis index out of range for d = " + std::to_string(d));
        }
        ComplexVector e = ComplexVector::Zero(d * d);
        e(i * d + j) = 1.0;
        return BipartiteOperator::projector(d, e);
    }
    throw ValidationError("unknown sigma family '" + spec +
                          "'; expected orthogonal-uniform, worst-case, rho or basis:i,j");
}

}  // namespace locc
