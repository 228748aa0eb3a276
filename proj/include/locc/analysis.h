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

#ifndef LOCC_ANALYSIS_H
#define LOCC_ANALYSIS_H

#include <optional>
#include <string>

#include "locc/measurements.h"
#include "locc/operators.h"
#include "locc/states.h"

namespace locc {

/// Outcome of a numerical check of a bound. `margin` is lhs - rhs (the
/// smallest one when several inequalities are checked); positive means slack.
struct VerdictWithMargin {
    bool applicable = true;
    bool pass = false;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;
    std::string detail;
};

/// Optimal global error 1/2 (1 - 1/2 ||rho - sigma||_1). Both arguments must be
/// density matrices (hermitian, PSD to -1e-10, unit trace to 1e-9).
double helstrom_error(const BipartiteOperator &rho, const BipartiteOperator &sigma);

/// Throws ContractError unless `m` is a density matrix.
void check_density(const BipartiteOperator &m, const std::string &what);

struct AdversaryResult {
    /// sup Tr T sigma over states with Tr rho sigma <= theta.
    double value;
    /// A state attaining `value` to within 1e-6.
    BipartiteOperator sigma_star;
    /// Optimal multiplier of the overlap constraint (+inf on the theta = 0 path
    /// when T does not fix rho).
    double dual_mu;
};

/// Worst-case acceptance of T over the overlap-constrained adversaries, via the
/// dual min_{mu >= 0} lambda_max(T - mu rho) + mu theta (golden-section search).
/// rho must be pure. Throws ValidationError for theta outside [0, 1] and
/// NumericalError when the reconstructed primal misses the dual by more than 1e-6.
AdversaryResult worst_case_value(const BipartiteOperator &t, const BipartiteOperator &rho, double theta);

struct ErrorReport {
    std::string measurement;
    double theta;
    double lambda;
    double alpha;
    double beta;
    /// theta / 2, the unrestricted minimax error.
    double helstrom;
    /// Tr T rho.
    double accept_rho;
    double worst_case_value;
    double p_err;
    double upper_1way;
    double upper_2way;
    double lower_thm2;
    double lower_simple;
    /// Name of the larger of the two lower bounds: "thm2" or "simple".
    std::string active_lower;
    /// Closed-form optimum; only for a uniform spectrum.
    std::optional<double> max_entangled_value;
    /// Prior-weighted error when priors were requested.
    std::optional<double> pi0;
    std::optional<double> prior_weighted;
};

/// (theta + lambda) / (2 (1 + lambda)).
double upper_bound_one_way(double lambda, double theta);
/// (theta + lambda beta) / (2 (1 + lambda beta)).
double upper_bound_two_way(double lambda_beta, double theta);
/// theta / 2 + (1 - theta) lambda alpha^2 / (2 + 7 alpha).
double lower_bound_ppt(double lambda, double alpha, double theta);
/// (1 / lambda - 1) / (2 (d^2 - 1)).
double lower_bound_simple(double lambda, size_t d);
/// (d theta + 1) / (2 (d + 1)).
double max_entangled_error(size_t d, double theta);

/// Every bound for one (spectrum, theta, measurement). For T-tilde and
/// T-tilde2 the worst case must meet its upper bound with equality (to 1e-8),
/// otherwise NumericalError.
ErrorReport error_report(const SchmidtSpectrum &s, double theta, const NamedMeasurement &m);

/// Tr T >= Tr(T rho) / lambda for PPT T. ContractError if T is not a PPT POVM element.
VerdictWithMargin verify_lemma1(const BipartiteOperator &t, const BipartiteOperator &rho);

/// ||(I - rho) T (I - rho)|| >= 2 p lambda alpha^2 / (2 + 7 alpha), p = Tr T rho;
/// when p = 1 also ||(I - rho) T|| >= 2/3 lambda alpha. T must be Phi-invariant,
/// PPT and a valid POVM element. Not applicable when alpha = 0.
VerdictWithMargin verify_appendix_a(const BipartiteOperator &t, const SchmidtSpectrum &s);

/// pi0 Tr (I - T) rho + (1 - pi0) sup_sigma Tr T sigma. For theta = 0 and PPT T
/// the result is checked against min(pi0, pi1 2 lambda alpha^2 / (2 + 7 alpha)).
double prior_weighted_worst_case(const BipartiteOperator &t, const BipartiteOperator &rho, double theta,
                                 double pi0);

}  // namespace locc

#endif
