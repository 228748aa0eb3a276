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

#include "locc/analysis.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "locc/errors.h"
#include "locc/twirl.h"

namespace locc {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;

/// Orthonormal basis (as columns) of the complement of a unit ket.
ComplexMatrix complement_basis(const ComplexVector &ket) {
    Eigen::HouseholderQR<ComplexMatrix> qr{ComplexMatrix(ket)};
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(ket.size(), ket.size());
    return q.rightCols(ket.size() - 1);
}

struct TopOnPerp {
    double value;
    ComplexVector vec;
};

TopOnPerp top_on_complement(const ComplexMatrix &t, const ComplexMatrix &perp) {
    ComplexMatrix compressed = perp.adjoint() * t * perp;
    EigenSystem es = eig_hermitian(0.5 * (compressed + compressed.adjoint()));
    ComplexVector v = perp * es.top_vector();
    v.normalize();
    return {es.max(), v};
}

double overlap(const ComplexVector &ket, const ComplexVector &v) {
    return std::norm(ket.dot(v));
}

double expectation(const ComplexMatrix &t, const ComplexVector &v) {
    return v.dot(t * v).real();
}

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        std::ostringstream ss;
        ss << "theta must lie in [0, 1], got " << theta;
        throw ValidationError(ss.str());
    }
}

double lambda_max(const ComplexMatrix &m) {
    return eig_hermitian(m).max();
}

struct DualOptimum {
    double mu;
    double value;
};

// Golden-section minimization of g(mu) = lambda_max(T - mu rho) + mu theta over
// [0, 2 ||T|| / max(theta, 1e-6)] down to a bracket of width 1e-10.
DualOptimum minimize_dual(const ComplexMatrix &tm, const ComplexMatrix &rho_m, double theta, double t_norm) {
    auto g = [&](double mu) { return lambda_max(tm - mu * rho_m) + mu * theta; };
    double hi = 2.0 * t_norm / std::max(theta, 1e-6);
    double lo = 0.0;
    double x1 = hi - kGoldenRatio * (hi - lo);
    double x2 = lo + kGoldenRatio * (hi - lo);
    double f1 = g(x1);
    double f2 = g(x2);
    while (hi - lo > 1e-10) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGoldenRatio * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGoldenRatio * (hi - lo);
            f2 = g(x2);
        }
    }
    DualOptimum best{f1 <= f2 ? x1 : x2, std::min(f1, f2)};
    double g0 = g(0.0);
    if (g0 <= best.value) {
        best = {0.0, g0};
    }
    return best;
}

void check_gap(double dual, double primal) {
    if (std::abs(dual - primal) > 1e-6) {
        std::ostringstream ss;
        ss.precision(12);
        ss << "worst_case_value: primal-dual gap too large (dual " << dual << ", primal " << primal << ")";
        throw NumericalError(ss.str());
    }
}

}  // namespace

void check_density(const BipartiteOperator &m, const std::string &what) {
    double asym = max_asymmetry(m.matrix());
    if (asym > kHermitianTol) {
        std::ostringstream ss;
        ss << what << " is not hermitian (max asymmetry " << asym << ")";
        throw ContractError(ss.str());
    }
    EigenSystem es = eig_hermitian(m.matrix());
    if (es.min() < kPsdFloor) {
        std::ostringstream ss;
        ss << what << " is not positive semidefinite (min eigenvalue " << es.min() << ")";
        throw ContractError(ss.str());
    }
    double tr = m.trace().real();
    if (std::abs(tr - 1.0) > 1e-9) {
        std::ostringstream ss;
        ss << what << " does not have unit trace (trace " << tr << ")";
        throw ContractError(ss.str());
    }
}

double helstrom_error(const BipartiteOperator &rho, const BipartiteOperator &sigma) {
    check_density(rho, "rho");
    check_density(sigma, "sigma");
    if (rho.local_dim() != sigma.local_dim()) {
        throw ContractError("helstrom_error: rho and sigma have different local dimensions");
    }
    double tn = eig_hermitian((rho - sigma).matrix()).trace_norm();
    return 0.5 * (1.0 - 0.5 * tn);
}

AdversaryResult worst_case_value(const BipartiteOperator &t, const BipartiteOperator &rho, double theta) {
    check_theta(theta);
    if (t.local_dim() != rho.local_dim()) {
        throw ContractError("worst_case_value: T and rho have different local dimensions");
    }
    PovmVerdict pv = validate_povm_element(t);
    if (!pv.pass) {
        std::ostringstream ss;
        ss << "worst_case_value: T is not a POVM element (eigenvalues in [" << pv.min_eigenvalue << ", "
           << pv.max_eigenvalue << "])";
        throw ContractError(ss.str());
    }
    size_t d = t.local_dim();
    PureDecomposition pure = decompose_pure(rho);
    const ComplexVector &ket = pure.ket;
    const ComplexMatrix &tm = t.matrix();
    ComplexMatrix perp = complement_basis(ket);
    ComplexMatrix rho_m = ket * ket.adjoint();

    bool fixes_rho = (tm * ket - ket).cwiseAbs().maxCoeff() <= 1e-10;
    if (theta == 0.0 || fixes_rho) {
        TopOnPerp top = top_on_complement(tm, perp);
        ComplexMatrix chi = top.vec * top.vec.adjoint();
        if (theta == 0.0) {
            double mu = fixes_rho ? 1.0 - top.value : std::numeric_limits<double>::infinity();
            return {top.value, BipartiteOperator(d, chi), mu};
        }
        // T = rho + (I - rho) T (I - rho): the adversary saturates the overlap
        // and spends the rest on the best state orthogonal to rho.
        ComplexMatrix sigma = theta * rho_m + (1.0 - theta) * chi;
        double primal = theta + (1.0 - theta) * top.value;
        DualOptimum dual = minimize_dual(tm, rho_m, theta, pv.max_eigenvalue);
        check_gap(dual.value, primal);
        return {dual.value, BipartiteOperator(d, sigma), dual.mu};
    }

    DualOptimum dual = minimize_dual(tm, rho_m, theta, pv.max_eigenvalue);
    double mu_star = dual.mu;
    double value = dual.value;

    // Primal reconstruction: top eigenvectors just either side of mu*, mixed so
    // the overlap constraint is tight when the multiplier is active.
    double eps = 1e-7 * std::max(1.0, mu_star);
    ComplexVector v_plus = eig_hermitian(tm - (mu_star + eps) * rho_m).top_vector();
    ComplexVector v_minus = eig_hermitian(tm - std::max(mu_star - eps, 0.0) * rho_m).top_vector();
    double o_plus = overlap(ket, v_plus);
    double o_minus = overlap(ket, v_minus);
    ComplexMatrix sigma;
    if (o_plus <= theta) {
        if (o_minus <= theta) {
            const ComplexVector &v =
                expectation(tm, v_minus) >= expectation(tm, v_plus) ? v_minus : v_plus;
            sigma = v * v.adjoint();
        } else {
            double w = (theta - o_plus) / (o_minus - o_plus);
            sigma = w * v_minus * v_minus.adjoint() + (1.0 - w) * v_plus * v_plus.adjoint();
        }
    } else {
        TopOnPerp top = top_on_complement(tm, perp);
        double w = theta / o_plus;
        sigma = w * v_plus * v_plus.adjoint() + (1.0 - w) * top.vec * top.vec.adjoint();
    }
    double primal = (tm * sigma).trace().real();
    check_gap(value, primal);
    return {value, BipartiteOperator(d, sigma), mu_star};
}

double upper_bound_one_way(double lambda, double theta) {
    return (theta + lambda) / (2.0 * (1.0 + lambda));
}

double upper_bound_two_way(double lambda_beta, double theta) {
    return (theta + lambda_beta) / (2.0 * (1.0 + lambda_beta));
}

double lower_bound_ppt(double lambda, double alpha, double theta) {
    return 0.5 * theta + (1.0 - theta) * lambda * alpha * alpha / (2.0 + 7.0 * alpha);
}

double lower_bound_simple(double lambda, size_t d) {
    double dd = static_cast<double>(d);
    return (1.0 / lambda - 1.0) / (2.0 * (dd * dd - 1.0));
}

double max_entangled_error(size_t d, double theta) {
    double dd = static_cast<double>(d);
    return (dd * theta + 1.0) / (2.0 * (dd + 1.0));
}

ErrorReport error_report(const SchmidtSpectrum &s, double theta, const NamedMeasurement &m) {
    check_theta(theta);
    if (m.op.local_dim() != s.dim()) {
        throw ValidationError("error_report: measurement and spectrum have different local dimensions");
    }
    PureState rho = schmidt_state(s);
    AdversaryResult adv = worst_case_value(m.op, rho.density, theta);

    ErrorReport r;
    r.measurement = std::string(m.name());
    r.theta = theta;
    r.lambda = s.lambda();
    r.alpha = s.alpha();
    r.beta = s.beta();
    r.helstrom = 0.5 * theta;
    r.accept_rho = m.op.expectation(rho.density).real();
    r.worst_case_value = adv.value;
    r.p_err = 0.5 * ((1.0 - r.accept_rho) + adv.value);
    r.upper_1way = upper_bound_one_way(s.lambda(), theta);
    r.upper_2way = upper_bound_two_way(s.lambda_beta(), theta);
    r.lower_thm2 = lower_bound_ppt(s.lambda(), s.alpha(), theta);
    r.lower_simple = lower_bound_simple(s.lambda(), s.dim());
    r.active_lower = r.lower_thm2 >= r.lower_simple ? "thm2" : "simple";
    if (s.is_uniform()) {
        r.max_entangled_value = max_entangled_error(s.dim(), theta);
    }

    auto expect_equal = [&](double want, const char *label) {
        if (std::abs(2.0 * r.p_err - 2.0 * want) > 1e-8) {
            std::ostringstream ss;
            ss.precision(12);
            ss << "error_report: worst case of " << r.measurement << " is " << r.p_err << " but the " << label
               << " upper bound is " << want;
            throw NumericalError(ss.str());
        }
    };
    if (m.kind == MeasurementKind::TTilde) {
        expect_equal(r.upper_1way, "one-way");
    } else if (m.kind == MeasurementKind::TTilde2) {
        expect_equal(r.upper_2way, "two-way");
    }
    return r;
}

VerdictWithMargin verify_lemma1(const BipartiteOperator &t, const BipartiteOperator &rho) {
    PovmVerdict pv = validate_povm_element(t);
    if (!pv.pass || !pv.ppt) {
        std::ostringstream ss;
        ss << "verify_lemma1 needs a PPT POVM element (eigenvalues in [" << pv.min_eigenvalue << ", "
           << pv.max_eigenvalue << "], PT min eigenvalue " << pv.pt_min_eigenvalue << ")";
        throw ContractError(ss.str());
    }
    PureDecomposition pure = decompose_pure(rho);
    double lambda = pure.coeffs[0];
    VerdictWithMargin v;
    v.lhs = t.trace().real();
    v.rhs = t.expectation(rho).real() / lambda;
    v.margin = v.lhs - v.rhs;
    v.pass = v.margin >= -1e-9;
    v.detail = "Tr T >= Tr(T rho) / lambda";
    return v;
}

VerdictWithMargin verify_appendix_a(const BipartiteOperator &t, const SchmidtSpectrum &s) {
    if (t.local_dim() != s.dim()) {
        throw ContractError("verify_appendix_a: operator and spectrum have different local dimensions");
    }
    ab_decompose(t);
    PovmVerdict pv = validate_povm_element(t);
    if (!pv.pass || !pv.ppt) {
        throw ContractError("verify_appendix_a needs a PPT POVM element");
    }
    VerdictWithMargin v;
    double lambda = s.lambda();
    double alpha = s.alpha();
    if (alpha == 0.0) {
        v.applicable = false;
        v.pass = false;
        v.detail = "alpha = 0 (product state): bound not applicable";
        return v;
    }
    PureState rho = schmidt_state(s);
    size_t d = s.dim();
    ComplexMatrix perp = (BipartiteOperator::identity(d) - rho.density).matrix();
    double p = t.expectation(rho.density).real();
    ComplexMatrix compressed = perp * t.matrix() * perp;
    v.lhs = eig_hermitian(0.5 * (compressed + compressed.adjoint())).op_norm();
    v.rhs = 2.0 * p * lambda * alpha * alpha / (2.0 + 7.0 * alpha);
    v.margin = v.lhs - v.rhs;
    v.detail = "||(I-rho)T(I-rho)|| >= 2 p lambda alpha^2 / (2 + 7 alpha)";
    if (std::abs(p - 1.0) <= 1e-9) {
        double lhs2 = op_norm(perp * t.matrix());
        double rhs2 = 2.0 / 3.0 * lambda * alpha;
        if (lhs2 - rhs2 < v.margin) {
            v.lhs = lhs2;
            v.rhs = rhs2;
            v.margin = lhs2 - rhs2;
        }
        v.detail += "; p = 1: ||(I-rho)T|| >= 2/3 lambda alpha";
    }
    v.pass = v.margin >= -1e-9;
    return v;
}

double prior_weighted_worst_case(const BipartiteOperator &t, const BipartiteOperator &rho, double theta,
                                 double pi0) {
    if (!(pi0 > 0.0 && pi0 < 1.0)) {
        std::ostringstream ss;
        ss << "prior pi0 must lie in (0, 1), got " << pi0;
        throw ValidationError(ss.str());
    }
    double pi1 = 1.0 - pi0;
    AdversaryResult adv = worst_case_value(t, rho, theta);
    double p = t.expectation(rho).real();
    double value = pi0 * (1.0 - p) + pi1 * adv.value;
    if (theta == 0.0 && validate_povm_element(t).ppt) {
        PureDecomposition pure = decompose_pure(rho);
        double lambda = pure.coeffs[0];
        double lambda1 = pure.coeffs[1];
        double alpha = lambda1 > 0 ? std::sqrt(lambda1 / lambda) : 0.0;
        double floor = std::min(pi0, pi1 * 2.0 * lambda1 / (2.0 + 7.0 * alpha));
        if (value < floor - 1e-9) {
            std::ostringstream ss;
            ss.precision(12);
            ss << "prior_weighted_worst_case: " << value << " falls below the PPT floor " << floor;
            throw NumericalError(ss.str());
        }
    }
    return value;
}

}  // namespace locc
