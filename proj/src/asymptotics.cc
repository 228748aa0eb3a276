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

#include "locc/asymptotics.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "locc/errors.h"
#include "locc/measurements.h"

namespace locc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(double a, double b) {
    if (a == -kInf) {
        return b;
    }
    if (b == -kInf) {
        return a;
    }
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

double safe_log(double x) {
    return x > 0 ? std::log(x) : -kInf;
}

void check_unit_interval(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream ss;
        ss << name << " must lie in [0, 1], got " << v;
        throw ValidationError(ss.str());
    }
}

}  // namespace

double limiting_rate(double lambda, double theta) {
    return -std::log(std::max(theta, lambda));
}

RateTable rate_table(double lambda, double alpha, double theta, int n_max) {
    check_unit_interval(theta, "theta");
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw ValidationError("lambda must lie in (0, 1]");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError("alpha must lie in [0, 1]");
    }
    if (lambda * (1.0 + alpha * alpha) > 1.0 + 1e-12) {
        throw ValidationError("lambda (1 + alpha^2) exceeds 1: no Schmidt spectrum has these parameters");
    }
    if (n_max < 1 || n_max > 1000000) {
        throw ValidationError("n_max must lie in [1, 10^6]");
    }
    RateTable t{lambda, alpha, theta, {}, limiting_rate(lambda, theta)};
    t.rows.reserve(static_cast<size_t>(n_max));
    double log_theta = safe_log(theta);
    double log_lambda = std::log(lambda);
    double log_c = alpha > 0 ? std::log(alpha * alpha / (2.0 + 7.0 * alpha)) : -kInf;
    for (int n = 1; n <= n_max; n++) {
        double nd = n;
        double ln_tn = nd * log_theta;
        double ln_ln = nd * log_lambda;
        double lambda_n = std::exp(ln_ln);
        double theta_n = std::exp(ln_tn);
        RateRow row{};
        row.n = n;
        row.upper_bound = (theta_n + lambda_n) / (2.0 * (1.0 + lambda_n));
        double log_upper = log_sum_exp(ln_tn, ln_ln) - std::numbers::ln2 - std::log1p(lambda_n);
        row.upper_rate = -log_upper / nd;
        if (alpha > 0) {
            row.lower_bound = 0.5 * theta_n + (1.0 - theta_n) * lambda_n * alpha * alpha / (2.0 + 7.0 * alpha);
            double log_lower = log_sum_exp(ln_tn - std::numbers::ln2, std::log1p(-theta_n) + ln_ln + log_c);
            row.lower_rate = -log_lower / nd;
        }
        t.rows.push_back(row);
    }
    return t;
}

VerdictWithMargin cross_validate_small_n(const SchmidtSpectrum &s, double theta, int n) {
    check_unit_interval(theta, "theta");
    SchmidtSpectrum power = tensor_power_spectrum(s, n);
    size_t D = power.dim() * power.dim();
    check_size(D, "cross_validate_small_n");
    PureState rho = schmidt_state(power);
    NamedMeasurement t = build_t_tilde(power);
    double theta_n = std::pow(theta, n);
    AdversaryResult adv = worst_case_value(t.op, rho.density, theta_n);
    double accept = t.op.expectation(rho.density).real();

    VerdictWithMargin v;
    v.lhs = 0.5 * ((1.0 - accept) + adv.value);
    double lambda_n = std::pow(s.lambda(), n);
    v.rhs = (theta_n + lambda_n) / (2.0 * (1.0 + lambda_n));
    v.margin = -std::abs(v.lhs - v.rhs);
    v.pass = std::abs(v.lhs - v.rhs) <= 1e-8;
    v.detail = "matrix worst-case p_err vs closed-form n-copy upper bound";
    return v;
}

ChernoffResult classical_chernoff(std::array<double, 2> p, std::array<double, 2> q) {
    for (const auto &dist : {p, q}) {
        for (double x : dist) {
            if (!(x >= 0.0 && x <= 1.0)) {
                throw ValidationError("binary distribution entries must lie in [0, 1]");
            }
        }
        if (std::abs(dist[0] + dist[1] - 1.0) > 1e-9) {
            throw ValidationError("binary distribution must sum to 1");
        }
    }
    ChernoffResult r{p, q, 0.5, 0.0, false};
    bool common = false;
    for (int i = 0; i < 2; i++) {
        common |= p[i] > 0 && q[i] > 0;
    }
    if (!common) {
        r.exponent = kInf;
        r.infinite = true;
        return r;
    }
    auto f = [&](double s) {
        double acc = 0;
        for (int i = 0; i < 2; i++) {
            if (p[i] > 0 && q[i] > 0) {
                acc += std::exp(s * std::log(p[i]) + (1.0 - s) * std::log(q[i]));
            }
        }
        return acc;
    };
    constexpr double kG = 0.6180339887498949;
    double lo = 0.0;
    double hi = 1.0;
    double x1 = hi - kG * (hi - lo);
    double x2 = lo + kG * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > 1e-12) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kG * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kG * (hi - lo);
            f2 = f(x2);
        }
    }
    r.s_star = f1 <= f2 ? x1 : x2;
    double best = std::min(f1, f2);
    for (double edge : {0.0, 1.0}) {
        double fe = f(edge);
        if (fe < best) {
            best = fe;
            r.s_star = edge;
        }
    }
    r.exponent = -std::log(best);
    if (r.exponent < 0.0 && r.exponent > -1e-15) {
        r.exponent = 0.0;
    }

    bool symmetric = std::abs(p[0] - q[1]) <= 1e-15 && std::abs(p[1] - q[0]) <= 1e-15;
    if (symmetric && p[0] > 0 && p[0] < 1) {
        double closed = -std::log(2.0 * std::sqrt(p[0] * (1.0 - p[0])));
        if (std::abs(closed - r.exponent) > 1e-9) {
            std::ostringstream ss;
            ss.precision(15);
            ss << "classical_chernoff: search gives " << r.exponent << " but the symmetric closed form is "
               << closed;
            throw NumericalError(ss.str());
        }
    }
    return r;
}

VerdictWithMargin counterexample_check(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw ValidationError("lambda must lie in (0, 1]");
    }
    VerdictWithMargin v;
    if (lambda == 1.0) {
        v.applicable = false;
        v.lhs = 0.0;
        v.rhs = kInf;
        v.detail = "lambda = 1: product state, rates undefined";
        return v;
    }
    v.lhs = -std::log(lambda);
    v.rhs = -std::log(2.0 * std::sqrt(lambda * (1.0 - lambda)));
    v.margin = v.rhs - v.lhs;
    v.pass = lambda > 0.8 && v.lhs < v.rhs;
    v.detail = "a = -ln lambda vs b = -ln(2 sqrt(lambda (1 - lambda)))";
    return v;
}

std::vector<Figure1Row> figure1_data(size_t d, double alpha, int grid) {
    if (d < 2) {
        throw ValidationError("figure1 needs d >= 2");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ValidationError("figure1 needs alpha in (0, 1]");
    }
    if (grid < 2) {
        throw ValidationError("figure1 grid needs at least 2 points");
    }
    double lo = 1.0 / static_cast<double>(d);
    double hi = 1.0 / (1.0 + alpha * alpha);
    if (lo > hi) {
        std::ostringstream ss;
        ss << "empty lambda range: 1/d = " << lo << " exceeds 1/(1 + alpha^2) = " << hi
           << " (alpha too large for d)";
        throw ValidationError(ss.str());
    }
    std::vector<Figure1Row> rows;
    rows.reserve(static_cast<size_t>(grid));
    for (int i = 0; i < grid; i++) {
        double lambda = i == grid - 1 ? hi : lo + (hi - lo) * i / (grid - 1);
        rows.push_back({lambda, upper_bound_one_way(lambda, 0.0), lower_bound_ppt(lambda, alpha, 0.0),
                        lower_bound_simple(lambda, d)});
    }
    return rows;
}

std::vector<Figure2Row> figure2_data(std::optional<int> n, int grid) {
    if (grid < 2) {
        throw ValidationError("figure2 grid needs at least 2 points");
    }
    if (n && *n < 1) {
        throw ValidationError("figure2 needs n >= 1");
    }
    std::vector<Figure2Row> rows;
    rows.reserve(static_cast<size_t>(grid) * static_cast<size_t>(grid));
    for (int i = 0; i < grid; i++) {
        double lambda = static_cast<double>(i) / (grid - 1);
        for (int j = 0; j < grid; j++) {
            double theta = static_cast<double>(j) / (grid - 1);
            Figure2Row row{lambda, theta, 0.0, {}};
            if (n) {
                double ln = std::pow(lambda, *n);
                row.value = (std::pow(theta, *n) + ln) / (2.0 * (1.0 + ln));
                for (size_t k = 0; k < kFigure2Levels.size(); k++) {
                    row.inside[k] = row.value <= std::pow(kFigure2Levels[k], *n);
                }
            } else {
                row.value = std::max(theta, lambda);
                for (size_t k = 0; k < kFigure2Levels.size(); k++) {
                    row.inside[k] = row.value <= kFigure2Levels[k];
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace locc
