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
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "locc/errors.h"
#include "locc/format.h"

namespace locc {

bool SchmidtSpectrum::is_uniform(double tol) const {
    double u = 1.0 / static_cast<double>(coeffs_.size());
    return std::all_of(coeffs_.begin(), coeffs_.end(), [&](double c) { return std::abs(c - u) <= tol; });
}

std::string SchmidtSpectrum::to_string() const {
    std::string out;
    for (size_t i = 0; i < coeffs_.size(); i++) {
        if (i) {
            out += ',';
        }
        out += format_number(coeffs_[i]);
    }
    return out;
}

SchmidtSpectrum make_spectrum(std::span<const double> raw, size_t d) {
    if (d < 2) {
        throw ValidationError("Schmidt spectrum needs local dimension d >= 2");
    }
    if (raw.size() != d) {
        std::ostringstream ss;
        ss << "Schmidt spectrum has " << raw.size() << " coefficients but d = " << d;
        throw ValidationError(ss.str());
    }
    double sum = 0;
    for (double c : raw) {
        if (!std::isfinite(c)) {
            throw ValidationError("Schmidt coefficient is not finite");
        }
        if (c < -1e-12) {
            std::ostringstream ss;
            ss << "Schmidt coefficient " << c << " is negative";
            throw ValidationError(ss.str());
        }
        sum += c;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "Schmidt coefficients sum to " << sum << ", expected 1 (within 1e-9)";
        throw ValidationError(ss.str());
    }
    SchmidtSpectrum s;
    s.coeffs_.assign(raw.begin(), raw.end());
    for (double &c : s.coeffs_) {
        c = std::max(c, 0.0);
    }
    std::sort(s.coeffs_.begin(), s.coeffs_.end(), std::greater<>());
    double clamped = std::accumulate(s.coeffs_.begin(), s.coeffs_.end(), 0.0);
    for (double &c : s.coeffs_) {
        c /= clamped;
    }
    double lambda = s.coeffs_[0];
    double lambda1 = s.coeffs_[1];
    if (lambda1 == 0.0) {
        s.alpha_ = 0.0;
        s.beta_ = 0.5;
    } else {
        s.alpha_ = std::sqrt(lambda1 / lambda);
        s.beta_ = 0.5 * (1.0 + lambda1 / lambda);
    }
    return s;
}

SchmidtSpectrum parse_spectrum(const std::string &text) {
    std::vector<double> vals;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            comma = text.size();
        }
        std::string tok = text.substr(pos, comma - pos);
        double v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
            throw ValidationError("malformed Schmidt spectrum '" + text +
                                  "': expected comma-separated reals such as 0.6,0.4");
        }
        vals.push_back(v);
        pos = comma + 1;
    }
    return make_spectrum(vals);
}

PureState schmidt_state(const SchmidtSpectrum &s) {
    size_t d = s.dim();
    size_t D = d * d;
    check_size(D, "schmidt_state");
    ComplexVector ket = ComplexVector::Zero(D);
    for (size_t i = 0; i < d; i++) {
        ket(i * d + i) = std::sqrt(s.coeffs()[i]);
    }
    BipartiteOperator rho = BipartiteOperator::projector(d, ket);
    return PureState{s, std::move(ket), std::move(rho)};
}

SchmidtSpectrum tensor_power_spectrum(const SchmidtSpectrum &s, int n) {
    if (n < 1) {
        throw ValidationError("tensor power needs n >= 1");
    }
    size_t d = s.dim();
    size_t len = 1;
    for (int k = 0; k < n; k++) {
        if (len > size_cap() / d) {
            std::ostringstream ss;
            ss << "tensor power spectrum with d^n = " << d << "^" << n << " coefficients exceeds the entry cap";
            throw SizeError(ss.str());
        }
        len *= d;
    }
    std::vector<double> prod{1.0};
    for (int k = 0; k < n; k++) {
        std::vector<double> next;
        next.reserve(prod.size() * d);
        for (double p : prod) {
            for (double c : s.coeffs()) {
                next.push_back(p * c);
            }
        }
        prod = std::move(next);
    }
    return make_spectrum(prod);
}

std::vector<double> schmidt_coefficients(const ComplexVector &ket, size_t d) {
    if (static_cast<size_t>(ket.size()) != d * d) {
        throw ContractError("schmidt_coefficients: ket length is not d^2");
    }
    ComplexMatrix m(d, d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            m(i, j) = ket(i * d + j);
        }
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    std::vector<double> out(d);
    for (size_t i = 0; i < d; i++) {
        double sv = svd.singularValues()(i);
        out[i] = sv * sv;
    }
    return out;
}

PureDecomposition decompose_pure(const BipartiteOperator &rho) {
    EigenSystem es = eig_hermitian(rho.matrix());
    double top = es.max();
    double rest = es.values.head(es.values.size() - 1).cwiseAbs().sum();
    if (std::abs(top - 1.0) > 1e-9 || rest > 1e-9) {
        std::ostringstream ss;
        ss << "expected a pure state, got top eigenvalue " << top << " and residual weight " << rest;
        throw ContractError(ss.str());
    }
    ComplexVector ket = es.top_vector();
    ket.normalize();
    return PureDecomposition{ket, schmidt_coefficients(ket, rho.local_dim())};
}

}  // namespace locc
