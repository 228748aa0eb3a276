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

#ifndef LOCC_STATES_H
#define LOCC_STATES_H

#include <span>
#include <string>
#include <vector>

#include "locc/operators.h"

namespace locc {

/// Schmidt coefficients in descending order. lambda is the largest; alpha and
/// beta are defined by lambda_1 = lambda * alpha^2 = lambda * (2 beta - 1).
class SchmidtSpectrum {
   public:
    const std::vector<double> &coeffs() const {
        return coeffs_;
    }
    size_t dim() const {
        return coeffs_.size();
    }
    double lambda() const {
        return coeffs_[0];
    }
    double alpha() const {
        return alpha_;
    }
    double beta() const {
        return beta_;
    }
    /// lambda * beta, the mean of the two largest coefficients.
    double lambda_beta() const {
        return lambda() * beta_;
    }
    bool is_uniform(double tol = 1e-12) const;

    std::string to_string() const;

   private:
    friend SchmidtSpectrum make_spectrum(std::span<const double> raw, size_t d);
    std::vector<double> coeffs_;
    double alpha_ = 0;
    double beta_ = 0.5;
};

/// Validates, clamps tiny negatives, sorts descending and renormalizes.
/// Throws ValidationError on wrong length, entries below -1e-12, or a sum
/// more than 1e-9 away from 1.
SchmidtSpectrum make_spectrum(std::span<const double> raw, size_t d);
inline SchmidtSpectrum make_spectrum(std::span<const double> raw) {
    return make_spectrum(raw, raw.size());
}
inline SchmidtSpectrum make_spectrum(std::initializer_list<double> raw) {
    return make_spectrum(std::span<const double>(raw.begin(), raw.size()));
}

/// Parses "0.6,0.4".
SchmidtSpectrum parse_spectrum(const std::string &text);

struct PureState {
    SchmidtSpectrum spectrum;
    ComplexVector ket;
    BipartiteOperator density;

    size_t local_dim() const {
        return spectrum.dim();
    }
};

/// sum_i sqrt(lambda_i) |i (x) i>.
PureState schmidt_state(const SchmidtSpectrum &s);

/// Spectrum of the n-fold tensor power: all d^n products, descending.
/// Throws SizeError when d^n exceeds the entry cap.
SchmidtSpectrum tensor_power_spectrum(const SchmidtSpectrum &s, int n);

/// Schmidt coefficients (descending) of a pure bipartite ket of length d^2.
std::vector<double> schmidt_coefficients(const ComplexVector &ket, size_t d);

/// The unit ket of a rank-one density operator and its Schmidt coefficients.
/// Throws ContractError if `rho` is not a pure state to 1e-9.
struct PureDecomposition {
    ComplexVector ket;
    std::vector<double> coeffs;
};
PureDecomposition decompose_pure(const BipartiteOperator &rho);

}  // namespace locc

#endif
