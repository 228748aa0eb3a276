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

#ifndef LOCC_SIMULATOR_H
#define LOCC_SIMULATOR_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locc/measurements.h"
#include "locc/operators.h"
#include "locc/states.h"

namespace locc {

struct ShotConfig {
    MeasurementKind measurement;
    SchmidtSpectrum spectrum;
    /// The state actually prepared.
    BipartiteOperator sigma;
    uint64_t shots;
    uint64_t seed;
    /// Only for t-mu.
    std::optional<double> mu;
};

struct SimResult {
    uint64_t accepts;
    uint64_t shots;
    double estimate;
    /// Tr T sigma.
    double analytic;
    /// 4 sqrt(analytic (1 - analytic) / N).
    double ci_halfwidth;
};

/// The one-way protocol for a measurement, with every Born-rule distribution it
/// can need precomputed from sigma. Shot `i` draws from its own stream
/// SplitMix64::stream(seed, i), so any partition of the shot range into
/// batches reproduces the serial tally.
class ShotPlan {
   public:
    /// Throws ValidationError for measurements without a local protocol
    /// (helstrom) and ContractError if sigma is not a density matrix.
    explicit ShotPlan(const ShotConfig &config);

    /// Whether shot `index` accepts rho.
    bool shot(uint64_t index) const;
    /// Accepts over shots [begin, end).
    uint64_t count_accepts(uint64_t begin, uint64_t end) const;

    double analytic() const {
        return analytic_;
    }

   private:
    struct FourierTable {
        /// P(Alice outcome j), one row of d entries per twirl element (k, l).
        std::vector<std::vector<double>> alice;
        /// P(Bob accepts | j) per twirl element.
        std::vector<std::vector<double>> accept;
    };

    FourierTable fourier_table(const ComplexMatrix &sigma, bool twirled) const;

    size_t d_;
    uint64_t seed_;
    uint64_t p_ = 1;
    /// Probability of the R branch.
    double r_weight_ = 0;
    bool uses_q_ = false;
    bool twirled_ = false;
    bool role_swap_ = false;
    bool product_ = false;
    /// Joint Schmidt-basis outcome distribution, flat index a*d + b.
    std::vector<double> joint_;
    std::vector<ComplexVector> bob_targets_;
    FourierTable direct_;
    FourierTable swapped_;
    double analytic_ = 0;
};

/// Shot-by-shot run of the LOCC protocol for config.measurement.
SimResult simulate(const ShotConfig &config);

/// 1/2 ((1 - estimate under rho) + estimate under sigma), with the two runs on
/// independent streams derived from config.seed. ValidationError if Tr rho sigma > theta.
double estimate_error_rate(const ShotConfig &config, double theta);

/// Named alternative states: `orthogonal-uniform` ((I - rho)/(d^2 - 1)),
/// `rho`, `basis:i,j` (|i (x) j><i (x) j|) and `worst-case` (the adversary for
/// `measurement` at overlap theta).
BipartiteOperator sigma_family(const std::string &spec, const SchmidtSpectrum &s,
                               const std::optional<NamedMeasurement> &measurement = std::nullopt,
                               double theta = 0.0);

}  // namespace locc

#endif
