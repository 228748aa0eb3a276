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

#ifndef LOCC_ERRORS_H
#define LOCC_ERRORS_H

#include <stdexcept>
#include <string>

namespace locc {

/// Bad user input: malformed spectra, out-of-range parameters, unreadable files.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (non-hermitian input, non-PPT operator, ...).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Requested matrix realization exceeds the configured entry cap.
struct SizeError : ValidationError {
    using ValidationError::ValidationError;
};

/// An internal cross-check failed (primal-dual gap, closed form mismatch, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace locc

#endif
