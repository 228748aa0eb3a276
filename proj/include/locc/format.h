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

#ifndef LOCC_FORMAT_H
#define LOCC_FORMAT_H

#include <string>

namespace locc {

/// 12 significant digits, shortest general form, '.' decimal point regardless of locale.
/// Infinities print as "inf" / "-inf", NaN as "nan".
std::string format_number(double v, int significant = 12);

}  // namespace locc

#endif
