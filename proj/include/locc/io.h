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

#ifndef LOCC_IO_H
#define LOCC_IO_H

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "locc/analysis.h"
#include "locc/asymptotics.h"
#include "locc/operators.h"
#include "locc/simulator.h"

namespace locc {

inline constexpr const char *kToolkitName = "locc-detect";
inline constexpr const char *kToolkitVersion = "0.1.0";

// Operator files are JSON: {"local_dim": d, "entries": [[re, im], ...]} with
// the d^4 entries row-major. Doubles are written in shortest round-trip form,
// so write -> read is bit-exact.

nlohmann::json operator_to_json(const BipartiteOperator &op);
/// Throws ValidationError describing what is wrong with the document.
BipartiteOperator operator_from_json(const nlohmann::json &doc);
void write_operator_file(const std::string &path, const BipartiteOperator &op);
BipartiteOperator read_operator_file(const std::string &path);

/// Ordered "key: value" document. Numbers use 12 significant digits.
class Record {
   public:
    Record &add(const std::string &key, const std::string &value);
    Record &add(const std::string &key, double value);
    Record &add(const std::string &key, bool value);
    Record &add_count(const std::string &key, uint64_t value);
    Record &append(const Record &other);

    const std::vector<std::pair<std::string, std::string>> &fields() const {
        return fields_;
    }
    /// Value for `key`, if present.
    std::optional<std::string> get(const std::string &key) const;
    std::string to_text() const;

   private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

/// Parses the output of Record::to_text (blank lines and '#' lines skipped).
Record parse_record(const std::string &text);

/// Toolkit name/version, command, seed and a parameter echo.
struct RunMetadata {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::optional<uint64_t> seed;

    Record as_record() const;
    /// Same content as '#'-prefixed comment lines, for CSV output.
    std::string as_csv_comments() const;
};

Record to_record(const ErrorReport &r);
Record to_record(const AdversaryResult &r);
Record to_record(const SimResult &r);
Record to_record(const ChernoffResult &r);
Record to_record(const VerdictWithMargin &v, const std::string &prefix);
Record to_record(const PovmVerdict &v);

/// Rates (and the limit) are divided by ln 2 when `bits` is set.
void write_rate_table_csv(std::ostream &out, const RateTable &table, bool bits);
void write_figure1_csv(std::ostream &out, const std::vector<Figure1Row> &rows);
void write_figure2_csv(std::ostream &out, const std::vector<Figure2Row> &rows);

}  // namespace locc

#endif
