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

#include "locc/io.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "locc/errors.h"
#include "locc/format.h"
#include "locc/rng.h"

namespace locc {

nlohmann::json operator_to_json(const BipartiteOperator &op) {
    nlohmann::json entries = nlohmann::json::array();
    const ComplexMatrix &m = op.matrix();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            entries.push_back({m(r, c).real(), m(r, c).imag()});
        }
    }
    return {{"local_dim", op.local_dim()}, {"entries", std::move(entries)}};
}

BipartiteOperator operator_from_json(const nlohmann::json &doc) {
    if (!doc.is_object() || !doc.contains("local_dim") || !doc.contains("entries")) {
        throw ValidationError("operator document needs fields 'local_dim' and 'entries'");
    }
    if (!doc["local_dim"].is_number_integer() || doc["local_dim"].get<int64_t>() < 2) {
        throw ValidationError("operator 'local_dim' must be an integer >= 2");
    }
    auto d = static_cast<size_t>(doc["local_dim"].get<int64_t>());
    size_t D = d * d;
    check_size(D, "operator file");
    const auto &entries = doc["entries"];
    if (!entries.is_array() || entries.size() != D * D) {
        std::ostringstream ss;
        ss << "operator 'entries' must be an array of " << D * D << " [re, im] pairs for local_dim " << d;
        throw ValidationError(ss.str());
    }
    ComplexMatrix m(D, D);
    for (size_t k = 0; k < D * D; k++) {
        const auto &e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ValidationError("operator entry " + std::to_string(k) + " is not a [re, im] pair");
        }
        m(k / D, k % D) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    try {
        return BipartiteOperator(d, std::move(m));
    } catch (const ContractError &ex) {
        throw ValidationError(ex.what());
    }
}

void write_operator_file(const std::string &path, const BipartiteOperator &op) {
    std::ofstream f(path);
    if (!f) {
        throw ValidationError("cannot open '" + path + "' for writing");
    }
    f << operator_to_json(op).dump() << '\n';
    if (!f) {
        throw ValidationError("failed writing '" + path + "'");
    }
}

BipartiteOperator read_operator_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ValidationError("cannot open operator file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        f >> doc;
    } catch (const nlohmann::json::exception &ex) {
        throw ValidationError("operator file '" + path + "' is not valid JSON: " + ex.what());
    }
    return operator_from_json(doc);
}

Record &Record::add(const std::string &key, const std::string &value) {
    fields_.emplace_back(key, value);
    return *this;
}

Record &Record::add(const std::string &key, double value) {
    return add(key, format_number(value));
}

Record &Record::add(const std::string &key, bool value) {
    return add(key, std::string(value ? "true" : "false"));
}

Record &Record::add_count(const std::string &key, uint64_t value) {
    return add(key, std::to_string(value));
}

Record &Record::append(const Record &other) {
    fields_.insert(fields_.end(), other.fields_.begin(), other.fields_.end());
    return *this;
}

std::optional<std::string> Record::get(const std::string &key) const {
    for (const auto &[k, v] : fields_) {
        if (k == key) {
            return v;
        }
    }
    return std::nullopt;
}

std::string Record::to_text() const {
    std::string out;
    for (const auto &[k, v] : fields_) {
        out += k;
        out += ": ";
        out += v;
        out += '\n';
    }
    return out;
}

Record parse_record(const std::string &text) {
    Record r;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        size_t sep = line.find(": ");
        if (sep == std::string::npos) {
            throw ValidationError("malformed record line '" + line + "'");
        }
        r.add(line.substr(0, sep), line.substr(sep + 2));
    }
    return r;
}

Record RunMetadata::as_record() const {
    Record r;
    r.add("toolkit", std::string(kToolkitName) + " " + kToolkitVersion);
    r.add("command", command);
    if (seed) {
        r.add_count("seed", *seed);
        r.add("rng", std::string(SplitMix64::kAlgorithm));
    }
    for (const auto &[k, v] : params) {
        r.add("param." + k, v);
    }
    return r;
}

std::string RunMetadata::as_csv_comments() const {
    std::string out;
    Record r = as_record();
    for (const auto &[k, v] : r.fields()) {
        out += "# " + k + ": " + v + "\n";
    }
    return out;
}

Record to_record(const ErrorReport &r) {
    Record out;
    out.add("measurement", r.measurement);
    out.add("theta", r.theta);
    out.add("lambda", r.lambda);
    out.add("alpha", r.alpha);
    out.add("beta", r.beta);
    out.add("helstrom", r.helstrom);
    out.add("accept_rho", r.accept_rho);
    out.add("worst_case_value", r.worst_case_value);
    out.add("p_err", r.p_err);
    out.add("upper_1way", r.upper_1way);
    out.add("upper_2way", r.upper_2way);
    out.add("lower_thm2", r.lower_thm2);
    out.add("lower_simple", r.lower_simple);
    out.add("active_lower", r.active_lower);
    out.add("max_entangled_value", r.max_entangled_value ? format_number(*r.max_entangled_value) : "NA");
    if (r.pi0) {
        out.add("pi0", *r.pi0);
        out.add("prior_weighted", *r.prior_weighted);
    }
    return out;
}

Record to_record(const AdversaryResult &r) {
    Record out;
    out.add("value", r.value);
    out.add("dual_mu", r.dual_mu);
    out.add("sigma_trace", r.sigma_star.trace().real());
    return out;
}

Record to_record(const SimResult &r) {
    Record out;
    out.add_count("shots", r.shots);
    out.add_count("accepts", r.accepts);
    out.add("estimate", r.estimate);
    out.add("analytic", r.analytic);
    out.add("ci_halfwidth", r.ci_halfwidth);
    out.add("within_ci", std::abs(r.estimate - r.analytic) <= r.ci_halfwidth);
    return out;
}

Record to_record(const ChernoffResult &r) {
    Record out;
    out.add("p", format_number(r.p[0]) + "," + format_number(r.p[1]));
    out.add("q", format_number(r.q[0]) + "," + format_number(r.q[1]));
    out.add("s_star", r.s_star);
    out.add("exponent", r.exponent);
    out.add("infinite", r.infinite);
    return out;
}

Record to_record(const VerdictWithMargin &v, const std::string &prefix) {
    Record out;
    out.add(prefix + ".applicable", v.applicable);
    out.add(prefix + ".verdict", std::string(!v.applicable ? "NA" : v.pass ? "PASS" : "FAIL"));
    out.add(prefix + ".lhs", v.lhs);
    out.add(prefix + ".rhs", v.rhs);
    out.add(prefix + ".margin", v.margin);
    out.add(prefix + ".detail", v.detail);
    return out;
}

Record to_record(const PovmVerdict &v) {
    Record out;
    out.add("povm", std::string(v.pass ? "PASS" : "FAIL"));
    out.add("min_eigenvalue", v.min_eigenvalue);
    out.add("max_eigenvalue", v.max_eigenvalue);
    out.add("ppt", v.ppt);
    out.add("pt_min_eigenvalue", v.pt_min_eigenvalue);
    return out;
}

void write_rate_table_csv(std::ostream &out, const RateTable &table, bool bits) {
    double scale = bits ? 1.0 / std::numbers::ln2 : 1.0;
    auto opt = [](const std::optional<double> &v, double k) { return v ? format_number(*v * k) : "NA"; };
    out << "lambda,theta,n,upper_bound,lower_bound,upper_rate,lower_rate,limit\n";
    for (const RateRow &row : table.rows) {
        out << format_number(table.lambda) << ',' << format_number(table.theta) << ',' << row.n << ','
            << format_number(row.upper_bound) << ',' << opt(row.lower_bound, 1.0) << ','
            << format_number(row.upper_rate * scale) << ',' << opt(row.lower_rate, scale) << ','
            << format_number(table.limit * scale) << '\n';
    }
}

void write_figure1_csv(std::ostream &out, const std::vector<Figure1Row> &rows) {
    out << "lambda,value_upper,value_lower_thm2,value_lower_simple\n";
    for (const Figure1Row &r : rows) {
        out << format_number(r.lambda) << ',' << format_number(r.value_upper) << ','
            << format_number(r.value_lower_thm2) << ',' << format_number(r.value_lower_simple) << '\n';
    }
}

void write_figure2_csv(std::ostream &out, const std::vector<Figure2Row> &rows) {
    out << "lambda,theta,value,level_01,level_02,level_03,level_04,level_05\n";
    for (const Figure2Row &r : rows) {
        out << format_number(r.lambda) << ',' << format_number(r.theta) << ',' << format_number(r.value);
        for (bool b : r.inside) {
            out << ',' << (b ? 1 : 0);
        }
        out << '\n';
    }
}

}  // namespace locc
