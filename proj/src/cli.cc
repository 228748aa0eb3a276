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

#include "locc/cli.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "locc/analysis.h"
#include "locc/asymptotics.h"
#include "locc/errors.h"
#include "locc/format.h"
#include "locc/io.h"
#include "locc/measurements.h"
#include "locc/simulator.h"
#include "locc/twirl.h"

namespace locc {

namespace {

struct Options {
    std::string schmidt;
    std::optional<double> lambda;
    std::optional<double> alpha;
    double theta = 0.0;
    std::string measurement = "t-tilde";
    std::string measurement_file;
    std::optional<double> mu;
    std::optional<double> priors;
    std::string sigma;
    std::string sigma_file;
    std::string sigma_out = "sigma_star.json";
    uint64_t shots = 100000;
    uint64_t seed = 1;
    size_t dim = 2;
    int trials = 100;
    int n_max = 50;
    std::string n = "1";
    double fig_alpha = 0.6;
    int grid1 = 101;
    int grid2 = 200;
    std::string file;
    std::string out;
    std::string format;
    bool bits = false;
    bool error_rate = false;
};

std::string csv_field(const std::string &v) {
    if (v.find_first_of(",\"\n") == std::string::npos) {
        return v;
    }
    std::string q = "\"";
    for (char c : v) {
        if (c == '"') {
            q += '"';
        }
        q += c;
    }
    return q + "\"";
}

std::string record_as_csv(const Record &r) {
    std::string header;
    std::string row;
    for (const auto &[k, v] : r.fields()) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += csv_field(k);
        row += csv_field(v);
    }
    return header + "\n" + row + "\n";
}

class Output {
   public:
    Output(const Options &opts, std::ostream &fallback) : fallback_(fallback) {
        if (!opts.out.empty()) {
            file_.open(opts.out);
            if (!file_) {
                throw ValidationError("cannot open output file '" + opts.out + "'");
            }
        }
    }
    std::ostream &stream() {
        return file_.is_open() ? static_cast<std::ostream &>(file_) : fallback_;
    }

   private:
    std::ofstream file_;
    std::ostream &fallback_;
};

RunMetadata metadata(const CLI::App &sub, std::optional<uint64_t> seed) {
    RunMetadata md;
    md.command = sub.get_name();
    md.seed = seed;
    for (const CLI::Option *o : sub.get_options()) {
        if (o->get_lnames().empty() || o->get_lnames()[0] == "help") {
            continue;
        }
        std::string value;
        if (o->count() > 0) {
            const auto &res = o->results();
            for (size_t i = 0; i < res.size(); i++) {
                value += (i ? "," : "") + res[i];
            }
            if (value.empty()) {
                value = "true";
            }
        } else {
            value = o->get_default_str();
        }
        if (!value.empty()) {
            md.params.emplace_back(o->get_lnames()[0], value);
        }
    }
    return md;
}

void emit_record(const Options &opts, std::ostream &fallback, const RunMetadata &md, const Record &body) {
    Output out(opts, fallback);
    Record full = md.as_record();
    full.append(body);
    if (opts.format == "csv") {
        out.stream() << record_as_csv(full);
    } else {
        out.stream() << full.to_text();
    }
}

void require_text_or_csv(const Options &opts, bool grid) {
    if (opts.format.empty()) {
        return;
    }
    if (opts.format != "csv" && opts.format != "text") {
        throw ValidationError("--format must be csv or text");
    }
    if (grid && opts.format != "csv") {
        throw ValidationError("grid outputs are CSV only; drop --format or use --format csv");
    }
}

SchmidtSpectrum require_spectrum(const Options &opts) {
    if (opts.schmidt.empty()) {
        throw ValidationError("this command needs --schmidt (comma-separated Schmidt coefficients, e.g. 0.6,0.4)");
    }
    return parse_spectrum(opts.schmidt);
}

NamedMeasurement measurement_from(const Options &opts, const SchmidtSpectrum &s) {
    if (!opts.measurement_file.empty()) {
        BipartiteOperator op = read_operator_file(opts.measurement_file);
        if (op.local_dim() != s.dim()) {
            throw ValidationError("measurement file has local_dim " + std::to_string(op.local_dim()) +
                                  " but the spectrum has d = " + std::to_string(s.dim()));
        }
        // Kind is only a label for file input; Product skips the T|rho> = |rho> requirement.
        return {MeasurementKind::Product, std::move(op), std::nullopt};
    }
    MeasurementKind kind = parse_measurement_kind(opts.measurement);
    return build_measurement(s, kind, opts.mu);
}

void cmd_bounds(const CLI::App &sub, const Options &opts, std::ostream &out) {
    require_text_or_csv(opts, false);
    SchmidtSpectrum s = require_spectrum(opts);
    NamedMeasurement m = measurement_from(opts, s);
    ErrorReport r = error_report(s, opts.theta, m);
    if (opts.priors) {
        r.pi0 = *opts.priors;
        r.prior_weighted = prior_weighted_worst_case(m.op, schmidt_state(s).density, opts.theta, *opts.priors);
    }
    emit_record(opts, out, metadata(sub, std::nullopt), to_record(r));
}

void cmd_adversary(const CLI::App &sub, const Options &opts, std::ostream &out) {
    require_text_or_csv(opts, false);
    SchmidtSpectrum s = require_spectrum(opts);
    NamedMeasurement m = measurement_from(opts, s);
    PureState rho = schmidt_state(s);
    AdversaryResult adv = worst_case_value(m.op, rho.density, opts.theta);
    write_operator_file(opts.sigma_out, adv.sigma_star);
    Record body = to_record(adv);
    body.add("sigma_overlap", adv.sigma_star.expectation(rho.density).real());
    body.add("sigma_acceptance", m.op.expectation(adv.sigma_star).real());
    body.add("sigma_file", opts.sigma_out);
    emit_record(opts, out, metadata(sub, std::nullopt), body);
}

void cmd_twirl_check(const CLI::App &sub, const Options &opts, std::ostream &out) {
    require_text_or_csv(opts, false);
    if (opts.dim < 2) {
        throw ValidationError("--dim must be at least 2");
    }
    if (opts.trials < 1) {
        throw ValidationError("--trials must be at least 1");
    }
    double worst = 0;
    double worst_idem = 0;
    double worst_trace = 0;
    for (int i = 0; i < opts.trials; i++) {
        BipartiteOperator t = random_hermitian(opts.dim, opts.seed + static_cast<uint64_t>(i));
        BipartiteOperator a = twirl_entrywise(t);
        BipartiteOperator b = twirl_discrete(t);
        worst = std::max(worst, max_entry_diff(a.matrix(), b.matrix()));
        worst_idem = std::max(worst_idem, max_entry_diff(twirl_entrywise(a).matrix(), a.matrix()));
        worst_trace = std::max(worst_trace, std::abs(a.trace() - t.trace()));
    }
    Record body;
    body.add_count("prime", twirl_prime(opts.dim));
    body.add("max_discrepancy", worst);
    body.add("max_idempotence_error", worst_idem);
    body.add("max_trace_error", worst_trace);
    bool ok = worst <= 1e-10;
    body.add("verdict", std::string(ok ? "PASS" : "FAIL"));
    emit_record(opts, out, metadata(sub, opts.seed), body);
    if (!ok) {
        throw NumericalError("twirl-check: discrete and entrywise twirls differ by " + format_number(worst));
    }
}

void cmd_simulate(const CLI::App &sub, const Options &opts, std::ostream &out) {
    require_text_or_csv(opts, false);
    SchmidtSpectrum s = require_spectrum(opts);
    MeasurementKind kind = parse_measurement_kind(opts.measurement);
    BipartiteOperator sigma = BipartiteOperator::zero(s.dim());
    if (!opts.sigma_file.empty()) {
        sigma = read_operator_file(opts.sigma_file);
    } else {
        std::string family = opts.sigma.empty() ? "orthogonal-uniform" : opts.sigma;
        std::optional<NamedMeasurement> m;
        if (family == "worst-case") {
            m = build_measurement(s, kind, opts.mu);
        }
        sigma = sigma_family(family, s, m, opts.theta);
    }
    ShotConfig cfg{kind, s, sigma, opts.shots, opts.seed, opts.mu};
    SimResult r = simulate(cfg);
    Record body = to_record(r);
    if (opts.error_rate) {
        body.add("error_rate_estimate", estimate_error_rate(cfg, opts.theta));
    }
    emit_record(opts, out, metadata(sub, opts.seed), body);
}

void cmd_asymptotic(const CLI::App &sub, const Options &opts, std::ostream &out) {
    require_text_or_csv(opts, true);
    double lambda = 0;
    double alpha = 0;
    if (!opts.schmidt.empty()) {
        if (opts.lambda || opts.alpha) {
            throw ValidationError("give either --schmidt or --lambda/--alpha, not both");
        }
        SchmidtSpectrum s = parse_spectrum(opts.schmidt);
        lambda = s.lambda();
        alpha = s.alpha();
    } else if (opts.lambda) {
        if (!opts.alpha) {
            throw ValidationError("the lower-bound column depends on alpha: pass --alpha with --lambda, or use --schmidt");
        }
        lambda = *opts.lambda;
        alpha = *opts.alpha;
    } else {
        throw ValidationError("asymptotic needs --schmidt or --lambda with --alpha");
    }
    RateTable t = rate_table(lambda, alpha, opts.theta, opts.n_max);
    Output o(opts, out);
    o.stream() << metadata(sub, std::nullopt).as_csv_comments();
    write_rate_table_csv(o.stream(), t, opts.bits);
}

void cmd_chernoff(const CLI::App &sub, const Options &opts, std::ostream &out) {
    require_text_or_csv(opts, false);
    double lambda = 0;
    if (opts.lambda) {
        lambda = *opts.lambda;
    } else if (!opts.schmidt.empty()) {
        lambda = parse_spectrum(opts.schmidt).lambda();
    } else {
        throw ValidationError("chernoff needs --lambda (or --schmidt)");
    }
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw ValidationError("--lambda must lie in (0, 1]");
    }
    ChernoffResult c = classical_chernoff({lambda, 1.0 - lambda}, {1.0 - lambda, lambda});
    VerdictWithMargin v = counterexample_check(lambda);
    if (opts.bits) {
        double k = 1.0 / std::numbers::ln2;
        c.exponent *= k;
        v.lhs *= k;
        v.rhs *= k;
        v.margin *= k;
    }
    Record body = to_record(c);
    body.add("units", std::string(opts.bits ? "bits" : "nats"));
    body.append(to_record(v, "counterexample"));
    emit_record(opts, out, metadata(sub, std::nullopt), body);
}

void cmd_figure1(const CLI::App &sub, const Options &opts, std::ostream &out) {
    require_text_or_csv(opts, true);
    auto rows = figure1_data(opts.dim, opts.fig_alpha, opts.grid1);
    Output o(opts, out);
    o.stream() << metadata(sub, std::nullopt).as_csv_comments();
    write_figure1_csv(o.stream(), rows);
}

void cmd_figure2(const CLI::App &sub, const Options &opts, std::ostream &out) {
    require_text_or_csv(opts, true);
    std::optional<int> n;
    if (opts.n != "inf") {
        try {
            size_t used = 0;
            n = std::stoi(opts.n, &used);
            if (used != opts.n.size()) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception &) {
            throw ValidationError("--n must be a positive integer or 'inf', got '" + opts.n + "'");
        }
    }
    auto rows = figure2_data(n, opts.grid2);
    Output o(opts, out);
    o.stream() << metadata(sub, std::nullopt).as_csv_comments();
    write_figure2_csv(o.stream(), rows);
}

bool cmd_validate(const CLI::App &sub, const Options &opts, std::ostream &out) {
    require_text_or_csv(opts, false);
    if (opts.file.empty()) {
        throw ValidationError("validate needs --file");
    }
    BipartiteOperator t = read_operator_file(opts.file);
    PovmVerdict pv = validate_povm_element(t);
    Record body;
    body.add_count("local_dim", t.local_dim());
    body.append(to_record(pv));
    if (!opts.schmidt.empty()) {
        SchmidtSpectrum s = parse_spectrum(opts.schmidt);
        if (s.dim() != t.local_dim()) {
            throw ValidationError("--schmidt dimension does not match the operator's local_dim");
        }
        PureState rho = schmidt_state(s);
        double err = (t.matrix() * rho.ket - rho.ket).cwiseAbs().maxCoeff();
        body.add("fixes_rho", err <= 1e-10);
        if (pv.pass && pv.ppt) {
            body.append(to_record(verify_lemma1(t, rho.density), "lemma1"));
        }
    }
    emit_record(opts, out, metadata(sub, std::nullopt), body);
    return pv.pass;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Detecting a known bipartite pure state with LOCC measurements: bounds, adversaries, "
                 "asymptotic rates and protocol simulation."};
    app.name(args.empty() ? "locc" : args[0]);
    app.set_version_flag("--version", std::string(kToolkitName) + " " + kToolkitVersion);
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    Options o;

    auto add_out = [&](CLI::App *s) {
        s->add_option("--out", o.out, "Write output to this file instead of stdout");
        s->add_option("--format", o.format, "csv or text");
    };
    auto add_spectrum = [&](CLI::App *s) {
        s->add_option("--schmidt", o.schmidt, "Schmidt coefficients, e.g. 0.6,0.4");
    };
    auto add_measurement = [&](CLI::App *s) {
        s->add_option("--measurement", o.measurement, "q0, q, r, t-mu, t-tilde, t-tilde2, product, helstrom");
        s->add_option("--mu", o.mu, "Mixing weight on R (t-mu)");
    };

    CLI::App *bounds = app.add_subcommand("bounds", "Worst-case error of a measurement and every bound");
    add_spectrum(bounds);
    bounds->add_option("--theta", o.theta, "Overlap bound Tr rho sigma <= theta");
    add_measurement(bounds);
    bounds->add_option("--measurement-file", o.measurement_file, "Operator file for T");
    bounds->add_option("--priors", o.priors, "Prior probability pi0 of rho");
    add_out(bounds);

    CLI::App *adversary = app.add_subcommand("adversary", "Worst-case alternative state for a measurement");
    add_spectrum(adversary);
    adversary->add_option("--theta", o.theta, "Overlap bound");
    add_measurement(adversary);
    adversary->add_option("--measurement-file", o.measurement_file, "Operator file for T");
    adversary->add_option("--sigma-out", o.sigma_out, "Where to write sigma*");
    add_out(adversary);

    CLI::App *twirl = app.add_subcommand("twirl-check", "Compare the discrete and entrywise twirls");
    twirl->add_option("--dim", o.dim, "Local dimension d");
    twirl->add_option("--trials", o.trials, "Random hermitian operators to test");
    twirl->add_option("--seed", o.seed, "Root seed");
    add_out(twirl);

    CLI::App *sim = app.add_subcommand("simulate", "Shot-by-shot simulation of the LOCC protocol");
    add_spectrum(sim);
    add_measurement(sim);
    sim->add_option("--sigma", o.sigma, "orthogonal-uniform, worst-case, rho or basis:i,j");
    sim->add_option("--sigma-file", o.sigma_file, "Operator file for the prepared state");
    sim->add_option("--theta", o.theta, "Overlap bound (worst-case family and --error-rate)");
    sim->add_option("--shots", o.shots, "Number of shots");
    sim->add_option("--seed", o.seed, "Root seed");
    sim->add_flag("--error-rate", o.error_rate, "Also estimate the two-sided error rate");
    add_out(sim);

    CLI::App *asym = app.add_subcommand("asymptotic", "Multi-copy bounds and rates (CSV)");
    add_spectrum(asym);
    asym->add_option("--lambda", o.lambda, "Largest Schmidt coefficient");
    asym->add_option("--alpha", o.alpha, "sqrt(lambda_1 / lambda)");
    asym->add_option("--theta", o.theta, "Per-copy overlap");
    asym->add_option("--n-max", o.n_max, "Largest number of copies");
    asym->add_flag("--bits", o.bits, "Rates in bits instead of nats");
    add_out(asym);

    CLI::App *chern = app.add_subcommand("chernoff", "Product-measurement Chernoff exponent and counterexample check");
    add_spectrum(chern);
    chern->add_option("--lambda", o.lambda, "Largest Schmidt coefficient");
    chern->add_flag("--bits", o.bits, "Exponents in bits instead of nats");
    add_out(chern);

    CLI::App *fig1 = app.add_subcommand("figure1", "Single-copy bounds against lambda (CSV)");
    fig1->add_option("--dim", o.dim, "Local dimension d");
    fig1->add_option("--alpha", o.fig_alpha, "Fixed alpha");
    fig1->add_option("--grid", o.grid1, "Number of lambda points");
    add_out(fig1);

    CLI::App *fig2 = app.add_subcommand("figure2", "Level regions of the n-copy upper bound (CSV)");
    fig2->add_option("--n", o.n, "Number of copies or 'inf'");
    fig2->add_option("--grid", o.grid2, "Points per axis");
    add_out(fig2);

    CLI::App *validate = app.add_subcommand("validate", "POVM and PPT checks for an operator file");
    validate->add_option("--file", o.file, "Operator file");
    add_spectrum(validate);
    add_out(validate);

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    if (argv.empty()) {
        argv.push_back("locc");
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << kToolkitName << " " << kToolkitVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << " (run with --help for usage)\n";
        return kExitValidation;
    }

    try {
        if (bounds->parsed()) {
            cmd_bounds(*bounds, o, out);
        } else if (adversary->parsed()) {
            cmd_adversary(*adversary, o, out);
        } else if (twirl->parsed()) {
            cmd_twirl_check(*twirl, o, out);
        } else if (sim->parsed()) {
            cmd_simulate(*sim, o, out);
        } else if (asym->parsed()) {
            cmd_asymptotic(*asym, o, out);
        } else if (chern->parsed()) {
            cmd_chernoff(*chern, o, out);
        } else if (fig1->parsed()) {
            cmd_figure1(*fig1, o, out);
        } else if (fig2->parsed()) {
            cmd_figure2(*fig2, o, out);
        } else if (validate->parsed()) {
            if (!cmd_validate(*validate, o, out)) {
                err << "error: operator is not a valid POVM element\n";
                return kExitValidation;
            }
        }
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ContractError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace locc
