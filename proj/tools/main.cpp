// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: every verification and simulation as a subcommand
// with a machine-readable report envelope. Exit codes: 0 pass, 1 assertion
// failure, 2 usage/input error.

#include <array>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ququart/collective.hpp"
#include "ququart/protocols.hpp"
#include "ququart/serialize.hpp"
#include "ququart/session.hpp"
#include "ququart/upb.hpp"

using json = nlohmann::json;
using namespace ququart;

namespace {

constexpr const char* kToolVersion = "ququart " QUQUART_VERSION;

struct Report {
    std::string command;
    json parameters = json::object();
    json results = json::object();
    bool pass = true;
    // main tabular body for csv rendering: header + rows
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<std::string> table_lines;

    json envelope() const {
        return json{{"command", command},
                    {"parameters", parameters},
                    {"results", results},
                    {"pass", pass},
                    {"tool_version", kToolVersion}};
    }
};

void render(const Report& r, const std::string& format) {
    if (format == "json") {
        std::cout << r.envelope().dump(2) << "\n";
    } else if (format == "csv") {
        std::ostringstream os;
        for (std::size_t k = 0; k < r.csv_header.size(); ++k) os << (k ? "," : "") << r.csv_header[k];
        os << "\n";
        for (const auto& row : r.csv_rows) {
            for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
            os << "\n";
        }
        std::cout << os.str();
    } else {
        std::cout << "# " << r.command << " (" << kToolVersion << ")\n";
        for (const auto& line : r.table_lines) std::cout << line << "\n";
        std::cout << (r.pass ? "PASS" : "FAIL") << "\n";
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// --state: preset name or comma-separated re,im pairs in natural-basis order.
StateVector parse_state_spec(const std::string& spec) {
    if (spec == "uniform") return StateVector({4}, {0.5, 0.5, 0.5, 0.5});
    if (spec.rfind("basis", 0) == 0 && spec.size() == 6 && spec[5] >= '0' && spec[5] <= '3')
        return StateVector::basis({4}, spec[5] - '0');
    if (spec.rfind("random:", 0) == 0) {
        std::uint64_t seed = std::stoull(spec.substr(7));
        SeededRng rng(seed);
        std::vector<Amplitude> amps(4);
        for (auto& a : amps)
            a = Amplitude{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
        return StateVector({4}, std::move(amps)).normalized();
    }

    std::vector<double> values;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) values.push_back(std::stod(tok));
    if (values.size() != 8)
        throw InputError("state: expected a preset or 8 comma-separated numbers (re,im per level)");
    std::vector<Amplitude> amps(4);
    for (int k = 0; k < 4; ++k) amps[static_cast<std::size_t>(k)] = Amplitude{values[2 * k], values[2 * k + 1]};
    StateVector v({4}, std::move(amps));
    double n = v.norm();
    if (n <= 0.0) throw InputError("state: zero norm");
    if (std::abs(n - 1.0) > 1e-6)
        std::cerr << "warning: input state norm " << n << " deviates from 1; normalizing\n";
    return v.normalized();
}

BasisLabel parse_label_arg(const std::string& s) {
    auto l = BasisLabel::parse(s);
    if (!l) throw InputError("label: expected one of W0..Z3");
    return *l;
}

struct TrialStats {
    std::array<long, 16> counts{};
    double min_fidelity = 1.0;
};

// Runs fn(t) for t in [0, trials) and aggregates. Per-trial seeds are derived
// from (master seed, t), so splitting across workers cannot change the result.
TrialStats run_trials(int trials, int workers, const std::function<std::pair<int, double>(int)>& fn) {
    auto accumulate = [&](TrialStats& stats, int start, int stride) {
        for (int t = start; t < trials; t += stride) {
            auto [outcome, fidelity] = fn(t);
            ++stats.counts[static_cast<std::size_t>(outcome)];
            stats.min_fidelity = std::min(stats.min_fidelity, fidelity);
        }
    };

    TrialStats total;
    if (workers < 2) {
        accumulate(total, 0, 1);
        return total;
    }
    std::vector<TrialStats> partial(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] { accumulate(partial[static_cast<std::size_t>(w)], w, workers); });
    for (auto& th : pool) th.join();
    for (const auto& p : partial) {
        for (std::size_t k = 0; k < 16; ++k) total.counts[k] += p.counts[k];
        total.min_fidelity = std::min(total.min_fidelity, p.min_fidelity);
    }
    return total;
}

int cmd_verify_basis(std::optional<double> tolerance, const std::string& format) {
    Report r;
    r.command = "verify-basis";
    if (tolerance) r.parameters["tolerance"] = *tolerance;

    double gram_tol = tolerance.value_or(1e-12);
    double completeness_tol = tolerance.value_or(1e-12);
    double schmidt_tol = tolerance.value_or(1e-10);
    double roundtrip_tol = tolerance.value_or(1e-14);

    auto basis = build_basis();

    double gram_dev = 0.0;
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) {
            auto ov = inner_product(basis.states[static_cast<std::size_t>(a)],
                                    basis.states[static_cast<std::size_t>(b)]);
            Amplitude want = a == b ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            gram_dev = std::max(gram_dev, std::abs(ov - want));
        }

    double completeness_dev = 0.0;
    for (int row = 0; row < 16; ++row)
        for (int col = 0; col < 16; ++col) {
            Amplitude s{0.0, 0.0};
            for (const auto& b : basis.states)
                s += b.amps[static_cast<std::size_t>(row)] * std::conj(b.amps[static_cast<std::size_t>(col)]);
            Amplitude want = row == col ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            completeness_dev = std::max(completeness_dev, std::abs(s - want));
        }

    double schmidt_dev = 0.0;
    for (const auto& s : basis.states)
        for (double v : schmidt_singular_values(s, std::array<int, 1>{0}))
            schmidt_dev = std::max(schmidt_dev, std::abs(v - 0.5));

    double roundtrip_dev = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::vector<Amplitude> acc(16, Amplitude{0.0, 0.0});
            for (const auto& t : natural_decomposition(i, j))
                for (std::size_t k = 0; k < 16; ++k)
                    acc[k] += 0.5 * static_cast<double>(t.sign) * basis.state(t.label).amps[k];
            auto want = StateVector::basis({4, 4}, i * 4 + j);
            for (std::size_t k = 0; k < 16; ++k)
                roundtrip_dev = std::max(roundtrip_dev, std::abs(acc[k] - want.amps[k]));
        }

    struct Check {
        const char* name;
        double value;
        double threshold;
    };
    std::array<Check, 4> checks{{{"gram_max_deviation", gram_dev, gram_tol},
                                 {"completeness_max_deviation", completeness_dev, completeness_tol},
                                 {"schmidt_max_deviation", schmidt_dev, schmidt_tol},
                                 {"roundtrip_max_error", roundtrip_dev, roundtrip_tol}}};

    r.csv_header = {"check", "value", "threshold", "pass"};
    for (const auto& c : checks) {
        bool ok = c.value < c.threshold;
        r.pass = r.pass && ok;
        r.results[c.name] = c.value;
        r.results[std::string(c.name) + "_threshold"] = c.threshold;
        r.csv_rows.push_back({c.name, fmt(c.value), fmt(c.threshold), ok ? "true" : "false"});
        r.table_lines.push_back(std::string(c.name) + " = " + fmt(c.value) + " (< " +
                                fmt(c.threshold) + (ok ? ") ok" : ") FAIL"));
    }
    render(r, format);
    return r.pass ? 0 : 1;
}

int cmd_teleport(const std::string& state_spec, const std::string& resource_s, int trials,
                 std::uint64_t seed, bool exact, bool emit_transcript, int parallel,
                 const std::string& format) {
    Report r;
    r.command = "teleport";
    r.parameters = {{"state", state_spec}, {"resource", resource_s}, {"seed", seed}};

    StateVector phi = parse_state_spec(state_spec);
    BasisLabel resource = parse_label_arg(resource_s);

    if (exact || trials <= 0) {
        r.parameters["mode"] = "exact";
        auto branches = teleport_branches(phi, resource);
        json out = json::array();
        r.csv_header = {"outcome", "probability", "fidelity"};
        double min_fid = 1.0;
        for (const auto& br : branches) {
            double fid = state_fidelity(phi.normalized(), br.clara_post);
            min_fid = std::min(min_fid, fid);
            bool ok = std::abs(br.probability - 1.0 / 16) < 1e-12 && fid >= 1.0 - 1e-12;
            r.pass = r.pass && ok;
            out.push_back({{"outcome", br.outcome.str()},
                           {"probability", br.probability},
                           {"fidelity", fid}});
            r.csv_rows.push_back({br.outcome.str(), fmt(br.probability), fmt(fid)});
            r.table_lines.push_back(br.outcome.str() + "  p=" + fmt(br.probability) +
                                    "  fidelity=" + fmt(fid));
        }
        r.results["branches"] = out;
        r.results["min_fidelity"] = min_fid;
    } else {
        r.parameters["mode"] = "sampled";
        r.parameters["trials"] = trials;
        if (emit_transcript)
            r.results["first_transcript"] = to_json(teleport_run(phi, resource, derive_seed(seed, 0)));
        auto stats = run_trials(trials, parallel, [&](int t) {
            auto run = teleport_run(phi, resource, derive_seed(seed, static_cast<std::uint64_t>(t)));
            return std::pair<int, double>{run.outcome.flat(), run.fidelity};
        });
        double p = 1.0 / 16;
        double sigma = std::sqrt(trials * p * (1 - p));
        double lo = trials * p - 5 * sigma, hi = trials * p + 5 * sigma;
        json freq = json::object();
        r.csv_header = {"outcome", "count", "band_low", "band_high", "within_band"};
        for (auto l : all_labels()) {
            long c = stats.counts[static_cast<std::size_t>(l.flat())];
            bool ok = c >= lo && c <= hi;
            r.pass = r.pass && ok;
            freq[l.str()] = c;
            r.csv_rows.push_back({l.str(), std::to_string(c), fmt(lo), fmt(hi), ok ? "true" : "false"});
            r.table_lines.push_back(l.str() + "  count=" + std::to_string(c) + "  band=[" + fmt(lo) +
                                    ", " + fmt(hi) + (ok ? "] ok" : "] FAIL"));
        }
        r.pass = r.pass && stats.min_fidelity >= 1.0 - 1e-12;
        r.results["counts"] = freq;
        r.results["band"] = {lo, hi};
        r.results["min_fidelity"] = stats.min_fidelity;
        r.table_lines.push_back("min_fidelity = " + fmt(stats.min_fidelity));
    }
    render(r, format);
    return r.pass ? 0 : 1;
}

int cmd_swap_table(const std::string& format) {
    Report r;
    r.command = "swap-table";

    auto derived = derive_swap_table();
    auto reference = reference_swap_table();
    auto diff = swap_table_diff(derived, reference);

    json table = json::array();
    r.csv_header = {"outcome", "derived_phase", "derived_result", "reference_phase",
                    "reference_result", "match"};
    for (int k = 0; k < 16; ++k) {
        const auto& d = derived[static_cast<std::size_t>(k)];
        const auto& ref = reference[static_cast<std::size_t>(k)];
        bool match = d.result_14 == ref.result_14 && d.phase == ref.phase;
        table.push_back(to_json(d));
        r.csv_rows.push_back({d.outcome_23.str(), d.phase > 0 ? "+" : "-", d.result_14.str(),
                              ref.phase > 0 ? "+" : "-", ref.result_14.str(),
                              match ? "true" : "false"});
        r.table_lines.push_back(d.outcome_23.str() + " -> " + (d.phase > 0 ? "+" : "-") +
                                d.result_14.str() + "   (reference: " + (ref.phase > 0 ? "+" : "-") +
                                ref.result_14.str() + (match ? ")" : ") DIFFERS"));
        bool structural = std::abs(d.coefficient_magnitude - 0.25) < 1e-12;
        r.pass = r.pass && structural;
    }
    r.results["derived"] = table;
    r.results["diff"] = to_json(diff);
    r.table_lines.push_back("reference duplicates: " +
                            std::to_string(diff.duplicated_reference_results.size()) +
                            ", missing: " + std::to_string(diff.missing_reference_results.size()));
    render(r, format);
    return r.pass ? 0 : 1;
}

int cmd_swap(int trials, std::uint64_t seed, bool exact, bool emit_transcript, int parallel,
             const std::string& format) {
    Report r;
    r.command = "swap";
    r.parameters = {{"seed", seed}};

    auto table = derive_swap_table();
    auto basis = build_basis();
    if (exact || trials <= 0) {
        r.parameters["mode"] = "exact";
        StateVector psi = tensor_product(basis_state(default_resource()), basis_state(default_resource()));
        json out = json::array();
        r.csv_header = {"outcome", "probability", "result", "fidelity"};
        for (auto l : all_labels()) {
            auto proj = project_branch(psi, basis.state(l), std::array<int, 2>{1, 2});
            const auto& entry = table[static_cast<std::size_t>(l.flat())];
            double fid = state_fidelity(basis.state(entry.result_14), proj.remainder);
            bool ok = std::abs(proj.probability - 1.0 / 16) < 1e-12 && fid >= 1.0 - 1e-12;
            r.pass = r.pass && ok;
            out.push_back({{"outcome", l.str()},
                           {"probability", proj.probability},
                           {"result", entry.result_14.str()},
                           {"fidelity", fid}});
            r.csv_rows.push_back({l.str(), fmt(proj.probability), entry.result_14.str(), fmt(fid)});
            r.table_lines.push_back(l.str() + "  p=" + fmt(proj.probability) + "  -> " +
                                    entry.result_14.str() + "  fidelity=" + fmt(fid));
        }
        r.results["branches"] = out;
    } else {
        r.parameters["mode"] = "sampled";
        r.parameters["trials"] = trials;
        if (emit_transcript) r.results["first_transcript"] = to_json(swap_run(derive_seed(seed, 0)));
        auto stats = run_trials(trials, parallel, [&](int t) {
            auto run = swap_run(derive_seed(seed, static_cast<std::uint64_t>(t)));
            return std::pair<int, double>{run.outcome.flat(), run.fidelity};
        });
        json freq = json::object();
        r.csv_header = {"outcome", "count"};
        for (auto l : all_labels()) {
            long c = stats.counts[static_cast<std::size_t>(l.flat())];
            freq[l.str()] = c;
            r.csv_rows.push_back({l.str(), std::to_string(c)});
            r.table_lines.push_back(l.str() + "  count=" + std::to_string(c));
        }
        r.pass = stats.min_fidelity >= 1.0 - 1e-12;
        r.results["counts"] = freq;
        r.results["min_fidelity"] = stats.min_fidelity;
        r.table_lines.push_back("min_fidelity = " + fmt(stats.min_fidelity));
    }
    render(r, format);
    return r.pass ? 0 : 1;
}

int cmd_verify_upb(const std::string& system, int samples, const std::string& format) {
    Report r;
    r.command = "verify-upb";
    r.parameters = {{"system", system}, {"samples", samples}};

    Upb upb = system == "shifts" ? shifts_upb() : tiles_upb();
    auto report = verify_upb(upb);
    long total = 1;
    for (int k = 0; k < upb.parties; ++k) total *= upb.local_dim;
    long complement_dim = total - static_cast<long>(upb.members.size());

    r.results["upb"] = to_json(upb);
    r.results["certificate"] = to_json(report);
    r.results["member_count"] = upb.members.size();
    r.results["complement_dimension"] = complement_dim;

    bool ees_ok = true;
    double min_second = 1.0;
    if (report.passed()) {
        try {
            auto ees = extract_ees(upb, samples);
            for (const auto& v : ees.vectors)
                for (int cut = 0; cut < upb.parties; ++cut) {
                    if (upb.parties == 2 && cut == 1) break;
                    auto sv = schmidt_singular_values(v, std::array<int, 1>{cut});
                    if (sv.size() > 1) min_second = std::min(min_second, sv[1]);
                }
            r.results["ees_dimension"] = ees.vectors.size();
            r.results["ees_min_second_schmidt"] = min_second;
        } catch (const StructureError& e) {
            ees_ok = false;
            r.results["ees_error"] = e.what();
        }
    }

    r.pass = report.passed() && complement_dim == 4 && ees_ok;
    r.csv_header = {"property", "value"};
    r.csv_rows = {{"orthogonal", report.orthogonal ? "true" : "false"},
                  {"max_pairwise_overlap", fmt(report.max_pairwise_overlap)},
                  {"unextendible", report.unextendible ? "true" : "false"},
                  {"assignments_checked", std::to_string(report.assignments_checked)},
                  {"complement_dimension", std::to_string(complement_dim)}};
    for (const auto& row : r.csv_rows) r.table_lines.push_back(row[0] + " = " + row[1]);
    render(r, format);
    return r.pass ? 0 : 1;
}

int cmd_solve_dim(int max_bound, const std::string& format) {
    Report r;
    r.command = "solve-dim";
    r.parameters = {{"max", max_bound}};

    auto solutions = solve_dimension_equation(max_bound, max_bound);
    json out = json::array();
    r.csv_header = {"parties", "local_dim"};
    for (auto [parties, d] : solutions) {
        out.push_back({{"parties", parties}, {"local_dim", d}});
        r.csv_rows.push_back({std::to_string(parties), std::to_string(d)});
        r.table_lines.push_back("parties=" + std::to_string(parties) + " local_dim=" + std::to_string(d));
        // re-evaluate the equation at every returned pair
        long long power = 1;
        for (int k = 0; k < parties; ++k) power *= d;
        r.pass = r.pass && (power - static_cast<long long>(parties) * (d - 1) - 1 == 4);
    }
    r.results["solutions"] = out;
    render(r, format);
    return r.pass ? 0 : 1;
}

int cmd_collective(const std::string& system_s, const std::string& mode,
                   const std::string& state_spec, int trials, std::uint64_t seed, bool exact,
                   bool emit_transcript, int parallel, const std::string& format) {
    Report r;
    r.command = "collective";
    r.parameters = {{"system", system_s}, {"mode", mode}, {"seed", seed}};

    CollectiveSystem system =
        system_s == "3qubit" ? CollectiveSystem::ThreeQubit : CollectiveSystem::TwoQutrit;

    if (mode == "teleport") {
        StateVector phi = parse_state_spec(state_spec);
        r.parameters["state"] = state_spec;
        if (exact || trials <= 0) {
            r.parameters["mode_detail"] = "exact";
            auto branches = collective_teleport_branches(system, phi);
            json out = json::array();
            r.csv_header = {"outcome", "probability", "fidelity", "residual"};
            for (const auto& br : branches) {
                bool ok = br.fidelity >= 1.0 - 1e-10 && br.max_residual < 1e-8 &&
                          std::abs(br.probability - 1.0 / 16) < 1e-12;
                r.pass = r.pass && ok;
                out.push_back({{"outcome", br.outcome.str()},
                               {"probability", br.probability},
                               {"fidelity", br.fidelity},
                               {"residual", br.max_residual}});
                r.csv_rows.push_back(
                    {br.outcome.str(), fmt(br.probability), fmt(br.fidelity), fmt(br.max_residual)});
                r.table_lines.push_back(br.outcome.str() + "  p=" + fmt(br.probability) +
                                        "  fidelity=" + fmt(br.fidelity) +
                                        "  residual=" + fmt(br.max_residual));
            }
            r.results["branches"] = out;
        } else {
            r.parameters["mode_detail"] = "sampled";
            r.parameters["trials"] = trials;
            if (emit_transcript)
                r.results["first_transcript"] =
                    to_json(collective_teleport(system, phi, derive_seed(seed, 0)));
            auto stats = run_trials(trials, parallel, [&](int t) {
                auto run = collective_teleport(system, phi, derive_seed(seed, static_cast<std::uint64_t>(t)));
                return std::pair<int, double>{run.outcome.flat(), run.fidelity};
            });
            json freq = json::object();
            for (auto l : all_labels()) freq[l.str()] = stats.counts[static_cast<std::size_t>(l.flat())];
            r.pass = stats.min_fidelity >= 1.0 - 1e-10;
            r.results["min_fidelity"] = stats.min_fidelity;
            r.results["counts"] = freq;
            r.table_lines.push_back("min_fidelity = " + fmt(stats.min_fidelity));
        }
    } else { // swap
        if (exact || trials <= 0) {
            r.parameters["mode_detail"] = "exact";
            auto branches = collective_swap_branches(system);
            json out = json::array();
            r.csv_header = {"outcome", "probability", "result", "fidelity", "residual"};
            for (const auto& br : branches) {
                bool ok = br.fidelity >= 1.0 - 1e-10 && br.residual < 1e-8 &&
                          std::abs(br.probability - 1.0 / 16) < 1e-12;
                r.pass = r.pass && ok;
                out.push_back({{"outcome", br.outcome.str()},
                               {"probability", br.probability},
                               {"result", br.expected_result.str()},
                               {"phase", br.expected_phase},
                               {"fidelity", br.fidelity},
                               {"residual", br.residual}});
                r.csv_rows.push_back({br.outcome.str(), fmt(br.probability), br.expected_result.str(),
                                      fmt(br.fidelity), fmt(br.residual)});
                r.table_lines.push_back(br.outcome.str() + "  p=" + fmt(br.probability) + "  -> " +
                                        br.expected_result.str() + "  fidelity=" + fmt(br.fidelity));
            }
            r.results["branches"] = out;
        } else {
            r.parameters["mode_detail"] = "sampled";
            r.parameters["trials"] = trials;
            if (emit_transcript)
                r.results["first_transcript"] = to_json(collective_swap(system, derive_seed(seed, 0)));
            auto stats = run_trials(trials, parallel, [&](int t) {
                auto run = collective_swap(system, derive_seed(seed, static_cast<std::uint64_t>(t)));
                return std::pair<int, double>{run.outcome.flat(), run.fidelity};
            });
            r.pass = stats.min_fidelity >= 1.0 - 1e-10;
            r.results["min_fidelity"] = stats.min_fidelity;
            r.table_lines.push_back("min_fidelity = " + fmt(stats.min_fidelity));
        }
    }
    render(r, format);
    return r.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator for four-level teleportation, entanglement swapping,\n"
                 "and their collective translation onto 2x2x2 / 3x3 systems."};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string format = "table";
    app.add_option("--format", format, "Output rendering: json, csv, or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));

    // verify-basis
    auto* vb = app.add_subcommand(
        "verify-basis", "Orthonormality, completeness, Schmidt and inverse-transform checks for "
                        "the 16-state basis. CSV columns: check,value,threshold,pass");
    std::optional<double> vb_tol;
    vb->add_option("--tolerance", vb_tol, "Override every check threshold");

    // teleport
    auto* tp = app.add_subcommand(
        "teleport", "Four-level teleportation, exact branches or sampled trials. CSV columns: "
                    "outcome,probability,fidelity (exact) or "
                    "outcome,count,band_low,band_high,within_band (sampled)");
    std::string tp_state = "uniform";
    std::string tp_resource = "X1";
    int tp_trials = 0;
    std::uint64_t tp_seed = 0;
    bool tp_exact = false;
    bool tp_transcript = false;
    tp->add_option("--state", tp_state,
                   "Input: uniform | basis0..basis3 | random:<seed> | 8 comma-separated re,im values");
    tp->add_option("--resource", tp_resource, "Resource label W0..Z3 (default X1)");
    tp->add_option("--trials", tp_trials, "Sampled trials (0 = exact enumeration)");
    tp->add_option("--seed", tp_seed, "Master seed for sampled mode");
    tp->add_flag("--exact", tp_exact, "Force exact enumeration");
    tp->add_flag("--transcript", tp_transcript, "Include the first run's full transcript (json format)");
    int tp_parallel = 1;
    tp->add_option("--parallel", tp_parallel, "Worker threads for sampled trials (deterministic)");

    // swap-table
    app.add_subcommand("swap-table",
                       "Derived swapping table plus diff against the reference transcription. CSV "
                       "columns: outcome,derived_phase,derived_result,reference_phase,"
                       "reference_result,match");

    // swap
    auto* sw = app.add_subcommand(
        "swap", "Entanglement swapping, exact branches or sampled runs. CSV columns: "
                "outcome,probability,result,fidelity (exact) or outcome,count (sampled)");
    int sw_trials = 0;
    std::uint64_t sw_seed = 0;
    bool sw_exact = false;
    bool sw_transcript = false;
    sw->add_option("--trials", sw_trials, "Sampled runs (0 = exact enumeration)");
    sw->add_option("--seed", sw_seed, "Master seed for sampled mode");
    sw->add_flag("--exact", sw_exact, "Force exact enumeration");
    sw->add_flag("--transcript", sw_transcript, "Include the first run's full transcript (json format)");
    int sw_parallel = 1;
    sw->add_option("--parallel", sw_parallel, "Worker threads for sampled runs (deterministic)");

    // verify-upb
    auto* vu = app.add_subcommand("verify-upb",
                                  "Orthogonality + exhaustive unextendibility certificate. CSV "
                                  "columns: property,value");
    std::string vu_system = "shifts";
    int vu_samples = 1000;
    vu->add_option("--system", vu_system, "shifts (2x2x2) or tiles (3x3)")
        ->check(CLI::IsMember({"shifts", "tiles"}));
    vu->add_option("--samples", vu_samples, "Random combinations for the entanglement check");

    // solve-dim
    auto* sd = app.add_subcommand(
        "solve-dim", "Integer solutions of d^M - M(d-1) - 1 = 4. CSV columns: parties,local_dim");
    int sd_max = 10;
    sd->add_option("--max", sd_max, "Upper bound for both parties and local dimension");

    // collective
    auto* co = app.add_subcommand(
        "collective", "Collective teleportation / swapping on encoded levels. CSV columns: "
                      "outcome,probability,fidelity,residual (teleport) or "
                      "outcome,probability,result,fidelity,residual (swap)");
    std::string co_system = "3qubit";
    std::string co_mode = "teleport";
    std::string co_state = "uniform";
    int co_trials = 0;
    std::uint64_t co_seed = 0;
    bool co_exact = false;
    bool co_transcript = false;
    co->add_option("--system", co_system, "3qubit or 2qutrit")
        ->check(CLI::IsMember({"3qubit", "2qutrit"}));
    co->add_option("--mode", co_mode, "teleport or swap")->check(CLI::IsMember({"teleport", "swap"}));
    co->add_option("--state", co_state, "Logical input for teleport mode");
    co->add_option("--trials", co_trials, "Sampled runs (0 = exact enumeration)");
    co->add_option("--seed", co_seed, "Master seed for sampled mode");
    co->add_flag("--exact", co_exact, "Force exact enumeration");
    co->add_flag("--transcript", co_transcript, "Include the first run's full transcript (json format)");
    int co_parallel = 1;
    co->add_option("--parallel", co_parallel, "Worker threads for sampled runs (deterministic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2, --help/--version exit 0
    }

    try {
        if (vb->parsed()) return cmd_verify_basis(vb_tol, format);
        if (tp->parsed())
            return cmd_teleport(tp_state, tp_resource, tp_trials, tp_seed, tp_exact, tp_transcript,
                                tp_parallel, format);
        if (app.get_subcommand("swap-table")->parsed()) return cmd_swap_table(format);
        if (sw->parsed()) return cmd_swap(sw_trials, sw_seed, sw_exact, sw_transcript, sw_parallel, format);
        if (vu->parsed()) return cmd_verify_upb(vu_system, vu_samples, format);
        if (sd->parsed()) return cmd_solve_dim(sd_max, format);
        if (co->parsed()) return cmd_collective(co_system, co_mode, co_state, co_trials, co_seed,
                                                co_exact, co_transcript, co_parallel, format);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
