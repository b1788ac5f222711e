#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cocoasim/breakeven.hpp"
#include "cocoasim/config.hpp"
#include "cocoasim/core.hpp"
#include "cocoasim/income.hpp"
#include "cocoasim/market.hpp"
#include "cocoasim/replicate.hpp"
#include "cocoasim/report.hpp"
#include "cocoasim/trials.hpp"
#include "cocoasim/winwin.hpp"

namespace cocoasim::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_validation = 3,
    exit_tolerance = 4,
};

struct CommonOpts {
    std::string profiles_path;
    std::string config_path;
    std::string out_dir;
    std::string format = "both"; ///< csv, txt, or both
};

namespace detail {

inline void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--profiles", opts.profiles_path, "country-profile CSV (default: bundled dataset)");
    cmd->add_option("--config", opts.config_path, "JSON config overriding bundled defaults");
    cmd->add_option("--out", opts.out_dir, "directory for report files");
    cmd->add_option("--format", opts.format, "report format: csv, txt, or both")
        ->check(CLI::IsMember({"csv", "txt", "both"}));
}

struct Inputs {
    std::vector<CountryProfile> profiles;
    Config config;
};

inline Inputs load_inputs(const CommonOpts& opts) {
    Inputs inputs;
    inputs.config = opts.config_path.empty() ? Config{} : load_config_file(opts.config_path);
    inputs.profiles =
        opts.profiles_path.empty() ? bundled_profiles() : load_profiles(opts.profiles_path);
    return inputs;
}

inline void write_table(const report::Table& table, const std::string& dir, const std::string& stem,
                        const std::string& format) {
    std::filesystem::create_directories(dir);
    if (format == "csv" || format == "both") {
        std::ofstream file(dir + "/" + stem + ".csv");
        csv::write(file, table.to_csv());
    }
    if (format == "txt" || format == "both") {
        std::ofstream file(dir + "/" + stem + ".txt");
        table.render_text(file);
    }
}

inline void write_target(const replicate::TargetReport& rep, const CommonOpts& opts,
                         std::ostream& out) {
    if (!opts.out_dir.empty()) {
        write_table(rep.primary_table(), opts.out_dir, rep.name, opts.format);
        if (!rep.dataset.columns.empty() && !rep.checks.empty()) {
            write_table(report::checks_table(rep.checks), opts.out_dir, rep.name + "_checks",
                        opts.format);
        }
    }
    std::size_t documented = 0;
    for (const auto& c : rep.checks) {
        if (c.expected_divergence && c.published && !c.within_tolerance()) ++documented;
    }
    out << rep.name << ": " << rep.checks.size() << " checks, " << rep.unexpected_deviations()
        << " unexpected deviations, " << documented << " documented divergences\n";
    for (const auto& c : rep.checks) {
        const std::string status = c.status();
        if (status != "DEVIATION" && status != "flagged") continue;
        out << "  [" << status << "] " << c.label << ": computed " << report::format_value(c.computed)
            << " vs published " << report::format_value(*c.published);
        if (auto dev = c.deviation()) {
            out << " (deviation " << report::format_value(c.kind == report::ToleranceKind::relative
                                                              ? *dev * 100.0
                                                              : *dev)
                << (c.kind == report::ToleranceKind::relative ? "%" : "") << ")";
        }
        if (!c.note.empty()) out << " -- " << c.note;
        out << "\n";
    }
    for (const auto& note : rep.notes) out << "  note: " << note << "\n";
}

/// Grid syntax: "start:stop:step" or a comma-separated list.
inline std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    auto parse_one = [](const std::string& s) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    };
    try {
        if (text.find(':') != std::string::npos) {
            std::istringstream in(text);
            std::string start_s, stop_s, step_s;
            if (!std::getline(in, start_s, ':') || !std::getline(in, stop_s, ':') ||
                !std::getline(in, step_s)) {
                throw std::invalid_argument(text);
            }
            const double start = parse_one(start_s);
            const double stop = parse_one(stop_s);
            const double step = parse_one(step_s);
            if (step <= 0.0 || stop < start) throw std::invalid_argument(text);
            for (double v = start; v <= stop + 1e-12; v += step) grid.push_back(std::min(v, stop));
        } else {
            std::istringstream in(text);
            std::string item;
            while (std::getline(in, item, ',')) {
                if (!item.empty()) grid.push_back(parse_one(item));
            }
        }
    } catch (const std::exception&) {
        throw config_error("cannot parse grid '" + text + "' (use start:stop:step or v1,v2,...)");
    }
    if (grid.empty()) throw config_error("grid '" + text + "' is empty");
    for (double v : grid) {
        if (v < 0.0 || v > 1.0) {
            throw config_error("grid value " + report::format_value(v) + " outside [0, 1]");
        }
    }
    return grid;
}

inline double resolve_price(const Inputs& inputs, ScenarioSpec& spec, const std::string& mode,
                            std::optional<double> explicit_price) {
    spec.price_mode = parse_price_mode(mode);
    if (spec.price_mode == PriceMode::explicit_price) {
        if (!explicit_price) throw config_error("--price is required with --price-mode explicit");
        spec.explicit_price_usd_kg = *explicit_price;
    }
    return scenario_price(inputs.profiles, spec, inputs.config.market);
}

} // namespace detail

/// Runs the CLI against `argv` (excluding the program name). All output goes
/// to the supplied streams; the return value is the process exit code.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"cocoa manual-pollination scenario engine"};
    app.require_subcommand(1);

    // --- replicate ---------------------------------------------------------
    CommonOpts rep_opts;
    rep_opts.out_dir = "replication";
    std::vector<std::string> rep_targets;
    std::string rep_grid;
    bool rep_strict = false;
    auto* rep_cmd = app.add_subcommand("replicate", "regenerate published tables and figure datasets");
    detail::add_common(rep_cmd, rep_opts);
    rep_cmd->add_option("targets", rep_targets, "targets (default: all)");
    rep_cmd->add_option("--grid", rep_grid, "adoption grid for figS3 (start:stop:step or list)");
    rep_cmd->add_flag("--strict", rep_strict, "exit 4 on any unexpected deviation");

    // --- scenario ----------------------------------------------------------
    CommonOpts scn_opts;
    std::string scn_country, scn_mode = "short";
    double scn_pym = 1.0, scn_adoption = replicate::kPublishedAdoptionRate;
    int scn_days = 0;
    std::optional<double> scn_price;
    auto* scn_cmd = app.add_subcommand("scenario", "income statement for a pollination scenario");
    detail::add_common(scn_cmd, scn_opts);
    scn_cmd->add_option("--country", scn_country, "country (default: all profiles)");
    scn_cmd->add_option("--pym", scn_pym, "pollination-yield multiplier")->check(CLI::Range(1.0, 100.0));
    scn_cmd->add_option("--days", scn_days, "pollination days per year")->check(CLI::NonNegativeNumber);
    scn_cmd->add_option("--price-mode", scn_mode, "short, long, or explicit");
    scn_cmd->add_option("--price", scn_price, "price for --price-mode explicit [USD/kg]");
    scn_cmd->add_option("--adoption", scn_adoption, "adoption rate for long-term pricing")
        ->check(CLI::Range(0.0, 1.0));

    // --- equilibrium -------------------------------------------------------
    CommonOpts eq_opts;
    double eq_pym = 2.6, eq_adoption = replicate::kPublishedAdoptionRate;
    std::vector<std::string> eq_overrides;
    auto* eq_cmd = app.add_subcommand("equilibrium", "global market equilibrium for a scenario");
    detail::add_common(eq_cmd, eq_opts);
    eq_cmd->add_option("--pym", eq_pym, "uniform multiplier")->check(CLI::Range(1.0, 100.0));
    eq_cmd->add_option("--pym-override", eq_overrides, "per-country multiplier, country=value");
    eq_cmd->add_option("--adoption", eq_adoption, "adoption rate")->check(CLI::Range(0.0, 1.0));

    // --- breakeven ---------------------------------------------------------
    CommonOpts brk_opts;
    std::string brk_country;
    std::optional<std::string> brk_mode;
    std::optional<double> brk_pym;
    double brk_goal = 2.0, brk_adoption = replicate::kPublishedAdoptionRate;
    double brk_step = 10.0;
    std::optional<double> brk_price;
    auto* brk_cmd = app.add_subcommand("breakeven", "maximum pollination days meeting an income goal");
    detail::add_common(brk_cmd, brk_opts);
    brk_cmd->add_option("--country", brk_country, "country (default: all profiles)");
    brk_cmd->add_option("--pym", brk_pym,
                        "pollination-yield multiplier (default: both configured scenarios)");
    brk_cmd->add_option("--goal", brk_goal, "income goal as a multiple of the no-pollination income")
        ->check(CLI::Range(1.0, 100.0));
    brk_cmd->add_option("--price-mode", brk_mode, "short, long, or explicit (default: short and long)");
    brk_cmd->add_option("--price", brk_price, "price for --price-mode explicit [USD/kg]");
    brk_cmd->add_option("--adoption", brk_adoption, "adoption rate for long-term pricing")
        ->check(CLI::Range(0.0, 1.0));
    brk_cmd->add_option("--gridline-step", brk_step, "reporting gridline step in days")
        ->check(CLI::PositiveNumber);

    // --- sweep -------------------------------------------------------------
    CommonOpts swp_opts;
    std::string swp_grid = "0:1:0.05", swp_mode = "long";
    double swp_pym = 2.6;
    int swp_days = 60;
    std::optional<double> swp_price;
    auto* swp_cmd = app.add_subcommand("sweep", "equilibrium and incomes across an adoption grid");
    detail::add_common(swp_cmd, swp_opts);
    swp_cmd->add_option("--grid", swp_grid, "adoption grid (start:stop:step or list)");
    swp_cmd->add_option("--pym", swp_pym, "uniform multiplier")->check(CLI::Range(1.0, 100.0));
    swp_cmd->add_option("--days", swp_days, "pollination days per year")->check(CLI::NonNegativeNumber);
    swp_cmd->add_option("--price-mode", swp_mode, "short, long, or explicit");
    swp_cmd->add_option("--price", swp_price, "price for --price-mode explicit [USD/kg]");

    // --- winwin ------------------------------------------------------------
    CommonOpts www_opts;
    std::optional<double> www_penalty, www_conversion, www_rate, www_horizon;
    std::string www_mode;
    double www_pym = 2.6;
    bool www_table_base = false;
    auto* www_cmd = app.add_subcommand("winwin", "compensation-only adoption scenario");
    detail::add_common(www_cmd, www_opts);
    www_cmd->add_option("--penalty", www_penalty, "agroforestry yield penalty [0..1]");
    www_cmd->add_option("--conversion", www_conversion, "share of area converted [0..1]");
    www_cmd->add_option("--rate", www_rate, "annual suitability decline [0..1]");
    www_cmd->add_option("--horizon", www_horizon, "years of suitability decline");
    www_cmd->add_option("--mode", www_mode, "loss composition: compound or additive");
    www_cmd->add_option("--pym", www_pym, "multiplier used for compensation");
    www_cmd->add_flag("--table-base", www_table_base,
                      "use the profiles' summed production as the base instead of the global share");

    // --- ingest-trial ------------------------------------------------------
    CommonOpts ing_opts;
    std::string ing_input;
    auto* ing_cmd = app.add_subcommand("ingest-trial", "validate and summarize field-trial records");
    detail::add_common(ing_cmd, ing_opts);
    ing_cmd->add_option("--input", ing_input, "trial CSV file")->required();

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (rep_cmd->parsed()) {
            if (rep_targets.empty()) rep_targets = replicate::all_targets();
            for (const auto& t : rep_targets) {
                const auto& valid = replicate::all_targets();
                if (std::find(valid.begin(), valid.end(), t) == valid.end()) {
                    std::string names;
                    for (const auto& v : valid) names += (names.empty() ? "" : ", ") + v;
                    err << "usage error: unknown target '" << t << "' (valid: " << names << ")\n";
                    return exit_usage;
                }
            }
            std::optional<std::vector<double>> grid;
            if (!rep_grid.empty()) {
                try {
                    grid = detail::parse_grid(rep_grid);
                } catch (const config_error& e) {
                    err << "usage error: " << e.what() << "\n";
                    return exit_usage;
                }
            }
            const auto inputs = detail::load_inputs(rep_opts);
            std::size_t unexpected = 0;
            for (const auto& t : rep_targets) {
                const auto rep = replicate::make_target(t, inputs.profiles, inputs.config, grid);
                detail::write_target(rep, rep_opts, out);
                unexpected += rep.unexpected_deviations();
            }
            if (rep_strict && unexpected > 0) {
                err << unexpected << " unexpected deviation(s) beyond tolerance\n";
                return exit_tolerance;
            }
            return exit_ok;
        }

        if (scn_cmd->parsed()) {
            const auto inputs = detail::load_inputs(scn_opts);
            ScenarioSpec spec;
            spec.pym = scn_pym;
            spec.adoption_rate = scn_adoption;
            spec.pollination_days = scn_days;
            spec.validate();
            const double price = detail::resolve_price(inputs, spec, scn_mode, scn_price);
            report::Table table;
            table.columns = {"country", "scenario", "days", "price_mode", "price", "gross_ha",
                             "opcost_farm_ha", "opcost_poll_ha", "net_ha", "national", "per_farmer",
                             "pct_change"};
            std::vector<const CountryProfile*> selected;
            if (scn_country.empty()) {
                for (const auto& p : inputs.profiles) selected.push_back(&p);
            } else {
                selected.push_back(&find_profile(inputs.profiles, scn_country));
            }
            for (const auto* p : selected) {
                const auto stmt = income_statement(*p, spec, price);
                const auto baseline = baseline_income(*p, inputs.config.market.base_price_usd_kg);
                table.rows.push_back({
                    p->name,
                    "pym=" + report::format_value(spec.pym),
                    std::to_string(spec.pollination_days),
                    to_string(spec.price_mode),
                    report::format_value(price),
                    report::format_value(stmt.gross_usd_ha),
                    report::format_value(stmt.opcost_farm_usd_ha),
                    report::format_value(stmt.opcost_poll_usd_ha),
                    report::format_value(stmt.net_usd_ha),
                    report::format_value(stmt.national_usd),
                    report::format_value(stmt.per_farmer_usd),
                    report::format_value(income_change_fraction(stmt, baseline) * 100.0),
                });
            }
            table.render_text(out);
            if (!scn_opts.out_dir.empty()) {
                detail::write_table(table, scn_opts.out_dir, "scenario", scn_opts.format);
            }
            return exit_ok;
        }

        if (eq_cmd->parsed()) {
            const auto inputs = detail::load_inputs(eq_opts);
            ScenarioSpec spec;
            spec.pym = eq_pym;
            spec.adoption_rate = eq_adoption;
            for (const auto& item : eq_overrides) {
                const auto sep = item.find('=');
                if (sep == std::string::npos) {
                    err << "usage error: --pym-override expects country=value, got '" << item << "'\n";
                    return exit_usage;
                }
                spec.pym_overrides[normalize_country(item.substr(0, sep))] =
                    std::stod(item.substr(sep + 1));
            }
            spec.validate();
            const auto eq = equilibrium(inputs.profiles, spec, inputs.config.market);
            report::Table table;
            table.columns = {"adoption", "delta", "gamma_p", "gamma_s", "lambda",
                             "price_usd_kg", "supply_t"};
            table.rows.push_back({
                report::format_value(spec.adoption_rate), report::format_value(eq.delta),
                report::format_value(eq.gamma_p), report::format_value(eq.gamma_s),
                report::format_value(eq.lambda), report::format_value(eq.new_price_usd_kg),
                report::format_value(eq.new_supply_t),
            });
            table.render_text(out);
            if (!eq_opts.out_dir.empty()) {
                detail::write_table(table, eq_opts.out_dir, "equilibrium", eq_opts.format);
            }
            return exit_ok;
        }

        if (brk_cmd->parsed()) {
            const auto inputs = detail::load_inputs(brk_opts);
            const double base_price = inputs.config.market.base_price_usd_kg;
            const std::vector<double> pyms =
                brk_pym ? std::vector<double>{*brk_pym}
                        : std::vector<double>{inputs.config.pym.intermediate,
                                              inputs.config.pym.maximum};
            const std::vector<std::string> modes =
                brk_mode ? std::vector<std::string>{*brk_mode}
                         : std::vector<std::string>{"short", "long"};
            report::Table table;
            table.columns = {"country", "pym", "price_mode", "price", "goal",
                             "exact_days", "gridline_days", "goal_reachable"};
            std::vector<const CountryProfile*> selected;
            if (brk_country.empty()) {
                for (const auto& p : inputs.profiles) selected.push_back(&p);
            } else {
                selected.push_back(&find_profile(inputs.profiles, brk_country));
            }
            for (const auto& mode : modes) {
                for (double pym : pyms) {
                    ScenarioSpec spec;
                    spec.pym = pym;
                    spec.adoption_rate = brk_adoption;
                    spec.validate();
                    const double price = detail::resolve_price(inputs, spec, mode, brk_price);
                    for (const auto* p : selected) {
                        const auto be = breakeven_days(*p, pym, price, brk_goal, base_price);
                        table.rows.push_back({
                            p->name,
                            report::format_value(pym),
                            to_string(spec.price_mode),
                            report::format_value(price),
                            report::format_value(brk_goal),
                            report::format_value(be.exact_days),
                            report::format_value(gridline_floor(be.exact_days, brk_step)),
                            be.goal_reachable ? "yes" : "no",
                        });
                    }
                }
            }
            table.render_text(out);
            if (!brk_opts.out_dir.empty()) {
                detail::write_table(table, brk_opts.out_dir, "breakeven", brk_opts.format);
            }
            return exit_ok;
        }

        if (swp_cmd->parsed()) {
            const auto inputs = detail::load_inputs(swp_opts);
            std::vector<double> grid;
            try {
                grid = detail::parse_grid(swp_grid);
            } catch (const config_error& e) {
                err << "usage error: " << e.what() << "\n";
                return exit_usage;
            }
            ScenarioSpec spec;
            spec.pym = swp_pym;
            spec.pollination_days = swp_days;
            spec.price_mode = parse_price_mode(swp_mode);
            if (spec.price_mode == PriceMode::explicit_price) {
                if (!swp_price) {
                    err << "usage error: --price is required with --price-mode explicit\n";
                    return exit_usage;
                }
                spec.explicit_price_usd_kg = *swp_price;
            }
            spec.validate();
            const auto rows = replicate::sweep(inputs.profiles, spec, inputs.config.market, grid);
            const auto table = replicate::sweep_table(inputs.profiles, rows);
            table.render_text(out);
            if (!swp_opts.out_dir.empty()) {
                detail::write_table(table, swp_opts.out_dir, "sweep", swp_opts.format);
            }
            return exit_ok;
        }

        if (www_cmd->parsed()) {
            const auto inputs = detail::load_inputs(www_opts);
            WinWinParams params = inputs.config.winwin;
            if (www_penalty) params.agroforestry_yield_penalty = *www_penalty;
            if (www_conversion) params.conversion_share = *www_conversion;
            if (www_rate) params.suitability_decline_rate = *www_rate;
            if (www_horizon) params.horizon_years = *www_horizon;
            if (!www_mode.empty()) params.loss_composition = parse_loss_composition(www_mode);
            params.validate();
            double base = inputs.config.winwin_base_share * inputs.config.market.global_production_t;
            if (www_table_base) {
                base = 0.0;
                for (const auto& p : inputs.profiles) base += baseline_production_t(p);
            }
            report::Table table;
            table.columns = {"loss_composition", "base_t", "required_t", "pym",
                             "adoption", "feasible", "shortfall_t", "price_ratio"};
            for (LossComposition mode : {LossComposition::compound, LossComposition::additive}) {
                WinWinParams mode_params = params;
                mode_params.loss_composition = mode;
                const double required = required_compensation_t(base, mode_params);
                const auto adoption = compensating_adoption(required, inputs.profiles, www_pym);
                double price_ratio_value = 1.0;
                if (adoption.feasible) {
                    double additions = 0.0;
                    for (const auto& p : inputs.profiles) {
                        additions += country_addition_t(p, www_pym, std::min(adoption.adoption, 1.0));
                    }
                    price_ratio_value = price_ratio(
                        (additions - required) / inputs.config.market.global_production_t,
                        inputs.config.market);
                }
                table.rows.push_back({
                    to_string(mode),
                    report::format_value(base),
                    report::format_value(required),
                    report::format_value(www_pym),
                    report::format_value(adoption.adoption),
                    adoption.feasible ? "yes" : "no",
                    report::format_value(adoption.shortfall_t),
                    adoption.feasible ? report::format_value(price_ratio_value) : "",
                });
            }
            out << "configured mode: " << to_string(params.loss_composition) << "\n";
            table.render_text(out);
            if (!www_opts.out_dir.empty()) {
                detail::write_table(table, www_opts.out_dir, "winwin", www_opts.format);
            }
            return exit_ok;
        }

        if (ing_cmd->parsed()) {
            const auto result = ingest_trials(ing_input);
            if (!result.ok()) {
                err << "trial validation failed (" << result.issues.size() << " issue(s)):\n"
                    << result.issue_summary();
                return exit_validation;
            }
            out << "records: " << result.records.size() << "\n";
            std::size_t treated = 0, control = 0;
            for (const auto& r : result.records) {
                (r.treatment == Treatment::hand_pollinated ? treated : control)++;
            }
            out << "hand_pollinated: " << treated << ", open_control: " << control << "\n";
            if (treated > 0 && control > 0) {
                const auto estimate = estimate_pym(result.records);
                out << "yield multiplier: " << report::format_value(estimate.multiplier)
                    << " (treated mean " << report::format_value(estimate.treated_mean_kg) << " kg, sd "
                    << report::format_value(estimate.treated_sd_kg) << "; control mean "
                    << report::format_value(estimate.control_mean_kg) << " kg, sd "
                    << report::format_value(estimate.control_sd_kg) << ")\n";
                for (const auto& [farm, ratio] : estimate.per_farm) {
                    out << "  farm " << farm << ": " << report::format_value(ratio) << "\n";
                }
            }
            if (treated > 0) {
                const auto rates = trial_rates(result.records);
                auto show = [&out](const char* name, const std::optional<double>& v) {
                    out << name << ": " << (v ? report::format_value(*v) : "undefined") << "\n";
                };
                show("fruit_set_rate", rates.fruit_set_rate);
                show("wilt_share", rates.wilt_share);
                show("pest_share", rates.pest_share);
                show("disease_share", rates.disease_share);
                show("harvest_rate", rates.harvest_rate);
                show("natural_set_rate", rates.natural_set_rate);
                if (rates.natural_set_rate) {
                    out << "natural rate within 5-10% reference band: "
                        << (rates.natural_rate_in_reference_band ? "yes" : "no") << "\n";
                }
            }
            if (!ing_opts.out_dir.empty()) {
                std::filesystem::create_directories(ing_opts.out_dir);
                std::ofstream echo(ing_opts.out_dir + "/trials_normalized.csv");
                save_trials(echo, result.records);
            }
            return exit_ok;
        }
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return exit_validation;
    } catch (const domain_error& e) {
        err << "validation error: " << e.what() << "\n";
        return exit_validation;
    } catch (const config_error& e) {
        err << "validation error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_validation;
    }

    err << "usage error: no subcommand given\n";
    return exit_usage;
}

} // namespace cocoasim::cli
