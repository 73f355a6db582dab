#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "apps.hpp"
#include "design.hpp"
#include "equilibrium.hpp"
#include "errors.hpp"
#include "io.hpp"

namespace disclosure::cli {

using io::json;

inline const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v{"solve",   "implementable", "suffcond",   "preferred", "payoff-set",
                                            "ore-at", "app-seller",    "app-voting", "baselines"};
    return v;
}

struct Command {
    std::string verb;
    std::string input;  // path, or inline JSON starting with '{'
    std::string output;  // empty: stdout
    int grid = 481;
    double tol = 1e-10;
    std::optional<unsigned long long> seed;
    std::string csv_dir;
    std::optional<double> target;
};

enum class LogLevel { quiet, info, debug };

inline LogLevel log_level() {
    const char* e = std::getenv("DISCLOSURE_LAB_LOG");
    std::string s = e ? e : "quiet";
    if (s == "debug") return LogLevel::debug;
    if (s == "info") return LogLevel::info;
    return LogLevel::quiet;
}

// ---------------------------------------------------------------------------
// Plot data

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", io::round12(x));
    return buf;
}

inline void write_file(const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    out << body;
}

inline std::string value_function_csv(const GameSpec& g) {
    std::string s = "x,u\n";
    for (std::size_t i = 0; i < g.n(); ++i) {
        s += fmt(g.gamma(i)) + "," + fmt(g.v(i)) + "\n";
        s += fmt(g.gamma(i + 1)) + "," + fmt(g.v(i)) + "\n";
    }
    return s;
}

inline std::string intervals_csv(const DeterministicRepresentation& r) {
    std::string s = "cell,lo,hi,mean,flag\n";
    for (std::size_t i = 0; i < r.n(); ++i) {
        if (r.null(i)) {
            double a = r.cells[i].empty() ? r.spec.gamma(i) : r.cells[i].inf();
            s += std::to_string(i) + "," + fmt(a) + "," + fmt(a) + ",,skipped\n";
            continue;
        }
        double mean = r.spec.prior.partial_mean(r.cells[i]);
        for (const auto& p : r.cells[i].pieces())
            s += std::to_string(i) + "," + fmt(p.lo) + "," + fmt(p.hi) + "," + fmt(mean) + ",\n";
    }
    return s;
}

inline std::string sweep_csv(const std::vector<SweepPoint>& pts) {
    std::string s = "z,payoff\n";
    for (const auto& p : pts) s += fmt(p.z) + "," + fmt(p.payoff) + "\n";
    return s;
}

inline std::string voting_csv(const std::vector<SweepRow>& rows) {
    std::string s = "parameter,gamma2_m,payoff,implementable_flag\n";
    for (const auto& r : rows)
        s += fmt(r.parameter) + "," + fmt(r.gamma2) + "," + fmt(r.payoff) + "," + (r.implementable ? "1" : "0") + "\n";
    return s;
}

/// Files written by --csv. Only the pieces present are emitted.
struct PlotData {
    std::optional<GameSpec> game;
    std::optional<DeterministicRepresentation> rep;
    std::vector<SweepPoint> sweep;
    std::vector<SweepRow> voting;
};

inline void emit_plot_data(const PlotData& d, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    if (d.game) write_file(dir / "value_function.csv", value_function_csv(*d.game));
    if (d.rep) write_file(dir / "intervals.csv", intervals_csv(*d.rep));
    if (!d.sweep.empty()) write_file(dir / "payoff_sweep.csv", sweep_csv(d.sweep));
    if (!d.voting.empty()) write_file(dir / "voting_sweep.csv", voting_csv(d.voting));
}

// ---------------------------------------------------------------------------
// Verbs

namespace detail {

inline json solution_json(const BiPoolingSolution& s, const std::string& method) {
    json segs = json::array();
    for (const auto& seg : s.segments) segs.push_back(io::to_json(seg));
    json out = io::to_json(s.distribution);
    out["canonical"] = io::to_json(s.canonical);
    out["segments"] = segs;
    out["method"] = method;
    return out;
}

inline json implementable_json(const ImplementabilityReport& r) {
    json v = json::array(), ic = json::array();
    for (const auto& x : r.violations) v.push_back(io::to_json(x));
    for (const auto& x : r.ic.violations) ic.push_back(io::to_json(x));
    return {{"implementable", r.implementable},
            {"canonical", io::to_json(r.canonical)},
            {"violations", v},
            {"ic_violations", ic},
            {"commitment_payoff", io::num(r.commitment_payoff)}};
}

inline json suffcond_json(const GameSpec& g) {
    json nam = json::array();
    bool all = true;
    for (bool b : check_nam(g)) {
        nam.push_back(b);
        all = all && b;
    }
    json out = {{"nam", nam}, {"nam_all", all}, {"cni", check_cni(g)}};
    out["c3i"] = g.n() == 3 ? json(check_c3i(g)) : json(nullptr);
    return out;
}

inline json ore_json(const OreResult& r, const GameSpec& g) {
    return {{"payoff", io::num(r.payoff)},
            {"rep", io::to_json(r.rep)},
            {"coincides_with_commitment", r.coincides_with_commitment},
            {"unraveling", io::num(unraveling_payoff(g))},
            {"verify_ore", verify_ore(r.rep).ok}};
}

}  // namespace detail

/// Execute one command. Returns the process exit status: 0 on success,
/// 2 for malformed input, 3 for solver failures.
inline int run(const Command& cmd, std::ostream& out, std::ostream& err) {
    const LogLevel level = log_level();
    auto log = [&](LogLevel at, const std::string& msg) {
        if (level >= at) err << "[disclosure-lab] " << msg << "\n";
    };
    try {
        json input = io::load(cmd.input);
        log(LogLevel::debug, "verb " + cmd.verb + ", grid " + std::to_string(cmd.grid));
        json result;
        PlotData plot;

        if (cmd.verb == "solve") {
            GameSpec g = io::game_from_json(input);
            BiPoolingSolution sol;
            std::string method = "structural";
            if (g.n() <= 3) {
                sol = commitment_solution(g);
            } else {
                LpSolution lp = solve_lp_detail(g, cmd.grid);
                method = "lp";
                log(LogLevel::info, "LP finished after " + std::to_string(lp.iterations) + " pivots");
                try {
                    sol = solution_from_rep(canonicalize(lp, g));
                } catch (const SegmentRecoveryError& e) {
                    log(LogLevel::info, e.what());
                    sol.canonical = DeterministicRepresentation{g, {}};
                }
                sol.distribution = lp.distribution;
            }
            result = detail::solution_json(sol, method);
            plot.game = g;
            if (!sol.canonical.cells.empty()) plot.rep = sol.canonical;
            else result["canonical"] = nullptr;
        } else if (cmd.verb == "implementable") {
            GameSpec g = io::game_from_json(input);
            ImplementabilityReport r = implementable(g, std::max(cmd.grid, 961));
            result = detail::implementable_json(r);
            plot.game = g;
            plot.rep = r.canonical;
        } else if (cmd.verb == "suffcond") {
            GameSpec g = io::game_from_json(input);
            result = detail::suffcond_json(g);
        } else if (cmd.verb == "preferred") {
            GameSpec g = io::game_from_json(input);
            OreResult r = preferred_ore(g);
            result = detail::ore_json(r, g);
            plot.game = g;
            plot.rep = r.rep;
        } else if (cmd.verb == "payoff-set") {
            GameSpec g = io::game_from_json(input);
            OreResult r = preferred_ore(g);
            result = {{"unraveling", io::num(unraveling_payoff(g))}, {"preferred", io::num(r.payoff)}};
            plot.game = g;
            plot.sweep = payoff_sweep(r.rep);
        } else if (cmd.verb == "ore-at") {
            if (!cmd.target) throw SchemaError("ore-at needs --target");
            GameSpec g = io::game_from_json(input);
            SweepPoint p = ore_at_payoff(g, *cmd.target, std::max(cmd.tol, 1e-12));
            result = {{"target", io::num(*cmd.target)},
                      {"payoff", io::num(p.payoff)},
                      {"z", io::num(p.z)},
                      {"rep", io::to_json(p.rep)},
                      {"verify_ore", io::to_json(verify_ore(p.rep))},
                      {"laminar", is_laminar(p.rep)}};
            plot.game = g;
            plot.rep = p.rep;
        } else if (cmd.verb == "app-seller") {
            SellerModel m = io::seller_from_json(input);
            SellerGame sg = seller_to_game(m);
            PrudenceReport pr = check_prudence(m);
            json theta = json::array(), warn = json::array();
            for (double t : sg.theta) theta.push_back(io::num(t));
            for (const auto& w : sg.warnings) warn.push_back(w);
            result = {{"spec", io::to_json(sg.spec)},
                      {"theta", theta},
                      {"warnings", warn},
                      {"prudence", {{"prudence", pr.prudence},
                                    {"density_increasing", pr.density_increasing},
                                    {"holds", pr.holds},
                                    {"gap_conditions_literal", pr.gap_conditions_literal}}},
                      {"suffcond", detail::suffcond_json(sg.spec)},
                      {"commitment_payoff", io::num(commitment_payoff(sg.spec))},
                      {"unraveling", io::num(unraveling_payoff(sg.spec))}};
            plot.game = sg.spec;
        } else if (cmd.verb == "app-voting") {
            VotingModel m = io::voting_from_json(input);
            VotingGame vg = voting_to_game(m);
            OreResult r = preferred_ore(vg.spec);
            json g1 = json::array(), g2 = json::array();
            for (double x : vg.gamma1) g1.push_back(io::num(x));
            for (double x : vg.gamma2) g2.push_back(io::num(x));
            result = {{"spec", io::to_json(vg.spec)},
                      {"median", vg.median},
                      {"gamma1", g1},
                      {"gamma2", g2},
                      {"preferred", detail::ore_json(r, vg.spec)}};
            VotingSweep sw = io::sweep_from_json(input);
            if (!sw.shifts.empty() || (input.is_object() && input.contains("sweep"))) {
                std::vector<SweepRow> rows = voting_comparative_statics(m, sw);
                json table = json::array();
                bool any = false;
                for (const auto& row : rows) {
                    table.push_back({{"parameter", io::num(row.parameter)},
                                     {"gamma1", io::num(row.gamma1)},
                                     {"gamma2_m", io::num(row.gamma2)},
                                     {"payoff", io::num(row.payoff)},
                                     {"implementable", row.implementable},
                                     {"decrease", row.decrease}});
                    any = any || row.decrease;
                }
                result["sweep"] = table;
                result["payoff_decrease_found"] = any;
                plot.voting = rows;
            }
            plot.game = vg.spec;
            plot.rep = r.rep;
        } else if (cmd.verb == "baselines") {
            GameSpec g = io::game_from_json(input);
            result = {{"unraveling", io::num(unraveling_payoff(g))}, {"cheap_talk", io::num(cheap_talk_payoff(g))}};
            plot.game = g;
        } else {
            throw SchemaError("unknown verb \"" + cmd.verb + "\"");
        }

        if (cmd.seed) result["seed"] = *cmd.seed;
        if (!cmd.csv_dir.empty()) emit_plot_data(plot, cmd.csv_dir);
        if (cmd.output.empty()) {
            out << io::dump(result);
        } else {
            write_file(cmd.output, io::dump(result));
        }
        return 0;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace disclosure::cli
