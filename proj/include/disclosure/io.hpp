#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "apps.hpp"
#include "design.hpp"
#include "equilibrium.hpp"
#include "errors.hpp"
#include "game.hpp"
#include "representation.hpp"

namespace disclosure::io {

using json = nlohmann::json;

/// Round to 12 significant digits so emitted JSON is stable across
/// platforms and well above solver noise.
inline double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

inline json num(double x) { return round12(x); }

// ---------------------------------------------------------------------------
// Reading

namespace detail {

template <class T>
T get(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw SchemaError(where + ": field \"" + key + "\" has the wrong type (" + e.what() + ")");
    }
}

}  // namespace detail

inline json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

/// Inline JSON when the argument starts with '{', otherwise a file path.
inline json load(const std::string& path_or_json) {
    auto first = path_or_json.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && path_or_json[first] == '{') return parse(path_or_json);
    std::ifstream in(path_or_json);
    if (!in) throw SchemaError("cannot open input file " + path_or_json);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

inline Prior prior_from_json(const json& j) {
    std::string kind = detail::get<std::string>(j, "kind", "prior");
    try {
        if (kind == "uniform") return Prior::uniform();
        if (kind == "plinear")
            return Prior::piecewise_linear(detail::get<std::vector<double>>(j, "knots", "prior"),
                                           detail::get<std::vector<double>>(j, "density", "prior"));
    } catch (const DomainError& e) {
        throw SchemaError(std::string("prior: ") + e.what());
    }
    throw SchemaError("prior: unknown kind \"" + kind + "\" (expected uniform or plinear)");
}

inline Prior optional_prior(const json& j) {
    return j.is_object() && j.contains("prior") ? prior_from_json(j.at("prior")) : Prior::uniform();
}

inline IntervalUnion union_from_json(const json& j) {
    if (!j.is_array()) throw SchemaError("interval union must be an array of [lo, hi] pairs");
    std::vector<Interval> pieces;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw SchemaError("interval must be a [lo, hi] pair of numbers");
        pieces.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    try {
        return IntervalUnion(std::move(pieces));
    } catch (const DomainError& e) {
        throw SchemaError(e.what());
    }
}

inline GameSpec game_from_json(const json& j) {
    GameSpec g{optional_prior(j), detail::get<std::vector<double>>(j, "cutoffs", "game"),
               detail::get<std::vector<double>>(j, "values", "game")};
    require_valid(g);
    return g;
}

inline DeterministicRepresentation rep_from_json(const json& j, const GameSpec& g) {
    if (!j.is_object() || !j.contains("cells") || !j.at("cells").is_array())
        throw SchemaError("representation: missing \"cells\" array");
    DeterministicRepresentation r{g, {}};
    for (const auto& c : j.at("cells")) r.cells.push_back(union_from_json(c));
    return r;
}

inline SellerModel seller_from_json(const json& j) {
    SellerModel m;
    json u = detail::get<json>(j, "utility", "seller");
    std::string kind = detail::get<std::string>(u, "kind", "seller.utility");
    if (kind == "crra") {
        m.kind = SellerModel::Kind::crra;
        m.sigma = detail::get<double>(u, "sigma", "seller.utility");
    } else if (kind == "table") {
        m.kind = SellerModel::Kind::table;
        m.table = detail::get<std::vector<double>>(u, "values", "seller.utility");
    } else {
        throw SchemaError("seller.utility: unknown kind \"" + kind + "\" (expected crra or table)");
    }
    m.price = detail::get<double>(j, "price", "seller");
    m.cost = j.contains("cost") ? detail::get<double>(j, "cost", "seller") : 0.0;
    m.prior = optional_prior(j);
    return m;
}

inline VotingModel voting_from_json(const json& j) {
    VotingModel m;
    json vs = detail::get<json>(j, "voters", "voting");
    if (!vs.is_array()) throw SchemaError("voting: \"voters\" must be an array");
    for (const auto& v : vs)
        m.voters.push_back({detail::get<double>(v, "alpha_ab", "voter"), detail::get<double>(v, "alpha_b", "voter"),
                            detail::get<double>(v, "beta_ab", "voter"), detail::get<double>(v, "beta_b", "voter")});
    m.v_ab = detail::get<double>(j, "v_ab", "voting");
    m.v_b = detail::get<double>(j, "v_b", "voting");
    m.prior = optional_prior(j);
    return m;
}

/// Optional "sweep": {"param": "beta_b" | "alpha_b", "shifts": [...]}.
inline VotingSweep sweep_from_json(const json& j) {
    VotingSweep s;
    if (!j.is_object() || !j.contains("sweep")) return s;
    const json& w = j.at("sweep");
    std::string p = w.contains("param") ? detail::get<std::string>(w, "param", "sweep") : "beta_b";
    if (p == "beta_b") s.param = VotingSweep::Param::beta_b;
    else if (p == "alpha_b") s.param = VotingSweep::Param::alpha_b;
    else throw SchemaError("sweep: unknown param \"" + p + "\" (expected beta_b or alpha_b)");
    s.shifts = detail::get<std::vector<double>>(w, "shifts", "sweep");
    return s;
}

// ---------------------------------------------------------------------------
// Writing

inline json to_json(const Prior& p) {
    if (p.kind() == Prior::Kind::uniform) return {{"kind", "uniform"}};
    json knots = json::array(), dens = json::array();
    for (double x : p.knots()) knots.push_back(num(x));
    for (double d : p.knot_density()) dens.push_back(num(d));
    return {{"kind", "plinear"}, {"knots", knots}, {"density", dens}};
}

inline json to_json(const Interval& i) { return json::array({num(i.lo), num(i.hi)}); }

inline json to_json(const IntervalUnion& u) {
    json a = json::array();
    for (const auto& p : u.pieces()) a.push_back(to_json(p));
    return a;
}

inline json to_json(const GameSpec& g) {
    json c = json::array(), v = json::array();
    for (double x : g.cutoffs) c.push_back(num(x));
    for (double x : g.values) v.push_back(num(x));
    return {{"prior", to_json(g.prior)}, {"cutoffs", c}, {"values", v}};
}

inline json to_json(const DeterministicRepresentation& r) {
    json cells = json::array();
    for (const auto& c : r.cells) cells.push_back(to_json(c));
    return {{"cells", cells}};
}

inline json to_json(const MeanDistribution& d) {
    json atoms = json::array();
    for (const auto& a : d.atoms) atoms.push_back(json::array({num(a.x), num(a.p)}));
    return {{"payoff", num(d.payoff)}, {"atoms", atoms}, {"revealed", to_json(d.revealed)}};
}

inline json to_json(const Segment& s) {
    json means = json::array();
    for (double m : s.means) means.push_back(num(m));
    return {{"outer", to_json(s.outer)}, {"type", to_string(s.type)}, {"means", means}};
}

inline json to_json(const SplitViolation& v) {
    return {{"condition", v.condition}, {"action", v.action}, {"cell", v.cell},
            {"sup", num(v.sup)},        {"bound", num(v.bound)}, {"message", v.str()}};
}

inline json to_json(const IcViolation& v) { return {{"action", v.action}, {"uncovered", to_json(v.uncovered)}}; }

inline json to_json(const OreReport& r) {
    json cells = json::array();
    for (const auto& c : r.obedience.cells) {
        json e = {{"index", c.index}, {"mass", num(c.mass)}, {"obedient", c.obedient}};
        e["mean"] = c.mean ? json(num(*c.mean)) : json(nullptr);
        cells.push_back(e);
    }
    json ic = json::array();
    for (const auto& v : r.ic.violations) ic.push_back(to_json(v));
    return {{"ok", r.ok}, {"obedient", r.obedience.obedient}, {"incentive_compatible", r.ic.compatible},
            {"cells", cells}, {"ic_violations", ic}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace disclosure::io
