// Copyright 2026 The qcommit authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file case.hpp
 * Power-system case model and its JSON schema.
 *
 * A case document is a single UTF-8 JSON object with top-level keys
 * meta/buses/branches/units/vpps/renewables/loads/costs. Powers are MW,
 * impedances p.u. on base_mva, voltages p.u. Profiles may span several days:
 * their length must be a multiple of meta.periods. Unknown keys are
 * rejected; every validation error names the offending path.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <queue>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcommit/errors.hpp"

namespace qcommit::grid {

struct Bus {
    int id = 0;
    double voltage_min = 0.95;
    double voltage_max = 1.05;
    int load_profile_ref = -1; // optional index into loads[]
};

struct Branch {
    int from = 0;
    int to = 0;
    double r = 0.0;          // p.u.
    double x = 0.0;          // p.u.
    double flow_limit = 0.0; // MW
};

struct Unit {
    int bus = 0;
    double c_g = 0.0;    // $/MWh
    double c_g_su = 0.0; // $
    double p_min = 0.0;  // MW
    double p_max = 0.0;  // MW
    double r_u = 0.0;    // MW/step, >= 0
    double r_d = 0.0;    // MW/step, <= 0 (signed lower ramp)
    bool initial_status = false;
    double power_factor = 1.0;
};

struct Vpp {
    int bus = 0;
    double p_vpp_max = 0.0; // MW, symmetric bound
    double c_vpp = 0.0;     // $/MWh
    double power_factor = 1.0;
};

struct Renewable {
    int bus = 0;
    std::string kind; // "pv" or "wind"
    std::vector<double> forecast_profile;
    double power_factor = 1.0;
};

struct Load {
    int bus = 0;
    std::vector<double> forecast_profile;
    double power_factor = 1.0;
};

struct Costs {
    double c_ls = 0.0;     // $/MWh
    double lambda_v = 0.0; // $/p.u.
    double lambda_b = 0.0; // $/MW
};

/// Reactive output per MW of active power at the given power factor.
inline double q_per_p(double power_factor) {
    const double pf = std::clamp(power_factor, 1e-6, 1.0);
    return std::sqrt(std::max(0.0, 1.0 - pf * pf)) / pf;
}

struct GridCase {
    std::string name;
    int periods = 0; // T
    double base_mva = 100.0;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Unit> units;
    std::vector<Vpp> vpps;
    std::vector<Renewable> renewables;
    std::vector<Load> loads;
    Costs costs;

    int profile_len() const {
        if (!loads.empty()) {
            return static_cast<int>(loads.front().forecast_profile.size());
        }
        if (!renewables.empty()) {
            return static_cast<int>(
                renewables.front().forecast_profile.size());
        }
        return periods;
    }

    int num_days() const { return profile_len() / periods; }

    /// Largest total system load over all periods and days.
    double peak_total_load() const {
        double peak = 0.0;
        for (int t = 0; t < profile_len(); ++t) {
            double sum = 0.0;
            for (const auto& load : loads) {
                sum += load.forecast_profile[static_cast<std::size_t>(t)];
            }
            peak = std::max(peak, sum);
        }
        return peak;
    }

    /// Default per-case reward scale keeping returns O(1).
    double reward_scale() const {
        const double s = costs.c_ls * peak_total_load();
        return s > 0.0 ? s : 1.0;
    }
};

namespace detail {

using nlohmann::json;

inline void require_keys(const json& obj, const char* path,
                         std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional = {}) {
    if (!obj.is_object()) {
        throw ValidationError(std::string(path) + ": expected an object");
    }
    for (const char* key : required) {
        if (!obj.contains(key)) {
            throw ValidationError(std::string(path) + ": missing key '" +
                                  key + "'");
        }
    }
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        const bool known =
            std::any_of(required.begin(), required.end(),
                        [&](const char* k) { return key == k; }) ||
            std::any_of(optional.begin(), optional.end(),
                        [&](const char* k) { return key == k; });
        if (!known) {
            throw ValidationError(std::string(path) + ": unknown key '" +
                                  key + "'");
        }
    }
}

inline double get_num(const json& obj, const char* path, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw ValidationError(std::string(path) + "." + key +
                              ": expected a number");
    }
    return v.get<double>();
}

inline int get_int(const json& obj, const char* path, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ValidationError(std::string(path) + "." + key +
                              ": expected an integer");
    }
    return v.get<int>();
}

inline std::vector<double> get_profile(const json& obj, const std::string& path,
                                       const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_array() || v.empty()) {
        throw ValidationError(path + "." + key + ": expected a non-empty array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) {
            throw ValidationError(path + "." + key + ": non-numeric entry");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

inline void check_connected(const GridCase& c) {
    const std::size_t n = c.buses.size();
    if (n <= 1) {
        return;
    }
    std::vector<std::vector<int>> adj(n);
    for (const auto& br : c.branches) {
        adj[static_cast<std::size_t>(br.from)].push_back(br.to);
        adj[static_cast<std::size_t>(br.to)].push_back(br.from);
    }
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                q.push(v);
            }
        }
    }
    if (count != n) {
        throw ValidationError("branches: network is not connected");
    }
}

} // namespace detail

/// Parses and validates a case document. Throws ValidationError naming the
/// first failing path.
inline GridCase load_case(const nlohmann::json& doc) {
    using detail::get_int;
    using detail::get_num;
    using detail::get_profile;
    using detail::require_keys;

    require_keys(doc, "$",
                 {"meta", "buses", "branches", "units", "vpps", "renewables",
                  "loads", "costs"});

    GridCase c;
    {
        const auto& meta = doc.at("meta");
        require_keys(meta, "meta", {"name", "periods", "base_mva"});
        c.name = meta.at("name").get<std::string>();
        c.periods = get_int(meta, "meta", "periods");
        c.base_mva = get_num(meta, "meta", "base_mva");
        if (c.periods < 1) {
            throw ValidationError("meta.periods: must be >= 1");
        }
        if (c.base_mva <= 0.0) {
            throw ValidationError("meta.base_mva: must be > 0");
        }
    }

    int idx = 0;
    for (const auto& b : doc.at("buses")) {
        const std::string path = "buses[" + std::to_string(idx) + "]";
        require_keys(b, path.c_str(), {"id", "voltage_min", "voltage_max"},
                     {"load_profile_ref"});
        Bus bus;
        bus.id = get_int(b, path.c_str(), "id");
        bus.voltage_min = get_num(b, path.c_str(), "voltage_min");
        bus.voltage_max = get_num(b, path.c_str(), "voltage_max");
        if (b.contains("load_profile_ref")) {
            bus.load_profile_ref = get_int(b, path.c_str(), "load_profile_ref");
        }
        if (bus.id != idx) {
            throw ValidationError(path + ".id: expected " +
                                  std::to_string(idx) +
                                  " (ids must be 0-based and in order)");
        }
        if (!(bus.voltage_min > 0.0) || !(bus.voltage_min < bus.voltage_max)) {
            throw ValidationError(path + ": need 0 < voltage_min < voltage_max");
        }
        c.buses.push_back(bus);
        ++idx;
    }
    if (c.buses.empty()) {
        throw ValidationError("buses: at least one bus required");
    }
    const int nbus = static_cast<int>(c.buses.size());

    idx = 0;
    for (const auto& b : doc.at("branches")) {
        const std::string path = "branches[" + std::to_string(idx) + "]";
        require_keys(b, path.c_str(), {"from", "to", "r", "x", "flow_limit"});
        Branch br;
        br.from = get_int(b, path.c_str(), "from");
        br.to = get_int(b, path.c_str(), "to");
        br.r = get_num(b, path.c_str(), "r");
        br.x = get_num(b, path.c_str(), "x");
        br.flow_limit = get_num(b, path.c_str(), "flow_limit");
        if (br.from < 0 || br.from >= nbus || br.to < 0 || br.to >= nbus ||
            br.from == br.to) {
            throw ValidationError(path + ": invalid endpoints");
        }
        if (!(br.x > 0.0) || br.r < 0.0) {
            throw ValidationError(path + ": need x > 0 and r >= 0");
        }
        if (!(br.flow_limit > 0.0)) {
            throw ValidationError(path + ".flow_limit: must be > 0");
        }
        c.branches.push_back(br);
        ++idx;
    }

    idx = 0;
    for (const auto& u : doc.at("units")) {
        const std::string path = "units[" + std::to_string(idx) + "]";
        require_keys(u, path.c_str(),
                     {"bus", "c_g", "c_g_su", "p_min", "p_max", "r_u", "r_d",
                      "initial_status"},
                     {"power_factor"});
        Unit unit;
        unit.bus = get_int(u, path.c_str(), "bus");
        unit.c_g = get_num(u, path.c_str(), "c_g");
        unit.c_g_su = get_num(u, path.c_str(), "c_g_su");
        unit.p_min = get_num(u, path.c_str(), "p_min");
        unit.p_max = get_num(u, path.c_str(), "p_max");
        unit.r_u = get_num(u, path.c_str(), "r_u");
        unit.r_d = get_num(u, path.c_str(), "r_d");
        unit.initial_status = u.at("initial_status").get<bool>();
        if (u.contains("power_factor")) {
            unit.power_factor = get_num(u, path.c_str(), "power_factor");
        }
        if (unit.bus < 0 || unit.bus >= nbus) {
            throw ValidationError(path + ".bus: out of range");
        }
        if (unit.p_min < 0.0 || unit.p_min > unit.p_max) {
            throw ValidationError(path + ": need 0 <= p_min <= p_max");
        }
        if (unit.r_u < 0.0 || unit.r_d > 0.0) {
            throw ValidationError(path + ": need r_u >= 0 and r_d <= 0");
        }
        c.units.push_back(unit);
        ++idx;
    }

    idx = 0;
    for (const auto& v : doc.at("vpps")) {
        const std::string path = "vpps[" + std::to_string(idx) + "]";
        require_keys(v, path.c_str(), {"bus", "p_vpp_max", "c_vpp"},
                     {"power_factor"});
        Vpp vpp;
        vpp.bus = get_int(v, path.c_str(), "bus");
        vpp.p_vpp_max = get_num(v, path.c_str(), "p_vpp_max");
        vpp.c_vpp = get_num(v, path.c_str(), "c_vpp");
        if (v.contains("power_factor")) {
            vpp.power_factor = get_num(v, path.c_str(), "power_factor");
        }
        if (vpp.bus < 0 || vpp.bus >= nbus) {
            throw ValidationError(path + ".bus: out of range");
        }
        if (vpp.p_vpp_max < 0.0) {
            throw ValidationError(path + ".p_vpp_max: must be >= 0");
        }
        c.vpps.push_back(vpp);
        ++idx;
    }

    idx = 0;
    for (const auto& r : doc.at("renewables")) {
        const std::string path = "renewables[" + std::to_string(idx) + "]";
        require_keys(r, path.c_str(), {"bus", "kind", "forecast_profile"},
                     {"power_factor"});
        Renewable ren;
        ren.bus = get_int(r, path.c_str(), "bus");
        ren.kind = r.at("kind").get<std::string>();
        ren.forecast_profile = get_profile(r, path, "forecast_profile");
        if (r.contains("power_factor")) {
            ren.power_factor = get_num(r, path.c_str(), "power_factor");
        }
        if (ren.bus < 0 || ren.bus >= nbus) {
            throw ValidationError(path + ".bus: out of range");
        }
        if (ren.kind != "pv" && ren.kind != "wind") {
            throw ValidationError(path + ".kind: must be 'pv' or 'wind'");
        }
        for (double p : ren.forecast_profile) {
            if (p < 0.0) {
                throw ValidationError(path +
                                      ".forecast_profile: negative value");
            }
        }
        c.renewables.push_back(ren);
        ++idx;
    }

    idx = 0;
    for (const auto& l : doc.at("loads")) {
        const std::string path = "loads[" + std::to_string(idx) + "]";
        require_keys(l, path.c_str(), {"bus", "forecast_profile",
                                       "power_factor"});
        Load load;
        load.bus = get_int(l, path.c_str(), "bus");
        load.forecast_profile = get_profile(l, path, "forecast_profile");
        load.power_factor = get_num(l, path.c_str(), "power_factor");
        if (load.bus < 0 || load.bus >= nbus) {
            throw ValidationError(path + ".bus: out of range");
        }
        if (!(load.power_factor > 0.0) || load.power_factor > 1.0) {
            throw ValidationError(path + ".power_factor: must be in (0, 1]");
        }
        for (double p : load.forecast_profile) {
            if (p < 0.0) {
                throw ValidationError(path +
                                      ".forecast_profile: negative value");
            }
        }
        c.loads.push_back(load);
        ++idx;
    }

    {
        const auto& costs = doc.at("costs");
        require_keys(costs, "costs", {"c_ls", "lambda_v", "lambda_b"});
        c.costs.c_ls = get_num(costs, "costs", "c_ls");
        c.costs.lambda_v = get_num(costs, "costs", "lambda_v");
        c.costs.lambda_b = get_num(costs, "costs", "lambda_b");
        if (c.costs.c_ls < 0.0 || c.costs.lambda_v < 0.0 ||
            c.costs.lambda_b < 0.0) {
            throw ValidationError("costs: values must be >= 0");
        }
    }

    // Profile lengths: equal across entities and a whole number of days.
    int plen = -1;
    auto check_len = [&](const std::vector<double>& p, const std::string& path) {
        if (plen < 0) {
            plen = static_cast<int>(p.size());
        } else if (static_cast<int>(p.size()) != plen) {
            throw ValidationError(path + ": profile length " +
                                  std::to_string(p.size()) +
                                  " != " + std::to_string(plen));
        }
    };
    for (std::size_t i = 0; i < c.loads.size(); ++i) {
        check_len(c.loads[i].forecast_profile,
                  "loads[" + std::to_string(i) + "].forecast_profile");
    }
    for (std::size_t i = 0; i < c.renewables.size(); ++i) {
        check_len(c.renewables[i].forecast_profile,
                  "renewables[" + std::to_string(i) + "].forecast_profile");
    }
    if (plen > 0 && plen % c.periods != 0) {
        throw ValidationError(
            "loads: profile length must be a multiple of meta.periods");
    }

    for (std::size_t i = 0; i < c.buses.size(); ++i) {
        const int ref = c.buses[i].load_profile_ref;
        if (ref >= 0) {
            if (ref >= static_cast<int>(c.loads.size()) ||
                c.loads[static_cast<std::size_t>(ref)].bus !=
                    static_cast<int>(i)) {
                throw ValidationError("buses[" + std::to_string(i) +
                                      "].load_profile_ref: does not point at "
                                      "a load on this bus");
            }
        }
    }

    detail::check_connected(c);
    return c;
}

/// Loads a case from disk; JSON parse failures become ValidationError with
/// the byte offset of the first error.
inline GridCase load_case_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open case file: " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("parse error at byte " + std::to_string(e.byte) +
                              ": " + e.what());
    }
    return load_case(doc);
}

} // namespace qcommit::grid
