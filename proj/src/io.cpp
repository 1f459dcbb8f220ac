#include "cip/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cip {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

}  // namespace

CipInstance parse_instance(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance parse error: ") + e.what());
    }
    CipInstance inst;
    try {
        inst.n = j.at("n").get<int>();
        inst.m = j.at("m").get<int>();
        inst.a = j.at("a").get<std::vector<double>>();
        for (const auto& row : j.at("rows")) {
            std::vector<std::pair<int, double>> r;
            for (const auto& entry : row)
                r.emplace_back(entry.at(0).get<int>(), entry.at(1).get<double>());
            inst.rows.push_back(std::move(r));
        }
        if (!j.contains("d") || j["d"].is_null()) {
            inst.d.assign(inst.n, kUnbounded);
        } else {
            for (const auto& v : j["d"])
                inst.d.push_back(v.is_null() ? kUnbounded : v.get<double>());
        }
        inst.objectives = j.at("objectives").get<std::vector<std::vector<double>>>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance schema error: ") + e.what());
    }
    auto bad = validate_instance(inst);
    if (!bad.empty()) {
        std::string msg = "invalid instance:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw std::invalid_argument(msg);
    }
    return inst;
}

CipInstance read_instance(const std::string& path) { return parse_instance(slurp(path)); }

std::string instance_to_json(const CipInstance& inst) {
    json j;
    j["n"] = inst.n;
    j["m"] = inst.m;
    json rows = json::array();
    for (const auto& row : inst.rows) {
        json r = json::array();
        for (const auto& [i, c] : row) r.push_back(json::array({i, c}));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["a"] = inst.a;
    json d = json::array();
    for (double di : inst.d) {
        if (di == kUnbounded)
            d.push_back(nullptr);
        else
            d.push_back(di);
    }
    j["d"] = std::move(d);
    j["objectives"] = inst.objectives;
    return j.dump();
}

void write_instance(const CipInstance& inst, const std::string& path) {
    spill(path, instance_to_json(inst) + "\n");
}

std::vector<long long> read_solution(const std::string& path) {
    json j;
    try {
        j = json::parse(slurp(path));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("solution parse error: ") + e.what());
    }
    try {
        return j.at("x").get<std::vector<long long>>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("solution schema error: ") + e.what());
    }
}

std::string solve_report_to_json(const SolveReport& report, std::uint64_t seed) {
    json j;
    j["mode"] = to_string(report.mode);
    j["seed"] = seed;
    j["attempts"] = report.attempts;
    j["lp_value"] = report.lp_value;
    j["value"] = report.value;
    j["ratio"] = report.ratio;
    j["theoretical_ratio"] = report.theoretical_ratio;
    j["params"] = {{"sigma", report.params_used.sigma},
                   {"alpha", report.params_used.alpha},
                   {"theta", report.params_used.theta}};
    j["x"] = report.x.x;
    j["objective_values"] = report.x.objective_values;
    return j.dump();
}

void write_solve_report(const SolveReport& report, std::uint64_t seed, const std::string& path) {
    spill(path, solve_report_to_json(report, seed) + "\n");
}

std::string trace_to_jsonl(const ResampleTrace& trace) {
    std::ostringstream os;
    json init;
    init["initial_bits"] = trace.initial_bits;
    os << init.dump() << "\n";
    for (const auto& ev : trace.events) {
        json e;
        e["k"] = ev.k;
        e["Y"] = ev.resampled;
        e["turned"] = ev.turned;
        os << e.dump() << "\n";
    }
    return os.str();
}

void write_trace_jsonl(const ResampleTrace& trace, const std::string& path) {
    spill(path, trace_to_jsonl(trace));
}

}  // namespace cip
