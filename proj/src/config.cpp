#include "wncs/config.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace wncs::config {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path, "cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw config_error(path, std::string("invalid JSON: ") + e.what());
    }
}

namespace {

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }

}  // namespace

double get_number(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw config_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw config_error(join(path, key), "missing required number");
    if (!it->is_number()) throw config_error(join(path, key), "expected a number");
    return it->get<double>();
}

double get_number_or(const Json& obj, const std::string& key, const std::string& path, double fallback) {
    if (!obj.is_object()) throw config_error(path, "expected an object");
    if (!obj.contains(key)) return fallback;
    return get_number(obj, key, path);
}

std::uint64_t get_uint(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw config_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw config_error(join(path, key), "missing required integer");
    if (!it->is_number_unsigned()) {
        if (it->is_number_integer() && it->get<std::int64_t>() >= 0) return it->get<std::uint64_t>();
        throw config_error(join(path, key), "expected a non-negative integer");
    }
    return it->get<std::uint64_t>();
}

Matrix get_matrix(const Json& obj, const std::string& key, const std::string& path) {
    const std::string here = join(path, key);
    auto it = obj.find(key);
    if (it == obj.end()) throw config_error(here, "missing required matrix");
    const Json& rows = *it;
    if (!rows.is_array() || rows.empty()) throw config_error(here, "expected a non-empty array of rows");
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Json& row = rows[r];
        const std::string row_path = here + "/" + std::to_string(r);
        if (!row.is_array() || row.empty()) throw config_error(row_path, "expected a non-empty array of numbers");
        if (r == 0) cols = row.size();
        if (row.size() != cols) throw config_error(row_path, "ragged matrix: row length differs from row 0");
    }
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const Json& v = rows[r][c];
            if (!v.is_number()) {
                throw config_error(here + "/" + std::to_string(r) + "/" + std::to_string(c), "expected a number");
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.get<double>();
        }
    }
    return m;
}

std::vector<double> get_number_list(const Json& obj, const std::string& key, const std::string& path) {
    const std::string here = path + "/" + key;
    auto it = obj.find(key);
    if (it == obj.end()) throw config_error(here, "missing required array");
    if (!it->is_array()) throw config_error(here, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(it->size());
    for (std::size_t k = 0; k < it->size(); ++k) {
        const Json& v = (*it)[k];
        if (!v.is_number()) throw config_error(here + "/" + std::to_string(k), "expected a number");
        out.push_back(v.get<double>());
    }
    return out;
}

ChannelParams parse_channel(const Json& obj, const std::string& path, const std::string& omitted) {
    if (!obj.is_object()) throw config_error(path, "expected an object");
    static const char* const kKnown[] = {"p_t", "n0", "l0", "d", "eta", "omega"};
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : kKnown) known = known || item.key() == k;
        if (!known) throw config_error(path + "/" + item.key(), "unknown channel field");
    }
    if (!omitted.empty() && obj.contains(omitted)) {
        throw config_error(path + "/" + omitted, "must be omitted because it is the swept variable");
    }
    ChannelParams p;
    auto field = [&](const char* key, double& dst) {
        if (omitted != key) dst = get_number(obj, key, path);
    };
    field("p_t", p.p_t);
    field("n0", p.n0);
    field("l0", p.l0);
    field("d", p.d);
    field("eta", p.eta);
    p.omega = get_number_or(obj, "omega", path, kDefaultOmega);

    // Substitute a valid placeholder for the omitted field so the rest validates.
    ChannelParams probe = p;
    if (omitted == "p_t") probe.p_t = 1.0;
    if (omitted == "d") probe.d = 1.0;
    if (omitted == "eta") probe.eta = 1.0;
    try {
        probe.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(path, e.what());
    }
    return p;
}

LoopTopology parse_topology(const Json& obj, const std::string& path) {
    if (!obj.is_object()) throw config_error(path, "expected an object");
    LoopTopology t{get_number_list(obj, "distances", path), get_number(obj, "eta", path)};
    try {
        t.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(path, e.what());
    }
    return t;
}

McConfig parse_mc(const Json& obj, const std::string& path, McConfig defaults) {
    if (!obj.is_object()) throw config_error(path, "expected an object");
    McConfig mc = defaults;
    if (obj.contains("samples")) mc.samples = get_uint(obj, "samples", path);
    if (obj.contains("seed")) mc.seed = get_uint(obj, "seed", path);
    if (obj.contains("streams")) mc.streams = static_cast<unsigned>(get_uint(obj, "streams", path));
    if (mc.samples < 1) throw config_error(path + "/samples", "must be >= 1");
    if (mc.streams < 1) throw config_error(path + "/streams", "must be >= 1");
    return mc;
}

}  // namespace wncs::config
