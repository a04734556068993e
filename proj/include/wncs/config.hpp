#pragma once

#include "wncs/channel.hpp"
#include "wncs/montecarlo.hpp"
#include "wncs/plant.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace wncs {

// Malformed or missing configuration. `field` is a JSON-pointer-like path
// ("/channel/p_t") or the file path for I/O problems.
class config_error : public std::runtime_error {
public:
    config_error(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

namespace config {

using Json = nlohmann::json;

// Reads and parses a UTF-8 JSON file; any failure is a config_error naming the path.
Json read_json_file(const std::string& path);

double get_number(const Json& obj, const std::string& key, const std::string& path);
double get_number_or(const Json& obj, const std::string& key, const std::string& path, double fallback);
std::uint64_t get_uint(const Json& obj, const std::string& key, const std::string& path);

// Row-major nested array -> dense matrix. Ragged rows are rejected.
Matrix get_matrix(const Json& obj, const std::string& key, const std::string& path);

std::vector<double> get_number_list(const Json& obj, const std::string& key, const std::string& path);

// {"p_t", "n0", "l0", "d", "eta", "omega"}; omega defaults to 2. A field named
// by `omitted` must be absent and is left at its default.
ChannelParams parse_channel(const Json& obj, const std::string& path, const std::string& omitted = "");

// {"distances": [...], "eta": ...}
LoopTopology parse_topology(const Json& obj, const std::string& path);

// {"samples", "seed", "streams"}, each optional and falling back to `defaults`.
McConfig parse_mc(const Json& obj, const std::string& path, McConfig defaults = {});

}  // namespace config
}  // namespace wncs
