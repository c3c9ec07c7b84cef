#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>

#include "wesv/number_field.hpp"

namespace wesv {

// Override hook for the bundled real quadratic class number table:
// $WESV_DATA_DIR/real_quadratic_h.json, a JSON object {"<disc>": h, ...}.
std::optional<long> ingested_real_quadratic_h(long delta) {
    const char* dir = std::getenv("WESV_DATA_DIR");
    if (!dir) return std::nullopt;
    std::ifstream in(std::string(dir) + "/real_quadratic_h.json");
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (...) {
        return std::nullopt;
    }
    std::string key = std::to_string(delta);
    if (j.contains(key) && j[key].is_number_integer()) return j[key].get<long>();
    return std::nullopt;
}

}  // namespace wesv
