#pragma once

#include <string>

#include <json.hpp>

namespace livesum {

// Single-line dump that replaces invalid UTF-8 with U+FFFD instead of
// throwing; serialization must survive whatever bytes an ASR stream carries.
inline std::string dump_line(const nlohmann::json& j) {
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace livesum
