#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace livesum::unicode {

// Decodes UTF-8 into code points. Invalid bytes decode as U+FFFD.
std::vector<uint32_t> decode_utf8(std::string_view text);

void append_utf8(std::string& out, uint32_t cp);

// Lowercase mapping covering ASCII, Latin-1, Latin Extended-A, the horn
// letters U+01A0/U+01AF, and Latin Extended Additional. This is the full
// Vietnamese alphabet plus most Western European text; other scripts pass
// through unchanged.
uint32_t to_lower(uint32_t cp);

bool is_space(uint32_t cp);
bool is_punct(uint32_t cp);

}  // namespace livesum::unicode
