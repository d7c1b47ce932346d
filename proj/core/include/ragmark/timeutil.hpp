#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ragmark {

/// Parses an RFC3339 instant ("2026-01-02T03:04:05Z", optional fractional
/// seconds and numeric offsets) to UTC epoch seconds. Fractional seconds
/// are truncated. Throws ParseError on malformed input.
std::int64_t parse_rfc3339(std::string_view text);

/// Formats epoch seconds as the canonical "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339(std::int64_t epoch_seconds);

}  // namespace ragmark
