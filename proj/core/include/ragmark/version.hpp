#pragma once

namespace ragmark {

inline constexpr const char* kEngineVersion = "ragmark 0.1.0";

}  // namespace ragmark
