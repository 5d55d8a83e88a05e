#pragma once

#define KERRML_VERSION_MAJOR 0
#define KERRML_VERSION_MINOR 1
#define KERRML_VERSION_PATCH 0

namespace kerrml {

inline constexpr const char* version_string = "0.1.0";

}  // namespace kerrml
