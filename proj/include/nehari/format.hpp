#pragma once

#include <string>

namespace nehari {

/// Locale-independent %.17g.
std::string fmt17(double v);

/// Shorter form for human-readable output (%.6g, locale-independent).
std::string fmt6(double v);

}  // namespace nehari
