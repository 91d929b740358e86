#pragma once

#include <string>

namespace gexlab {

/// Full-precision decimal rendering ("%.17g"); byte-stable across runs.
std::string formatReal(double value);

/// Shortest decimal that round-trips, for names and messages.
std::string formatShort(double value);

}  // namespace gexlab
