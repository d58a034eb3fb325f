#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

namespace bisheaf {

using ordered_json = nlohmann::ordered_json;

/// Pretty-prints with two-space indentation, insertion-ordered keys and every
/// floating-point value written with 17 significant digits ("%.17g").
/// Non-finite floats become null.
void write_json(std::ostream& out, const ordered_json& value);
std::string to_json_text(const ordered_json& value);

/// "%.17g" with a trailing ".0" when the text would otherwise read as an integer.
std::string format_double(double v);

}  // namespace bisheaf
