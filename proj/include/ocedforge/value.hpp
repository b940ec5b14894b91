#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "ocedforge/timestamp.hpp"

namespace ocedforge {

/// XES `id` attribute payload (a UUID-formatted string).
struct UuidValue {
    std::string text;
    friend bool operator==(const UuidValue&, const UuidValue&) = default;
};

/// Typed attribute payload shared by XES attributes and OCED attributes.
using Value = std::variant<std::string, Timestamp, std::int64_t, double, bool, UuidValue>;

/// Lexical form used when a value becomes part of an identifier or event type.
std::string value_to_string(const Value& value);

/// XES element name for the value's type (`string`, `date`, `int`, ...).
const char* value_type_name(const Value& value);

} // namespace ocedforge
