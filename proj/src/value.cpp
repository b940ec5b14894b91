#include "ocedforge/value.hpp"

#include <charconv>

namespace ocedforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::string value_to_string(const Value& value) {
    return std::visit(overloaded{
                          [](const std::string& s) { return s; },
                          [](const Timestamp& t) { return t.to_iso(); },
                          [](std::int64_t i) { return std::to_string(i); },
                          [](double d) {
                              char buf[32];
                              auto res = std::to_chars(buf, buf + sizeof buf, d);
                              return std::string(buf, res.ptr);
                          },
                          [](bool b) { return std::string(b ? "true" : "false"); },
                          [](const UuidValue& u) { return u.text; },
                      },
                      value);
}

const char* value_type_name(const Value& value) {
    static constexpr const char* names[] = {"string", "date", "int", "float", "boolean", "id"};
    return names[value.index()];
}

} // namespace ocedforge
