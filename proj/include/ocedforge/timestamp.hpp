#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ocedforge {

/// A point in time at millisecond resolution, remembering the zone offset it
/// was written with. Equality and ordering look at the instant only, so
/// `10:00+01:00` equals `09:00Z`.
class Timestamp {
public:
    constexpr Timestamp() = default;
    constexpr explicit Timestamp(std::int64_t utc_millis, int offset_minutes = 0)
        : utc_millis_(utc_millis), offset_minutes_(offset_minutes) {}

    /// Accepts `YYYY-MM-DDTHH:MM:SS[.fff][Z|+HH:MM|-HH:MM|+HHMM]`. A missing
    /// zone means UTC. Fractions beyond milliseconds are truncated.
    static std::optional<Timestamp> parse(std::string_view text);

    constexpr std::int64_t utc_millis() const noexcept { return utc_millis_; }
    constexpr int offset_minutes() const noexcept { return offset_minutes_; }

    /// ISO-8601 in the original offset, e.g. `2012-01-01T10:00:00.000+01:00`.
    std::string to_iso() const;
    /// ISO-8601 in UTC, e.g. `2012-01-01T09:00:00.000Z`.
    std::string to_utc_iso() const;

    constexpr Timestamp as_utc() const noexcept { return Timestamp(utc_millis_, 0); }

    friend constexpr bool operator==(const Timestamp& a, const Timestamp& b) noexcept {
        return a.utc_millis_ == b.utc_millis_;
    }
    friend constexpr std::strong_ordering operator<=>(const Timestamp& a, const Timestamp& b) noexcept {
        return a.utc_millis_ <=> b.utc_millis_;
    }

private:
    std::int64_t utc_millis_ = 0;
    int offset_minutes_ = 0;
};

} // namespace ocedforge
