#include "ocedforge/timestamp.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

namespace ocedforge {

namespace {

constexpr std::int64_t kMillisPerDay = 86'400'000;

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }

    bool accept(char c) {
        if (peek() != c) {
            return false;
        }
        ++pos_;
        return true;
    }

    std::optional<int> digits(std::size_t count) {
        if (pos_ + count > text_.size()) {
            return std::nullopt;
        }
        int value = 0;
        for (std::size_t i = 0; i < count; ++i) {
            char c = text_[pos_ + i];
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
            value = value * 10 + (c - '0');
        }
        pos_ += count;
        return value;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string format(std::int64_t local_millis, int offset_minutes, bool utc_designator) {
    using namespace std::chrono;
    std::int64_t days = local_millis / kMillisPerDay;
    std::int64_t rem = local_millis % kMillisPerDay;
    if (rem < 0) {
        rem += kMillisPerDay;
        --days;
    }
    year_month_day ymd{sys_days{std::chrono::days{days}}};
    const int hour = static_cast<int>(rem / 3'600'000);
    const int minute = static_cast<int>(rem / 60'000 % 60);
    const int second = static_cast<int>(rem / 1000 % 60);
    const int milli = static_cast<int>(rem % 1000);

    char buf[48];
    int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03d", static_cast<int>(ymd.year()),
                          static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hour, minute, second,
                          milli);
    std::string out(buf, static_cast<std::size_t>(n));
    if (utc_designator) {
        out += 'Z';
    } else {
        const int abs_off = std::abs(offset_minutes);
        std::snprintf(buf, sizeof buf, "%c%02d:%02d", offset_minutes < 0 ? '-' : '+', abs_off / 60, abs_off % 60);
        out += buf;
    }
    return out;
}

} // namespace

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
    using namespace std::chrono;
    Cursor in(text);
    auto y = in.digits(4);
    if (!y || !in.accept('-')) return std::nullopt;
    auto mo = in.digits(2);
    if (!mo || !in.accept('-')) return std::nullopt;
    auto d = in.digits(2);
    if (!d || !in.accept('T')) return std::nullopt;
    auto h = in.digits(2);
    if (!h || !in.accept(':')) return std::nullopt;
    auto mi = in.digits(2);
    if (!mi || !in.accept(':')) return std::nullopt;
    auto s = in.digits(2);
    if (!s) return std::nullopt;

    int millis = 0;
    if (in.accept('.')) {
        int scale = 100;
        int count = 0;
        while (!in.done() && in.peek() >= '0' && in.peek() <= '9') {
            if (scale > 0) {
                millis += (in.peek() - '0') * scale;
                scale /= 10;
            }
            in.digits(1);
            ++count;
        }
        if (count == 0) return std::nullopt;
    }

    int offset = 0;
    if (in.accept('Z')) {
        offset = 0;
    } else if (in.peek() == '+' || in.peek() == '-') {
        const int sign = in.accept('-') ? -1 : (in.accept('+'), 1);
        auto oh = in.digits(2);
        if (!oh) return std::nullopt;
        in.accept(':');
        auto om = in.digits(2);
        if (!om || *oh > 23 || *om > 59) return std::nullopt;
        offset = sign * (*oh * 60 + *om);
    }
    if (!in.done()) return std::nullopt;

    year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok() || *h > 23 || *mi > 59 || *s > 59) return std::nullopt;

    const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
    const std::int64_t local = days * kMillisPerDay + *h * 3'600'000LL + *mi * 60'000LL + *s * 1000LL + millis;
    return Timestamp(local - offset * 60'000LL, offset);
}

std::string Timestamp::to_iso() const {
    return format(utc_millis_ + offset_minutes_ * 60'000LL, offset_minutes_, false);
}

std::string Timestamp::to_utc_iso() const { return format(utc_millis_, 0, true); }

} // namespace ocedforge
