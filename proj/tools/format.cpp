#include "format.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

#include "so3mes/qmath.hpp"

namespace so3mes::cli {

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

double round_to_printed(double x) {
    const std::string s = format_number(x);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

std::optional<double> parse_time_token(std::string_view token, double omega) {
    constexpr std::string_view kSuffix = "pi/omega";
    double factor = 1.0;
    std::string_view number = token;
    bool symbolic = false;
    if (token.size() >= kSuffix.size() && token.substr(token.size() - kSuffix.size()) == kSuffix) {
        symbolic = true;
        number = token.substr(0, token.size() - kSuffix.size());
        if (!number.empty() && number.back() == '*') number.remove_suffix(1);
        if (number.empty()) return kPi / omega;
    }
    const auto res = std::from_chars(number.data(), number.data() + number.size(), factor);
    if (res.ec != std::errc() || res.ptr != number.data() + number.size()) return std::nullopt;
    return symbolic ? factor * kPi / omega : factor;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string checksum_hex(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

}  // namespace so3mes::cli
