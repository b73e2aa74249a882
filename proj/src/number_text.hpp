#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "lopc/mode.hpp"

namespace lopc::detail {

/// Shortest text that reads back to exactly the same double.
inline std::string format_real(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// "re" or "re+imj" / "re-imj".
inline std::string format_complex(Complex z) {
    if (z.imag() == 0.0) return format_real(z.real());
    return format_real(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + format_real(std::abs(z.imag())) + "j";
}

inline std::optional<double> parse_real(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double x = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(x)) return std::nullopt;
    return x;
}

/// Accepts "re", "re+imj", "re-imj" and "imj".
inline std::optional<Complex> parse_complex(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.back() != 'j') {
        auto re = parse_real(s);
        if (!re) return std::nullopt;
        return Complex{*re, 0.0};
    }
    s.remove_suffix(1);
    // Split at the last sign that is not leading and not an exponent sign.
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            auto re = parse_real(s.substr(0, i));
            auto im = parse_real(s.substr(i));
            if (!re || !im) return std::nullopt;
            return Complex{*re, *im};
        }
    }
    auto im = parse_real(s);
    if (!im) return std::nullopt;
    return Complex{0.0, *im};
}

} // namespace lopc::detail
