#include "perceprice/report/format.hpp"

#include <charconv>
#include <cmath>

namespace perceprice::report {

std::string format_fixed(double value, int precision)
{
    if (std::isnan(value))
        return "NaN";
    if (std::isinf(value))
        return value > 0 ? "Inf" : "-Inf";
    char buf[512];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
    std::string out(buf, res.ptr);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos)
        out.erase(0, 1);
    return out;
}

std::string format_shortest(double value)
{
    if (!std::isfinite(value))
        return format_fixed(value, 0);
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string format_trimmed(double value, int max_decimals)
{
    std::string out = format_fixed(value, max_decimals);
    if (out.find('.') == std::string::npos)
        return out;
    while (out.back() == '0')
        out.pop_back();
    if (out.back() == '.')
        out.pop_back();
    if (out == "-0")
        out = "0";
    return out;
}

int decimals_of(std::string_view printed)
{
    const auto dot = printed.find('.');
    if (dot == std::string_view::npos)
        return 0;
    int n = 0;
    for (std::size_t i = dot + 1; i < printed.size() && printed[i] >= '0' && printed[i] <= '9'; ++i)
        ++n;
    return n;
}

int p_value_precision(double p)
{
    return p < 0.001 ? 4 : 3;
}

}  // namespace perceprice::report
