#pragma once

// Values exactly as printed in the source study's tables, kept as text so
// their printed precision is known.

#include <array>
#include <string_view>

namespace perceprice::report::printed {

// Rows: Mean, Median, Minimum, Maximum, S.E., S.D.; columns: eta_p, eta_i, ratio.
inline constexpr std::array<std::array<std::string_view, 3>, 6> kTable1Stats = {{
    {"0.02", "0.58", "-0.89"},
    {"-0.33", "0.45", "-0.68"},
    {"-1.56", "-0.9", "-8.56"},
    {"2.12", "2.62", "7.36"},
    {"0.19", "0.14", "0.65"},
    {"1.04", "0.79", "2.75"},
}};
inline constexpr std::array<std::string_view, 3> kTable1W = {"0.933", "0.967", "0.919"};
inline constexpr std::array<std::string_view, 3> kTable1P = {"0.06", "0.467", "0.03"};
inline constexpr std::string_view kTable1N = "30";

struct Term {
    std::string_view estimate;
    std::string_view se;
    std::string_view t;
    std::string_view p;
    std::string_view code;  // as printed, parentheses included
};

struct Model {
    std::string_view r_squared;
    std::string_view f;
    std::string_view f_p;  // "<0.001" when printed as an inequality
    std::string_view df;
};

inline constexpr std::array<Term, 3> kTable3 = {{
    {"-0.2131", "0.195", "-1.092", "0.285", ""},
    {"-0.6249", "0.358", "-1.747", "0.092", "(*)"},
    {"0.6280", "0.182", "3.446", "0.002", "(**)"},
}};
inline constexpr Model kTable3Model = {"0.3687", "7.884", "0.002", "27"};

inline constexpr std::array<Term, 2> kTable4 = {{
    {"-0.214", "0.230", "-0.932", "0.359", ""},
    {"0.396", "0.237", "1.674", "0.105", ""},
}};
inline constexpr Model kTable4Model = {"0.091", "2.803", "0.105", "28"};

inline constexpr std::array<Term, 2> kTable5 = {{
    {"-0.095", "0.152", "-0.622", "0.539", ""},
    {"-0.531", "0.119", "-4.460", "0.0001", "(**)"},
}};
inline constexpr Model kTable5Model = {"0.4153", "19.89", "<0.001", "28"};

inline constexpr std::array<Term, 2> kTable6 = {{
    {"0.389", "0.181", "2.156", "0.039", "(*)"},
    {"0.241", "0.193", "1.248", "0.222", ""},
}};
inline constexpr Model kTable6Model = {"0.0527", "1.557", "0.222", "28"};

}  // namespace perceprice::report::printed
