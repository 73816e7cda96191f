#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "symptrace/intpoly.hpp"

namespace symptrace {

/// Parses ASCII polynomials such as "x^5 - 3x^2 + 2*x - 7".
/// Terms are `c`, `c*x^k`, `cx^k`, `x^k` or `x`, joined by + and -; whitespace is ignored.
inline IntPoly parse_poly(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (s.empty()) throw Error("empty polynomial");

    std::map<int, BigInt> terms;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw Error("cannot parse polynomial '" + std::string(text) + "': " + why);
    };
    auto read_int = [&](std::string& out) {
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out.push_back(s[i++]);
    };

    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail("expected + or -");
        }
        first = false;

        std::string digits;
        read_int(digits);
        BigInt coef = digits.empty() ? BigInt(1) : BigInt(digits);
        int power = 0;
        if (i < s.size() && s[i] == '*') {
            if (digits.empty()) fail("dangling *");
            ++i;
            if (i >= s.size() || s[i] != 'x') fail("expected x after *");
        }
        if (i < s.size() && s[i] == 'x') {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string exp;
                read_int(exp);
                if (exp.empty()) fail("missing exponent");
                if (exp.size() > 4) fail("exponent too large");
                power = std::stoi(exp);
            }
        } else if (digits.empty()) {
            fail("empty term");
        }
        terms[power] += sign * coef;
    }

    int top = terms.empty() ? 0 : terms.rbegin()->first;
    std::vector<BigInt> coeffs(static_cast<std::size_t>(top) + 1, BigInt(0));
    for (const auto& [k, v] : terms) coeffs[static_cast<std::size_t>(k)] = v;
    return IntPoly(std::move(coeffs));
}

}  // namespace symptrace
