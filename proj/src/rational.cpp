#include "rainbowcc/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rainbowcc {

std::string exact_string(const Rational& value) {
    if (value.denominator() == 1) {
        return std::to_string(value.numerator());
    }
    return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

namespace {

bool terminates(std::int64_t den) {
    while (den % 2 == 0) den /= 2;
    while (den % 5 == 0) den /= 5;
    return den == 1;
}

std::string trimmed_decimal(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, v);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

}  // namespace

std::string display_string(const Rational& value) {
    if (value.denominator() == 1) {
        return std::to_string(value.numerator());
    }
    if (terminates(value.denominator())) {
        return trimmed_decimal(to_double(value), 12);
    }
    return trimmed_decimal(to_double(value), 4) + " (" + exact_string(value) + ")";
}

double to_double(const Rational& value) {
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

}  // namespace rainbowcc
