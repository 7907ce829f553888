#pragma once

#include <cstdint>
#include <string>

namespace refl {

struct Mat2 {
    int64_t a = 1, b = 0, c = 0, d = 1;
    int64_t det() const { return a * d - b * c; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 inverse() const { return {d, -b, -c, a}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    bool operator==(const Mat2&) const = default;
    std::string str() const {
        return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," + std::to_string(d) + ")";
    }
    static Mat2 S() { return {0, -1, 1, 0}; }
    static Mat2 T(int64_t n = 1) { return {1, n, 0, 1}; }
};

}  // namespace refl
