#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace qff {

using cd = std::complex<double>;

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// the 2-norm itself, not its square
inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// conjugate-linear in the first argument
inline cd cdot(const std::vector<cd>& a, const std::vector<cd>& b) {
    cd s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm2(const std::vector<cd>& a) {
    double s = 0;
    for (const auto& x : a) s += std::norm(x);
    return std::sqrt(s);
}

inline void scale(std::vector<double>& a, double c) {
    for (auto& x : a) x *= c;
}

inline void scale(std::vector<cd>& a, cd c) {
    for (auto& x : a) x *= c;
}

// a += c*b
inline void axpy(std::vector<double>& a, double c, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

inline void axpy(std::vector<cd>& a, cd c, const std::vector<cd>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

}  // namespace qff
