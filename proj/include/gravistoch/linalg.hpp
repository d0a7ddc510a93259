#pragma once
#include <array>
#include <cmath>
#include <cstddef>

namespace gravistoch {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

inline Vec3 sub(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 normalized(const Vec3& a) { return scaled(a, 1.0 / norm(a)); }

inline Mat3 outer(const Vec3& a, const Vec3& b) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = a[i] * b[j];
    return m;
}

inline Mat3 zero_mat3() { return {{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}}; }

inline double trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

// Frobenius inner product.
inline double contract(const Mat3& a, const Mat3& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a[i][j] * b[i][j];
    return s;
}

// Dense rank-4 tensor on spatial indices.
class Rank4 {
  public:
    double& operator()(int i, int j, int k, int l) { return v_[idx(i, j, k, l)]; }
    double operator()(int i, int j, int k, int l) const { return v_[idx(i, j, k, l)]; }

    Rank4& operator+=(const Rank4& o) {
        for (std::size_t n = 0; n < v_.size(); ++n) v_[n] += o.v_[n];
        return *this;
    }
    Rank4& operator*=(double s) {
        for (double& x : v_) x *= s;
        return *this;
    }

    double max_abs_diff(const Rank4& o) const {
        double m = 0.0;
        for (std::size_t n = 0; n < v_.size(); ++n)
            m = std::max(m, std::abs(v_[n] - o.v_[n]));
        return m;
    }

  private:
    static std::size_t idx(int i, int j, int k, int l) {
        return static_cast<std::size_t>(((i * 3 + j) * 3 + k) * 3 + l);
    }
    std::array<double, 81> v_{};
};

}  // namespace gravistoch
