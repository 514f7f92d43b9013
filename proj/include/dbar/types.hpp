#pragma once

#include <cmath>
#include <complex>

namespace dbar {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Real 3-vector
// ---------------------------------------------------------------------------

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// ---------------------------------------------------------------------------
// Complex 3-vector.  dot() is the bilinear product (no conjugation), which is
// the product appearing in k^2 = 0 and p^2 = 2 k p.
// ---------------------------------------------------------------------------

struct CVec3 {
    Complex x{}, y{}, z{};
};

inline CVec3 operator+(const CVec3& a, const CVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline CVec3 operator-(const CVec3& a, const CVec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline CVec3 operator*(Complex s, const CVec3& v) { return {s * v.x, s * v.y, s * v.z}; }

inline CVec3 to_cvec(const Vec3& v) { return {Complex(v.x), Complex(v.y), Complex(v.z)}; }
inline CVec3 operator+(const CVec3& a, const Vec3& b) { return a + to_cvec(b); }

inline Complex dot(const CVec3& a, const CVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Complex dot(const CVec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 real(const CVec3& v) { return {v.x.real(), v.y.real(), v.z.real()}; }
inline Vec3 imag(const CVec3& v) { return {v.x.imag(), v.y.imag(), v.z.imag()}; }

// |k| = ((Re k)^2 + (Im k)^2)^{1/2}
inline double norm(const CVec3& v) {
    const Vec3 re = real(v), im = imag(v);
    return std::sqrt(dot(re, re) + dot(im, im));
}

inline bool finite(const CVec3& v) {
    return finite(real(v)) && finite(imag(v));
}

}  // namespace dbar
