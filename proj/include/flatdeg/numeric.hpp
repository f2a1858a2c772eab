#pragma once

#include <gmpxx.h>

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flatdeg {

using Q = mpq_class;

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

Q parse_q(const std::string& s);
std::string to_string(const Q& q);

// Gaussian rational re + im*i.
struct QI {
    Q re, im;

    QI() : re(0), im(0) {}
    QI(const Q& r) : re(r), im(0) {}
    QI(const Q& r, const Q& i) : re(r), im(i) {}
    QI(int r) : re(r), im(0) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    QI conj() const { return QI(re, -im); }
    Q norm() const { return re * re + im * im; }
    QI inv() const;

    QI& operator+=(const QI& o) { re += o.re; im += o.im; return *this; }
    QI& operator-=(const QI& o) { re -= o.re; im -= o.im; return *this; }
    QI& operator*=(const QI& o);
    QI& operator/=(const QI& o) { return *this *= o.inv(); }
};

inline QI operator+(QI a, const QI& b) { return a += b; }
inline QI operator-(QI a, const QI& b) { return a -= b; }
inline QI operator*(QI a, const QI& b) { return a *= b; }
inline QI operator/(QI a, const QI& b) { return a /= b; }
inline QI operator-(const QI& a) { return QI(-a.re, -a.im); }
inline bool operator==(const QI& a, const QI& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const QI& a, const QI& b) { return !(a == b); }
inline bool operator<(const QI& a, const QI& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
}

inline const QI I_UNIT(Q(0), Q(1));

// "a/b+c/d i" style text.
std::string to_string(const QI& z);
QI parse_qi(const std::string& s);
std::ostream& operator<<(std::ostream& os, const QI& z);

struct Vec2 {
    Q x, y;
    Vec2() : x(0), y(0) {}
    Vec2(const Q& a, const Q& b) : x(a), y(b) {}
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    QI as_complex() const { return QI(x, y); }
    static Vec2 from(const QI& z) { return Vec2(z.re, z.im); }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator-(const Vec2& a) { return Vec2(-a.x, -a.y); }
inline Vec2 operator*(const Q& s, const Vec2& a) { return Vec2(s * a.x, s * a.y); }
inline bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
inline bool operator<(const Vec2& a, const Vec2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

inline Q cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Q dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
std::string to_string(const Vec2& v);

// Angular order on nonzero directions, measured ccw from (1,0) in [0, 2pi).
int half_plane(const Vec2& v);
bool angle_less(const Vec2& a, const Vec2& b);
bool same_direction(const Vec2& a, const Vec2& b);
// u lies in the half-open ccw sector [a, b); the sector is nondegenerate.
bool in_sector(const Vec2& u, const Vec2& a, const Vec2& b);

struct Mat2 {
    Q a, b, c, d;  // [[a b][c d]]
    Q det() const { return a * d - b * c; }
    Vec2 apply(const Vec2& v) const { return Vec2(a * v.x + b * v.y, c * v.x + d * v.y); }
};

// Similarity z -> z/dir, taking dir to the positive real axis.
Mat2 rotation_to_horizontal(const Vec2& dir);

// Cycle notation "(1 2)(3)" on {1..n}; returns 0-based images.
std::vector<int> parse_permutation(const std::string& s, int n_hint = 0);
std::string permutation_to_string(const std::vector<int>& p);

}  // namespace flatdeg
