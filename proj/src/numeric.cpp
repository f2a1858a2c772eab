#include "flatdeg/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace flatdeg {

Q parse_q(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) fail("SyntaxError", "empty rational");
    if (t[0] == '+') t = t.substr(1);
    auto valid = [](const std::string& x) {
        size_t i = (!x.empty() && x[0] == '-') ? 1 : 0;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
        return true;
    };
    Q q;
    auto slash = t.find('/');
    auto dot = t.find('.');
    if (dot != std::string::npos && slash == std::string::npos) {
        std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (neg) ip = ip.substr(1);
        if (ip.empty()) ip = "0";
        if (!valid(ip) || (!fp.empty() && !valid(fp)) || (!fp.empty() && fp[0] == '-'))
            fail("SyntaxError", "bad rational '" + s + "'");
        mpz_class num(ip + fp), den(1);
        for (size_t i = 0; i < fp.size(); ++i) den *= 10;
        q = Q(num, den);
        q.canonicalize();
        return neg ? Q(-q) : q;
    }
    if (slash == std::string::npos) {
        if (!valid(t)) fail("SyntaxError", "bad rational '" + s + "'");
        return Q(mpz_class(t));
    }
    std::string n = t.substr(0, slash), d = t.substr(slash + 1);
    if (!valid(n) || !valid(d) || d[0] == '-') fail("SyntaxError", "bad rational '" + s + "'");
    mpz_class dz(d);
    if (dz == 0) fail("SyntaxError", "zero denominator in '" + s + "'");
    q = Q(mpz_class(n), dz);
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

QI QI::inv() const {
    Q n = norm();
    if (sgn(n) == 0) fail("DivisionByZero", "inverse of 0");
    return QI(re / n, -im / n);
}

QI& QI::operator*=(const QI& o) {
    Q r = re * o.re - im * o.im;
    Q i = re * o.im + im * o.re;
    re = r;
    im = i;
    return *this;
}

std::string to_string(const QI& z) {
    std::string s = z.re.get_str();
    if (sgn(z.im) >= 0) s += "+";
    s += z.im.get_str();
    s += " i";
    return s;
}

QI parse_qi(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) fail("SyntaxError", "empty complex number");
    if (t.back() != 'i') return QI(parse_q(t));
    t.pop_back();
    // split at the last sign not at position 0 and not following '/'
    size_t split = std::string::npos;
    for (size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/') {
            split = k;
            break;
        }
    }
    auto imag_of = [&](std::string x) {
        if (x.empty() || x == "+") return Q(1);
        if (x == "-") return Q(-1);
        return parse_q(x);
    };
    if (split == std::string::npos) return QI(Q(0), imag_of(t));
    return QI(parse_q(t.substr(0, split)), imag_of(t.substr(split)));
}

std::ostream& operator<<(std::ostream& os, const QI& z) { return os << to_string(z); }

std::string to_string(const Vec2& v) { return v.x.get_str() + "," + v.y.get_str(); }

int half_plane(const Vec2& v) {
    // 0: angle in [0, pi), 1: angle in [pi, 2pi)
    if (sgn(v.y) > 0) return 0;
    if (sgn(v.y) < 0) return 1;
    return sgn(v.x) > 0 ? 0 : 1;
}

bool angle_less(const Vec2& a, const Vec2& b) {
    int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return sgn(cross(a, b)) > 0;
}

bool same_direction(const Vec2& a, const Vec2& b) {
    return sgn(cross(a, b)) == 0 && sgn(dot(a, b)) > 0;
}

bool in_sector(const Vec2& u, const Vec2& a, const Vec2& b) {
    // rotate so that a sits at angle zero: compare angle(u)-angle(a) with angle(b)-angle(a)
    auto rel = [&](const Vec2& w) { return Vec2(w.x * a.x + w.y * a.y, w.y * a.x - w.x * a.y); };
    Vec2 ru = rel(u), rb = rel(b);
    if (same_direction(ru, Vec2(1, 0))) return true;
    if (same_direction(rb, Vec2(1, 0))) return true;  // full turn
    return angle_less(ru, rb);
}

Mat2 rotation_to_horizontal(const Vec2& dir) {
    Q n = dot(dir, dir);
    if (sgn(n) == 0) fail("BadDirection", "zero direction");
    // z * conj(d) / |d|^2
    return Mat2{dir.x / n, dir.y / n, -dir.y / n, dir.x / n};
}

std::vector<int> parse_permutation(const std::string& s, int n_hint) {
    std::vector<std::vector<int>> cycles;
    size_t i = 0;
    int n = n_hint;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip();
    while (i < s.size()) {
        if (s[i] != '(') fail("SyntaxError", "expected '(' in permutation '" + s + "'");
        ++i;
        std::vector<int> cyc;
        for (;;) {
            skip();
            if (i >= s.size()) fail("SyntaxError", "unterminated cycle in '" + s + "'");
            if (s[i] == ')') {
                ++i;
                break;
            }
            if (s[i] == ',') {
                ++i;
                continue;
            }
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) fail("SyntaxError", "bad entry in permutation '" + s + "'");
            int x = std::stoi(s.substr(i, j - i));
            if (x < 1) fail("SyntaxError", "permutation entries start at 1");
            cyc.push_back(x - 1);
            n = std::max(n, x);
            i = j;
        }
        cycles.push_back(cyc);
        skip();
    }
    std::vector<int> p(n);
    for (int k = 0; k < n; ++k) p[k] = k;
    std::vector<bool> seen(n, false);
    for (auto& c : cycles) {
        for (size_t k = 0; k < c.size(); ++k) {
            if (seen[c[k]]) fail("SyntaxError", "repeated entry in permutation '" + s + "'");
            seen[c[k]] = true;
            p[c[k]] = c[(k + 1) % c.size()];
        }
    }
    return p;
}

std::string permutation_to_string(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    std::ostringstream os;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        os << "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) os << " ";
            os << j + 1;
            first = false;
            j = p[j];
        }
        os << ")";
    }
    return os.str();
}

}  // namespace flatdeg
