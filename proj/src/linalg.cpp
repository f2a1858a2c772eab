#include "flatdeg/linalg.hpp"

namespace flatdeg {

CVec zeros(int n) { return CVec(n); }

CVec unit(int n, int i) {
    CVec v(n);
    v[i] = QI(1);
    return v;
}

CVec add(const CVec& a, const CVec& b) {
    CVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

CVec sub(const CVec& a, const CVec& b) {
    CVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

CVec scale(const QI& s, const CVec& a) {
    CVec r = a;
    for (auto& x : r) x *= s;
    return r;
}

void axpy(CVec& y, const QI& s, const CVec& x) {
    if (s.is_zero()) return;
    bool real = s.is_real();
    for (size_t i = 0; i < y.size(); ++i) {
        if (x[i].is_zero()) continue;
        if (real) {
            y[i].re += s.re * x[i].re;
            y[i].im += s.re * x[i].im;
        } else {
            y[i] += s * x[i];
        }
    }
}

QI dotc(const CVec& a, const CVec& b) {
    QI s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

bool is_zero(const CVec& a) {
    for (auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

bool is_real(const CVec& a) {
    for (auto& x : a)
        if (!x.is_real()) return false;
    return true;
}

CVec real_part(const CVec& a) {
    CVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = QI(a[i].re);
    return r;
}

CVec imag_part(const CVec& a) {
    CVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = QI(a[i].im);
    return r;
}

CVec conj(const CVec& a) {
    CVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].conj();
    return r;
}

std::vector<int> rref(CMat& m, int ncols) {
    std::vector<int> piv;
    int r = 0;
    int rows = static_cast<int>(m.size());
    for (int c = 0; c < ncols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        QI inv = m[r][c].inv();
        for (int j = c; j < ncols; ++j)
            if (!m[r][j].is_zero()) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            QI f = -m[i][c];
            axpy(m[i], f, m[r]);
        }
        piv.push_back(c);
        ++r;
    }
    m.resize(r);
    return piv;
}

int rank(CMat m, int ncols) { return static_cast<int>(rref(m, ncols).size()); }

CMat nullspace(const CMat& m0, int ncols) {
    CMat m = m0;
    auto piv = rref(m, ncols);
    std::vector<int> where(ncols, -1);
    for (size_t i = 0; i < piv.size(); ++i) where[piv[i]] = static_cast<int>(i);
    CMat out;
    for (int f = 0; f < ncols; ++f) {
        if (where[f] >= 0) continue;
        CVec v(ncols);
        v[f] = QI(1);
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<CVec> solve(const CMat& m0, const CVec& rhs, int ncols) {
    CMat m;
    m.reserve(m0.size());
    for (size_t i = 0; i < m0.size(); ++i) {
        CVec row = m0[i];
        row.push_back(rhs[i]);
        m.push_back(std::move(row));
    }
    auto piv = rref(m, ncols + 1);
    if (!piv.empty() && piv.back() == ncols) return std::nullopt;
    CVec x(ncols);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][ncols];
    return x;
}

Subspace::Subspace(int n, CMat vectors) : n_(n), basis_(std::move(vectors)) {
    for (auto& v : basis_)
        if (static_cast<int>(v.size()) != n_) fail("DimensionMismatch", "vector length differs from ambient dimension");
    rref(basis_, n_);
}

Subspace Subspace::full(int n) {
    CMat b;
    for (int i = 0; i < n; ++i) b.push_back(unit(n, i));
    return Subspace(n, b);
}

std::optional<CVec> Subspace::coords(const CVec& v) const {
    if (static_cast<int>(v.size()) != n_) fail("DimensionMismatch", "vector length differs from ambient dimension");
    // basis is in rref: coefficient of basis row i is v at its pivot
    CVec c(basis_.size());
    CVec r = v;
    for (size_t i = 0; i < basis_.size(); ++i) {
        int p = 0;
        while (basis_[i][p].is_zero()) ++p;
        c[i] = r[p];
        axpy(r, -c[i], basis_[i]);
    }
    if (!is_zero(r)) return std::nullopt;
    return c;
}

bool Subspace::contains(const CVec& v) const { return coords(v).has_value(); }

bool Subspace::contains(const Subspace& o) const {
    for (auto& v : o.basis_)
        if (!contains(v)) return false;
    return true;
}

bool Subspace::operator==(const Subspace& o) const {
    return n_ == o.n_ && dim() == o.dim() && contains(o);
}

Subspace Subspace::plus(const Subspace& o) const {
    CMat b = basis_;
    b.insert(b.end(), o.basis_.begin(), o.basis_.end());
    return Subspace(n_, b);
}

Subspace Subspace::plus(const CVec& v) const {
    CMat b = basis_;
    b.push_back(v);
    return Subspace(n_, b);
}

Subspace Subspace::intersect(const Subspace& o) const {
    // x = sum a_i A_i = sum b_j B_j ; solve [A^T | -B^T] (a,b) = 0
    int ka = dim(), kb = o.dim();
    if (ka == 0 || kb == 0) return Subspace(n_);
    CMat m(n_, CVec(ka + kb));
    for (int i = 0; i < ka; ++i)
        for (int r = 0; r < n_; ++r) m[r][i] = basis_[i][r];
    for (int j = 0; j < kb; ++j)
        for (int r = 0; r < n_; ++r) m[r][ka + j] = -o.basis_[j][r];
    CMat ns = nullspace(m, ka + kb);
    CMat out;
    for (auto& s : ns) {
        CVec x(n_);
        for (int i = 0; i < ka; ++i) axpy(x, s[i], basis_[i]);
        out.push_back(std::move(x));
    }
    return Subspace(n_, out);
}

Subspace Subspace::annihilated_by(const CMat& fs) const {
    int k = dim();
    if (k == 0 || fs.empty()) return *this;
    CMat m;
    for (auto& f : fs) {
        CVec row(k);
        for (int i = 0; i < k; ++i) row[i] = dotc(f, basis_[i]);
        m.push_back(std::move(row));
    }
    CMat ns = nullspace(m, k);
    CMat out;
    for (auto& s : ns) {
        CVec x(n_);
        for (int i = 0; i < k; ++i) axpy(x, s[i], basis_[i]);
        out.push_back(std::move(x));
    }
    return Subspace(n_, out);
}

bool Subspace::closed_under_conj() const {
    for (auto& v : basis_)
        if (!contains(conj(v))) return false;
    return true;
}

}  // namespace flatdeg
