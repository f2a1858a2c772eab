#pragma once

#include "flatdeg/numeric.hpp"

#include <optional>
#include <vector>

namespace flatdeg {

using CVec = std::vector<QI>;
using CMat = std::vector<CVec>;  // row-major

CVec zeros(int n);
CVec unit(int n, int i);
CVec add(const CVec& a, const CVec& b);
CVec sub(const CVec& a, const CVec& b);
CVec scale(const QI& s, const CVec& a);
void axpy(CVec& y, const QI& s, const CVec& x);  // y += s*x
QI dotc(const CVec& a, const CVec& b);            // bilinear, no conjugation
bool is_zero(const CVec& a);
bool is_real(const CVec& a);
CVec real_part(const CVec& a);
CVec imag_part(const CVec& a);
CVec conj(const CVec& a);

// In-place reduced row echelon form; returns pivot columns, zero rows dropped.
std::vector<int> rref(CMat& m, int ncols);
int rank(CMat m, int ncols);
// Basis of {x : m x = 0}.
CMat nullspace(const CMat& m, int ncols);
// Particular solution with free variables set to zero.
std::optional<CVec> solve(const CMat& m, const CVec& rhs, int ncols);

// A linear subspace of C^n stored as an rref basis.
class Subspace {
public:
    Subspace() : n_(0) {}
    explicit Subspace(int n) : n_(n) {}
    Subspace(int n, CMat vectors);
    static Subspace full(int n);

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const CMat& basis() const { return basis_; }

    bool contains(const CVec& v) const;
    bool contains(const Subspace& o) const;
    bool operator==(const Subspace& o) const;
    // Coefficients of v in basis(); nullopt if v is not in the span.
    std::optional<CVec> coords(const CVec& v) const;

    Subspace plus(const Subspace& o) const;
    Subspace plus(const CVec& v) const;
    Subspace intersect(const Subspace& o) const;
    // {x in this : f(x) = 0 for f in fs}, functionals given as coefficient vectors.
    Subspace annihilated_by(const CMat& fs) const;
    // Defined over R: the conjugate of every vector lies in the span.
    bool closed_under_conj() const;

private:
    int n_;
    CMat basis_;
};

}  // namespace flatdeg
