#pragma once

#include "intlat.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace k3lat {

/// The Mukai lattice in vector coordinates (r, c, s): index 0 carries the
/// rank, indices 1..22 the K3 block, index 23 the chi - rank slot. The
/// (r, s) plane pairs by ((r', s'), (r'', s'')) = -r's'' - s'r''.
inline LatticePtr mukai_vector_lattice() {
    static const LatticePtr cached = [] {
        IntMat g(24, 24);
        auto k3 = k3_gram();
        for (std::size_t i = 0; i < 22; ++i)
            for (std::size_t j = 0; j < 22; ++j) g(1 + i, 1 + j) = k3(i, j);
        g(0, 23) = -1;
        g(23, 0) = -1;
        return make_lattice("Mukai(r,c,s)", std::move(g));
    }();
    return cached;
}

/// Mukai vector (rank, first Chern class, chi - rank).
struct MukaiVector {
    Int r;
    LatVec c;  // in the K3 lattice
    Int s;

    bool is_zero() const { return r == 0 && s == 0 && c.is_zero(); }
};

inline MukaiVector make_mukai_vector(Int r, LatVec c, Int s) {
    if (!same_lattice(*c.lattice, *make_standard(StdLattice::K3)))
        throw std::invalid_argument("make_mukai_vector: c must live in the K3 lattice");
    return MukaiVector{std::move(r), std::move(c), std::move(s)};
}

/// Shorthand for vectors (r, 0, s) with trivial first Chern class.
inline MukaiVector make_mukai_vector(Int r, Int s) {
    auto k3 = make_standard(StdLattice::K3);
    return MukaiVector{std::move(r), make_vec(k3, IntVec(22)), std::move(s)};
}

inline IntVec mukai_coords(const MukaiVector& v) {
    IntVec x(24);
    x[0] = v.r;
    for (std::size_t i = 0; i < 22; ++i) x[1 + i] = v.c.coords[i];
    x[23] = v.s;
    return x;
}

inline MukaiVector mukai_from_coords(const IntVec& x) {
    if (x.size() != 24) throw std::invalid_argument("mukai_from_coords: expected 24 coordinates");
    auto k3 = make_standard(StdLattice::K3);
    IntVec c(x.begin() + 1, x.begin() + 23);
    return MukaiVector{x[0], make_vec(k3, std::move(c)), x[23]};
}

/// (v, w) = (c_v, c_w) - r_v s_w - r_w s_v.
inline Int mukai_pairing(const MukaiVector& v, const MukaiVector& w) {
    if (!same_lattice(*v.c.lattice, *w.c.lattice))
        throw std::invalid_argument("mukai_pairing: mismatched base lattice");
    return pairing(v.c, w.c) - v.r * w.s - w.r * v.s;
}

inline Int chi(const MukaiVector& v) { return v.r + v.s; }

inline bool is_primitive(const MukaiVector& v) {
    Int g = gcd_int(gcd_int(v.r, v.s), content(v.c.coords));
    return g == 1;
}

/// Effectiveness test; the caller supplies whether c is an effective-or-trivial
/// divisor class, since that is Hodge-theoretic input a lattice cannot see.
inline bool is_effective(const MukaiVector& v, bool c_is_effective_divisor) {
    if (mukai_pairing(v, v) < -2) return false;
    if (v.r < 0) return false;
    if (v.r == 0 && !c_is_effective_divisor) return false;
    if (v.r == 0 && v.c.is_zero() && chi(v) <= 0) return false;
    return true;
}

/// Orthogonal complement of a primitive Mukai vector, as a rank-23 lattice.
/// The integral basis (returned through basis_out, columns in Mukai vector
/// coordinates) is the SNF-derived kernel basis, reordered so vectors with
/// vanishing r and s components come first.
inline LatticePtr orthogonal_complement(const MukaiVector& v, IntMat* basis_out = nullptr) {
    if (v.is_zero()) throw std::invalid_argument("orthogonal_complement: v = 0");
    if (!is_primitive(v)) throw std::invalid_argument("orthogonal_complement: v not primitive");

    auto mukai = mukai_vector_lattice();
    IntVec x = mukai_coords(v);
    IntMat row(1, 24);
    IntVec gx = mukai->gram.mul_vec(x);
    for (std::size_t j = 0; j < 24; ++j) row(0, j) = gx[j];
    IntMat basis = kernel_basis(row);
    if (basis.cols() != 23) throw std::logic_error("orthogonal_complement: unexpected kernel rank");

    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < 23; ++j)
        if (basis(0, j) == 0 && basis(23, j) == 0) order.push_back(j);
    for (std::size_t j = 0; j < 23; ++j)
        if (!(basis(0, j) == 0 && basis(23, j) == 0)) order.push_back(j);
    IntMat b(24, 23);
    for (std::size_t j = 0; j < 23; ++j) b.set_col(j, basis.col(order[j]));

    IntMat gram = b.transpose() * mukai->gram * b;
    Int vv = mukai_pairing(v, v);
    Int det = det_bareiss(gram);
    if (vv == 0 || det == 0)
        throw std::domain_error("orthogonal_complement: degenerate ((v,v) = 0)");
    if (abs_int(det) != abs_int(vv)) throw std::logic_error("orthogonal_complement: determinant mismatch");

    if (basis_out) *basis_out = b;
    return make_lattice("perp", std::move(gram));
}

// ---------------------------------------------------------------------------
// Gieseker comparison of normalized Hilbert polynomials
// ---------------------------------------------------------------------------

/// a2 n^2 + a1 n + a0, with the positive normalizer l0 (leading coefficient
/// times d! for a degree-d support).
struct HilbertPoly {
    Rat a2, a1, a0;
    Int l0 = 1;
};

/// Hilbert polynomial of a sheaf on a polarized K3 surface from its rank and
/// Chern data: (r h^2 / 2) n^2 + (h c1) n + (c1^2 - 2 c2)/2 + 2r.
inline HilbertPoly hilbert_poly_from_sheaf(const Int& r, const Int& h_sq, const Int& h_c1,
                                           const Int& c1_sq, const Int& c2) {
    HilbertPoly p;
    p.a2 = Rat(r * h_sq, 2);
    p.a1 = Rat(h_c1);
    p.a0 = Rat(c1_sq - 2 * c2, 2) + 2 * Rat(r);
    if (r > 0)
        p.l0 = r * h_sq;
    else if (h_c1 != 0)
        p.l0 = h_c1;
    else
        p.l0 = -c2;
    if (p.l0 <= 0) throw std::invalid_argument("hilbert_poly_from_sheaf: nonpositive l0");
    return p;
}

enum class Ordering { Less, Equal, Greater };

/// p/l0(p) against q/l0(q), lexicographically from the top coefficient down;
/// equivalent to eventual domination of the normalized polynomials.
inline Ordering gieseker_compare(const HilbertPoly& p, const HilbertPoly& q) {
    if (p.l0 <= 0 || q.l0 <= 0) throw std::invalid_argument("gieseker_compare: nonpositive l0");
    Rat lp(p.l0), lq(q.l0);
    for (auto [cp, cq] : {std::pair{p.a2, q.a2}, {p.a1, q.a1}, {p.a0, q.a0}}) {
        Rat dp = cp / lp, dq = cq / lq;
        if (dp < dq) return Ordering::Less;
        if (dp > dq) return Ordering::Greater;
    }
    return Ordering::Equal;
}

}  // namespace k3lat
