#pragma once

#include "snf.hpp"

#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

/// A finite-rank free abelian group with an even symmetric integer Gram matrix.
struct Lattice {
    std::string label;
    IntMat gram;

    std::size_t rank() const { return gram.rows(); }
    Int det() const { return det_bareiss(gram); }
    Signature signature() const { return signature_of(gram); }
};

using LatticePtr = std::shared_ptr<const Lattice>;

inline LatticePtr make_lattice(std::string label, IntMat gram) {
    if (!gram.is_symmetric()) throw std::invalid_argument("make_lattice: gram not symmetric");
    for (std::size_t i = 0; i < gram.rows(); ++i)
        if (gram(i, i) % 2 != 0) throw std::invalid_argument("make_lattice: gram not even");
    return std::make_shared<Lattice>(Lattice{std::move(label), std::move(gram)});
}

inline bool same_lattice(const Lattice& a, const Lattice& b) { return a.gram == b.gram; }

/// Integer coordinate vector in a named lattice.
struct LatVec {
    LatticePtr lattice;
    IntVec coords;

    bool is_primitive() const { return content(coords) == 1; }
    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
};

inline LatVec make_vec(LatticePtr lat, IntVec coords) {
    if (coords.size() != lat->rank()) throw std::invalid_argument("make_vec: coordinate length mismatch");
    return LatVec{std::move(lat), std::move(coords)};
}

inline Int pairing(const LatVec& x, const LatVec& y) {
    if (!same_lattice(*x.lattice, *y.lattice)) throw std::invalid_argument("pairing: different lattices");
    return bilinear(x.lattice->gram, x.coords, y.coords);
}

inline Int norm(const LatVec& x) { return pairing(x, x); }

inline bool is_isometry(const Lattice& lat, const IntMat& m) {
    if (m.rows() != lat.rank() || m.cols() != lat.rank())
        throw std::invalid_argument("is_isometry: dimension mismatch");
    return m.transpose() * lat.gram * m == lat.gram;
}

struct Isometry {
    LatticePtr lattice;
    IntMat matrix;

    Isometry inverse() const;
    Isometry operator*(const Isometry& o) const;
};

inline Isometry make_isometry(LatticePtr lat, IntMat m) {
    if (!is_isometry(*lat, m)) throw std::invalid_argument("make_isometry: matrix does not preserve gram");
    return Isometry{std::move(lat), std::move(m)};
}

inline Isometry Isometry::inverse() const {
    auto inv = rat_inverse(to_rat(matrix));
    if (!inv || !k3lat::is_integral(*inv)) throw std::logic_error("Isometry::inverse: not unimodular");
    return Isometry{lattice, to_int(*inv)};
}

inline Isometry Isometry::operator*(const Isometry& o) const {
    if (!same_lattice(*lattice, *o.lattice)) throw std::invalid_argument("Isometry compose: different lattices");
    return Isometry{lattice, matrix * o.matrix};
}

// ---------------------------------------------------------------------------
// Standard lattices
// ---------------------------------------------------------------------------

inline IntMat hyperbolic_gram() { return IntMat::from_rows({{0, 1}, {1, 0}}); }

/// Gram of -E8: Dynkin-diagram convention, diagonal -2, adjacency +1.
/// Nodes 0..6 form a chain; node 7 attaches to node 2.
inline IntMat e8neg_gram() {
    IntMat g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
    auto edge = [&](std::size_t a, std::size_t b) { g(a, b) = g(b, a) = 1; };
    for (std::size_t i = 0; i + 1 < 7; ++i) edge(i, i + 1);
    edge(2, 7);
    return g;
}

inline IntMat block_diag(const std::vector<IntMat>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    IntMat g(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) g(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return g;
}

inline LatticePtr direct_sum(const Lattice& a, const Lattice& b) {
    return make_lattice(a.label + "+" + b.label, block_diag({a.gram, b.gram}));
}

inline IntMat k3_gram() {
    auto u = hyperbolic_gram();
    auto e = e8neg_gram();
    return block_diag({u, u, u, e, e});
}

enum class StdLattice { U, E8neg, K3, Mukai };

inline LatticePtr make_standard(StdLattice which) {
    static const LatticePtr u = make_lattice("U", hyperbolic_gram());
    static const LatticePtr e8 = make_lattice("-E8", e8neg_gram());
    static const LatticePtr k3 = make_lattice("K3", k3_gram());
    static const LatticePtr mukai =
        make_lattice("Mukai", block_diag({hyperbolic_gram(), hyperbolic_gram(), hyperbolic_gram(),
                                          hyperbolic_gram(), e8neg_gram(), e8neg_gram()}));
    switch (which) {
        case StdLattice::U: return u;
        case StdLattice::E8neg: return e8;
        case StdLattice::K3: return k3;
        case StdLattice::Mukai: return mukai;
    }
    throw std::invalid_argument("make_standard: unknown lattice");
}

/// Beauville-Bogomolov lattice of the Hilbert scheme of n points:
/// K3 block first, then the diagonal class delta with (delta, delta) = 2 - 2n.
inline LatticePtr make_hilbert(int n) {
    if (n < 2) throw std::invalid_argument("make_hilbert: n must be >= 2");
    IntMat d(1, 1);
    d(0, 0) = 2 - 2 * Int(n);
    return make_lattice("Hilb(" + std::to_string(n) + ")", block_diag({k3_gram(), d}));
}

// ---------------------------------------------------------------------------
// Discriminant groups
// ---------------------------------------------------------------------------

/// The finite group L*/L with its residual quadratic form q : L*/L -> Q/2Z.
struct DiscGroup {
    std::vector<Int> orders;  // invariant factors > 1, ascending divisibility
    std::vector<Rat> q_values;  // q(generator_i) reduced into [0, 2)
    RatMat lift;  // rank x orders.size(); generator lifts in lattice coordinates

    Int order() const {
        Int o = 1;
        for (const auto& d : orders) o *= d;
        return o;
    }
    bool trivial() const { return orders.empty(); }
    bool cyclic() const { return orders.size() <= 1; }

    /// Class of a dual vector (rational lattice coordinates) as coefficients
    /// on the stored generators, each reduced into [0, d_i).
    std::vector<Int> class_of(const RatVec& y) const;

    // Internal presentation data.
    IntMat gram;  // copy of the lattice gram
    IntMat proj;  // P of the SNF: class coordinates of x in Z^n/(gram Z^n) are (P x) mod diag
    std::vector<Int> diag;  // full SNF diagonal, including 1s
    std::vector<std::size_t> gen_index;  // positions of nontrivial factors in diag
};

inline std::vector<Int> DiscGroup::class_of(const RatVec& y) const {
    RatVec gy = to_rat(gram).mul_vec(y);
    IntVec x(gy.size());
    for (std::size_t i = 0; i < gy.size(); ++i) {
        if (!is_integral(gy[i])) throw std::invalid_argument("class_of: vector not in the dual lattice");
        x[i] = to_int(gy[i]);
    }
    IntVec c = proj.mul_vec(x);
    std::vector<Int> out;
    out.reserve(gen_index.size());
    for (std::size_t t = 0; t < gen_index.size(); ++t) {
        Int d = diag[gen_index[t]];
        Int v = c[gen_index[t]] % d;
        if (v < 0) v += d;
        out.push_back(v);
    }
    return out;
}

inline Int mod_inverse(Int a, const Int& m) {
    Int g = m, x = 0, x1 = 1;
    a %= m;
    if (a < 0) a += m;
    Int b = a;
    while (b != 0) {
        Int q = g / b;
        Int t = g - q * b;
        g = b;
        b = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw std::domain_error("mod_inverse: not invertible");
    x %= m;
    if (x < 0) x += m;
    return x;
}

/// Coefficient a with class(y) = a * class(generator t), for cyclic factors.
inline Int express_in_generator(const DiscGroup& d, const RatVec& y, std::size_t t) {
    Int m = d.orders.at(t);
    Int cy = d.class_of(y).at(t);
    Int cg = d.class_of(d.lift.col(t)).at(t);
    return (cy * mod_inverse(cg, m)) % m;
}

inline DiscGroup discriminant_group(const Lattice& lat) {
    const std::size_t n = lat.rank();
    Snf f = smith(lat.gram);
    DiscGroup d;
    d.gram = lat.gram;
    d.proj = f.p;
    d.diag = f.diagonal();
    for (std::size_t i = 0; i < d.diag.size(); ++i) {
        if (d.diag[i] == 0) throw std::domain_error("discriminant_group: singular gram");
        if (d.diag[i] > 1) d.gen_index.push_back(i);
    }

    auto gram_inv = rat_inverse(to_rat(lat.gram));
    if (!gram_inv) throw std::domain_error("discriminant_group: singular gram");
    auto p_inv = rat_inverse(to_rat(f.p));
    RatMat dual_gens = *gram_inv * *p_inv;  // column i lifts SNF generator i

    d.lift = RatMat(n, d.gen_index.size());
    for (std::size_t t = 0; t < d.gen_index.size(); ++t) {
        d.orders.push_back(d.diag[d.gen_index[t]]);
        d.lift.set_col(t, dual_gens.col(d.gen_index[t]));
    }

    // Cyclic case: prefer the last dual-basis vector as generator when it
    // generates, so Hilb(n)-shaped lattices always expose the delta coset.
    if (d.orders.size() == 1 && n > 0) {
        RatVec last = gram_inv->col(n - 1);
        auto cls = d.class_of(last);
        if (gcd_int(cls[0], d.orders[0]) == 1) d.lift.set_col(0, last);
    }

    d.q_values.clear();
    for (std::size_t t = 0; t < d.orders.size(); ++t) {
        RatVec g = d.lift.col(t);
        Rat q = dot(g, to_rat(lat.gram).mul_vec(g));
        d.q_values.push_back(mod_2z(q));
    }
    return d;
}

}  // namespace k3lat
