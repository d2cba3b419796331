#pragma once

#include "mukai.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace k3lat {

// ---------------------------------------------------------------------------
// Reflections
// ---------------------------------------------------------------------------

/// rho_u(w) = (-2/(u,u)) w + (w,u) u, defined for (u,u) = 2 or -2. For
/// (u,u) = -2 this is the reflection fixing u-perp; for (u,u) = 2 it is
/// minus that reflection.
inline Isometry reflection(const LatVec& u) {
    Int uu = norm(u);
    if (uu != 2 && uu != -2) throw std::invalid_argument("reflection: (u,u) must be +2 or -2");
    const std::size_t n = u.lattice->rank();
    IntVec gu = u.lattice->gram.mul_vec(u.coords);
    Int scale = -2 / uu;  // +1 or -1
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = scale;
        for (std::size_t j = 0; j < n; ++j) m(i, j) += u.coords[i] * gu[j];
    }
    return make_isometry(u.lattice, std::move(m));
}

// ---------------------------------------------------------------------------
// Orientation characters
// ---------------------------------------------------------------------------

/// A lattice together with an ordered rational frame spanning a maximal
/// positive-definite subspace. The orientation character computed from it is
/// frame-independent; the frame only fixes a concrete computation.
struct OrientedLattice {
    LatticePtr lattice;
    RatMat frame;  // rank x d, columns ordered
};

inline OrientedLattice make_oriented(LatticePtr lat, RatMat frame) {
    if (frame.rows() != lat->rank()) throw std::invalid_argument("make_oriented: frame row mismatch");
    RatMat g = to_rat(lat->gram);
    RatMat gf = frame.transpose() * g * frame;
    // Positive definiteness via leading principal minors.
    for (std::size_t k = 1; k <= gf.rows(); ++k) {
        RatMat minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = gf(i, j);
        Rat det = 1;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t pv = k;
            for (std::size_t i = c; i < k; ++i)
                if (minor(i, c) != 0) {
                    pv = i;
                    break;
                }
            if (pv == k) {
                det = 0;
                break;
            }
            if (pv != c) {
                for (std::size_t j = 0; j < k; ++j) std::swap(minor(pv, j), minor(c, j));
                det = -det;
            }
            det *= minor(c, c);
            for (std::size_t i = c + 1; i < k; ++i) {
                Rat f = minor(i, c) / minor(c, c);
                for (std::size_t j = c; j < k; ++j) minor(i, j) -= f * minor(c, j);
            }
        }
        if (det <= 0) throw std::invalid_argument("make_oriented: frame not positive definite");
    }
    return OrientedLattice{std::move(lat), std::move(frame)};
}

/// Standard frame from the first hyperbolic blocks: e_i + f_i per U summand.
inline RatMat hyperbolic_frame(std::size_t rank, std::size_t first_index, std::size_t blocks) {
    RatMat f(rank, blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        f(first_index + 2 * b, b) = 1;
        f(first_index + 2 * b + 1, b) = 1;
    }
    return f;
}

inline OrientedLattice oriented_hilbert(int n) {
    return make_oriented(make_hilbert(n), hyperbolic_frame(23, 0, 3));
}

/// Mukai lattice in (r, c, s) coordinates; the fourth positive direction is
/// the (1, 0, -1) vector of the rank slots.
inline OrientedLattice oriented_mukai_vector() {
    auto lat = mukai_vector_lattice();
    RatMat f(24, 4);
    for (std::size_t b = 0; b < 3; ++b) {
        f(1 + 2 * b, b) = 1;
        f(2 + 2 * b, b) = 1;
    }
    f(0, 3) = 1;
    f(23, 3) = -1;
    return make_oriented(lat, std::move(f));
}

inline OrientedLattice oriented_standard_mukai() {
    return make_oriented(make_standard(StdLattice::Mukai), hyperbolic_frame(24, 0, 4));
}

inline Rat det_small(RatMat a) {
    const std::size_t n = a.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pv = n;
        for (std::size_t i = c; i < n; ++i)
            if (a(i, c) != 0) {
                pv = i;
                break;
            }
        if (pv == n) return 0;
        if (pv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pv, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Rat f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Sign of the determinant of g acting on the positive part: project g(frame)
/// back onto span(frame) and take the determinant sign, exactly.
inline int orientation_character(const OrientedLattice& ol, const IntMat& g) {
    if (!is_isometry(*ol.lattice, g)) throw std::invalid_argument("orientation_character: not an isometry");
    RatMat gq = to_rat(g);
    RatMat f = ol.frame;
    RatMat gram_f = f.transpose() * to_rat(ol.lattice->gram) * f;
    RatMat rhs = f.transpose() * to_rat(ol.lattice->gram) * (gq * f);
    auto inv = rat_inverse(gram_f);
    if (!inv) throw std::logic_error("orientation_character: degenerate frame gram");
    Rat det = det_small(*inv * rhs);
    if (det == 0) throw std::logic_error("orientation_character: degenerate projection");
    return det > 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Residual action on the discriminant group
// ---------------------------------------------------------------------------

/// Action of an isometry on a cyclic discriminant group: multiplication by a
/// unit modulo the group order.
struct ResidualAction {
    Int multiplier;  // in [0, modulus)
    Int modulus;

    bool is_plus_minus_one() const {
        return modulus <= 2 || multiplier == 1 || multiplier == modulus - 1;
    }
};

inline ResidualAction residual_action(const Lattice& lat, const IntMat& g) {
    if (!is_isometry(lat, g)) throw std::invalid_argument("residual_action: not an isometry");
    auto d = discriminant_group(lat);
    if (!d.cyclic()) throw std::domain_error("residual_action: discriminant group not cyclic");
    if (d.trivial()) return ResidualAction{0, 1};
    RatVec gen = d.lift.col(0);
    RatVec image = to_rat(g).mul_vec(gen);
    Int m = d.orders[0];
    Int a = express_in_generator(d, image, 0);
    return ResidualAction{a, m};
}

// ---------------------------------------------------------------------------
// The reflection group W and its index
// ---------------------------------------------------------------------------

/// All units a mod (2n-2) with a^2 = 1 mod 2(2n-2); this is the residual
/// orthogonal group O(L*/L) for L = Hilb(n), elementary abelian of order
/// 2^rho(n-1).
inline std::vector<std::int64_t> residual_orthogonal_group(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("residual_orthogonal_group: n must be >= 2");
    std::int64_t m = 2 * n - 2;
    std::vector<std::int64_t> units;
    for (std::int64_t a = 1; a < m; a += 2) {
        if ((a * a) % (2 * m) == 1) units.push_back(a);
    }
    if (m == 2) units.assign({1});
    return units;
}

/// [O+ : W] = |O(L*/L)| / 2 for (w,w) >= 4, and 1 in the degenerate
/// (w,w) = 2 case.
inline std::int64_t w_index(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("w_index: n must be >= 2");
    if (n == 2) return 1;
    return static_cast<std::int64_t>(residual_orthogonal_group(n).size()) / 2;
}

// ---------------------------------------------------------------------------
// Extension to the Mukai lattice and the homomorphism mu
// ---------------------------------------------------------------------------

/// Embedding of Hilb(n) into the Mukai lattice in vector coordinates: the K3
/// block maps identically, delta maps to (1, 0, n-1). The orthogonal
/// complement of the image is generated by w = (1, 0, 1-n).
inline IntMat hilbert_embedding(int n) {
    if (n < 2) throw std::invalid_argument("hilbert_embedding: n must be >= 2");
    IntMat b(24, 23);
    for (std::size_t j = 0; j < 22; ++j) b(1 + j, j) = 1;
    b(0, 22) = 1;
    b(23, 22) = n - 1;
    return b;
}

inline IntVec hilbert_complement_generator(int n) {
    IntVec w(24);
    w[0] = 1;
    w[23] = 1 - Int(n);
    return w;
}

/// Extends g in W(Hilb(n)) to an isometry of the Mukai lattice with
/// g~(w) = w (residual action +1) or g~(w) = -w (residual action -1).
/// Throws std::domain_error when g is not in W (no integral extension).
inline IntMat ext_to_mukai(int n, const IntMat& g) {
    auto hilb = make_hilbert(n);
    if (!is_isometry(*hilb, g)) throw std::invalid_argument("ext_to_mukai: not an isometry of Hilb(n)");
    auto res = residual_action(*hilb, g);
    int eps;
    if (res.modulus <= 2 || res.multiplier == 1)
        eps = 1;
    else if (res.multiplier == res.modulus - 1)
        eps = -1;
    else
        throw std::domain_error("ext_to_mukai: residual action is not +-1; no integral extension exists");

    IntMat b = hilbert_embedding(n);
    IntVec w = hilbert_complement_generator(n);
    RatMat lhs(24, 24), rhs(24, 24);
    IntMat bg = b * g;
    for (std::size_t j = 0; j < 23; ++j) {
        for (std::size_t i = 0; i < 24; ++i) {
            lhs(i, j) = Rat(b(i, j));
            rhs(i, j) = Rat(bg(i, j));
        }
    }
    for (std::size_t i = 0; i < 24; ++i) {
        lhs(i, 23) = Rat(w[i]);
        rhs(i, 23) = Rat(eps * w[i]);
    }
    auto lhs_inv = rat_inverse(lhs);
    if (!lhs_inv) throw std::logic_error("ext_to_mukai: embedding basis degenerate");
    RatMat ext = rhs * *lhs_inv;
    if (!is_integral(ext))
        throw std::domain_error("ext_to_mukai: extension not integral; g is not in W");
    IntMat result = to_int(ext);
    if (!is_isometry(*mukai_vector_lattice(), result))
        throw std::logic_error("ext_to_mukai: extension fails to preserve the Mukai pairing");
    return result;
}

/// Membership of g in the reflection group W = O+ intersect pi^{-1}{1,-1},
/// with the orientation value, residual multiplier, and (on success) the
/// integral extension witness.
struct WMembership {
    bool in_w = false;
    int orientation = 0;
    ResidualAction residual;
    std::optional<IntMat> mukai_extension;
};

inline WMembership in_w(const OrientedLattice& ol, const IntMat& g) {
    const Lattice& lat = *ol.lattice;
    auto d = discriminant_group(lat);
    if (lat.rank() != 23 || !d.cyclic() || d.order() % 2 != 0)
        throw std::invalid_argument("in_w: lattice is not Hilb(n)-shaped");
    WMembership r;
    r.orientation = orientation_character(ol, g);
    r.residual = residual_action(lat, g);
    r.in_w = (r.orientation == 1) && r.residual.is_plus_minus_one();
    if (r.in_w) {
        int n = static_cast<int>(to_int64(d.order() / 2 + 1));
        r.mukai_extension = ext_to_mukai(n, g);
    }
    return r;
}

/// mu sends an isometry of the Mukai lattice fixing w to the restriction of
/// eta~(g) * g to the stored integral basis of w-perp.
inline IntMat mu(int n, const IntMat& gtilde) {
    auto om = oriented_mukai_vector();
    if (!is_isometry(*om.lattice, gtilde)) throw std::invalid_argument("mu: not an isometry of the Mukai lattice");
    IntVec w = hilbert_complement_generator(n);
    if (gtilde.mul_vec(w) != w) throw std::invalid_argument("mu: g does not fix w");
    int eta = orientation_character(om, gtilde);
    IntMat b = hilbert_embedding(n);
    IntMat c = gtilde * b;
    if (eta < 0) c = -c;
    // Solve b x = c; b has full column rank 23.
    RatMat bq = to_rat(b);
    RatMat btb = bq.transpose() * bq;
    auto inv = rat_inverse(btb);
    RatMat x = *inv * bq.transpose() * to_rat(c);
    if (!(bq * x == to_rat(c))) throw std::logic_error("mu: image not contained in w-perp");
    if (!is_integral(x)) throw std::logic_error("mu: restriction not integral");
    IntMat result = to_int(x);
    if (!is_isometry(*make_hilbert(n), result)) throw std::logic_error("mu: restriction not an isometry");
    return result;
}

// ---------------------------------------------------------------------------
// Pell-unit trace criterion
// ---------------------------------------------------------------------------

/// Fundamental solution (x, y), x, y > 0 minimal, of x^2 - m y^2 = 1 for
/// nonsquare m >= 2, via the continued fraction of sqrt(m).
inline std::pair<Int, Int> pell_fundamental(const Int& m) {
    if (m < 2 || is_perfect_square(m)) throw std::invalid_argument("pell_fundamental: m must be a nonsquare >= 2");
    Int a0 = isqrt_int(m);
    Int mk = 0, dk = 1, ak = a0;
    Int h_prev = 1, h = a0, k_prev = 0, k = 1;
    while (h * h - m * k * k != 1) {
        mk = dk * ak - mk;
        dk = (m - mk * mk) / dk;
        ak = (a0 + mk) / dk;
        Int h_new = ak * h + h_prev;
        h_prev = h;
        h = h_new;
        Int k_new = ak * k + k_prev;
        k_prev = k;
        k = k_new;
    }
    return {h, k};
}

/// True iff every unit of Z[sqrt(m)] of norm one has trace 2 or -2 modulo
/// 4n-4 (the criterion for the Hilbert scheme to have all Hodge isometries of
/// its generic period inside W). Enumerates powers of the fundamental unit
/// modulo 4n-4 until the pair repeats.
inline bool trace_criterion(std::int64_t n, const Int& m) {
    if (n < 2) throw std::invalid_argument("trace_criterion: n must be >= 2");
    if (m < 0) throw std::invalid_argument("trace_criterion: m must be >= 0");
    if (m == 0 || is_perfect_square(m)) return true;
    Int modulus = 4 * Int(n) - 4;
    auto [b1, a1] = pell_fundamental(m);
    Int b = b1 % modulus, a = a1 % modulus;
    Int mm = m % modulus;
    std::set<std::pair<Int, Int>> seen;
    while (seen.insert({b, a}).second) {
        Int trace = (2 * b) % modulus;
        if (trace != 2 % modulus && trace != (modulus - 2) % modulus) return false;
        Int b_next = (b * b1 + mm * a * a1) % modulus;
        Int a_next = (b * a1 + a * b1) % modulus;
        b = b_next;
        a = a_next;
    }
    return true;
}

}  // namespace k3lat
