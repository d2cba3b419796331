#pragma once

#include "monodromy.hpp"
#include "report.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace k3lat {

// ---------------------------------------------------------------------------
// The classification set P_n
// ---------------------------------------------------------------------------

/// Coprime pair (r, s) with r s = 1 - n and -s >= r > 0.
struct PnEntry {
    std::int64_t r = 0;
    std::int64_t s = 0;

    bool operator==(const PnEntry&) const = default;
};

inline bool valid_pn_entry(std::int64_t n, const PnEntry& e) {
    return e.r > 0 && -e.s >= e.r && Int(e.r) * e.s == 1 - Int(n) &&
           std::gcd(e.r, -e.s) == 1;
}

/// All of P_n, sorted ascending in r; cardinality 2^(rho(n-1)-1).
inline std::vector<PnEntry> enumerate_pn(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("enumerate_pn: n must be >= 2");
    std::int64_t m = n - 1;
    std::vector<PnEntry> out;
    for (std::int64_t r = 1; r * r <= m; ++r) {
        if (m % r != 0) continue;
        std::int64_t q = m / r;
        if (std::gcd(r, q) == 1) out.push_back(PnEntry{r, -q});
    }
    return out;
}

inline std::int64_t count_nonbirational(std::int64_t n) {
    return static_cast<std::int64_t>(enumerate_pn(n).size());
}

// ---------------------------------------------------------------------------
// Primitive isometric embeddings of Hilb(n) into the Mukai lattice
// ---------------------------------------------------------------------------

struct Embedding {
    LatticePtr source;  // Hilb(n)
    LatticePtr target;  // Mukai lattice in (r, c, s) coordinates
    IntMat matrix;      // 24 x 23
};

inline Embedding make_embedding(LatticePtr source, LatticePtr target, IntMat m) {
    if (m.rows() != target->rank() || m.cols() != source->rank())
        throw std::invalid_argument("make_embedding: shape mismatch");
    if (!(m.transpose() * target->gram * m == source->gram))
        throw std::invalid_argument("make_embedding: not isometric");
    auto d = smith(m).diagonal();
    for (const auto& x : d)
        if (x != 1) throw std::invalid_argument("make_embedding: image not primitive");
    return Embedding{std::move(source), std::move(target), std::move(m)};
}

/// iota_{r,s}: restricts to the K3 block as the identity and sends delta to
/// (r, 0, -s). The orthogonal complement of the image is generated by
/// (r, 0, s).
inline Embedding iota(std::int64_t n, const PnEntry& e) {
    if (!valid_pn_entry(n, e)) throw std::invalid_argument("iota: entry fails the P_n invariants");
    IntMat m(24, 23);
    for (std::size_t j = 0; j < 22; ++j) m(1 + j, j) = 1;
    m(0, 22) = e.r;
    m(23, 22) = -e.s;
    return make_embedding(make_hilbert(static_cast<int>(n)), mukai_vector_lattice(), std::move(m));
}

/// Primitive generator of the rank-one orthogonal complement of the image.
inline IntVec complement_generator(const Embedding& e) {
    IntMat rows = e.matrix.transpose() * e.target->gram;  // 23 x 24
    IntMat k = kernel_basis(rows);
    if (k.cols() != 1) throw std::logic_error("complement_generator: complement not rank one");
    IntVec g = k.col(0);
    Int c = content(g);
    for (auto& x : g) x /= c;
    return g;
}

// ---------------------------------------------------------------------------
// Orbit classification of embeddings
// ---------------------------------------------------------------------------

enum class OrbitDecision { Same, Different, Undecided };

namespace detail {

/// Pool of +-2 vectors of the Mukai lattice used by the bounded reflection
/// search: roots of the K3 and rank-slot blocks plus mixed combinations.
inline const std::vector<IntVec>& reflection_pool() {
    static const std::vector<IntVec> pool = [] {
        auto mukai = mukai_vector_lattice();
        std::vector<IntVec> out;
        auto push = [&](IntVec v) {
            Int q = bilinear(mukai->gram, v, v);
            if (q == 2 || q == -2) out.push_back(std::move(v));
        };
        auto unit = [](std::size_t i, Int val = 1) {
            IntVec v(24);
            v[i] = val;
            return v;
        };
        auto add = [](IntVec a, const IntVec& b) {
            for (std::size_t i = 0; i < 24; ++i) a[i] += b[i];
            return a;
        };
        // E8 simple roots (norm -2 basis vectors).
        std::vector<IntVec> roots;
        for (std::size_t i = 7; i <= 22; ++i) roots.push_back(unit(i));
        // Hyperbolic combinations e - f (norm -2) and e + f (norm +2).
        for (std::size_t b = 0; b < 3; ++b) {
            roots.push_back(add(unit(1 + 2 * b), unit(2 + 2 * b, -1)));
            roots.push_back(add(unit(1 + 2 * b), unit(2 + 2 * b)));
        }
        // Rank-slot combinations: eps + phi has norm -2, eps - phi norm +2.
        roots.push_back(add(unit(0), unit(23)));
        roots.push_back(add(unit(0), unit(23, -1)));
        for (const auto& r : roots) push(r);
        // Mixed: rank-slot unit plus an isotropic or root direction.
        for (std::size_t i = 1; i <= 22; ++i) {
            push(add(unit(0), unit(i)));
            push(add(unit(23), unit(i)));
            push(add(unit(0), unit(i, -1)));
            push(add(unit(23), unit(i, -1)));
            push(add(add(unit(0), unit(23)), unit(i)));
        }
        // Isotropic hyperbolic units combined across blocks.
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t i = 0; i < 2; ++i) {
                push(add(unit(0), unit(1 + 2 * b + i)));
                push(add(unit(23), unit(1 + 2 * b + i)));
            }
        return out;
    }();
    return pool;
}

/// rho_u(y) for (u,u) = -2, and -rho_u-style reflection for (u,u) = +2; both
/// are integral isometries of the Mukai lattice.
inline IntVec apply_reflection(const IntVec& y, const IntVec& u, const IntMat& gram) {
    Int uu = bilinear(gram, u, u);
    Int yu = bilinear(gram, y, u);
    Int scale = -2 / uu;
    IntVec out(24);
    for (std::size_t i = 0; i < 24; ++i) out[i] = scale * y[i] + yu * u[i];
    return out;
}

/// Eichler transvection E(e, a) for isotropic e in {eps, phi} and a in the
/// K3 block: an integral isometry of the Mukai lattice.
/// eps slot: (r, c, s) -> (r - (c,a) + (a,a)/2 s, c - s a, s).
/// phi slot: (r, c, s) -> (r, c - r b, s - (c,b) + (b,b)/2 r).
inline IntVec apply_transvection(const IntVec& y, const IntVec& a22, bool rank_slot) {
    static const IntMat k3 = k3_gram();
    IntVec c(y.begin() + 1, y.begin() + 23);
    Int ca = bilinear(k3, c, a22);
    Int aa = bilinear(k3, a22, a22);
    IntVec out = y;
    if (rank_slot) {
        out[0] += -ca + (aa / 2) * y[23];
        for (std::size_t i = 0; i < 22; ++i) out[1 + i] -= y[23] * a22[i];
    } else {
        out[23] += -ca + (aa / 2) * y[0];
        for (std::size_t i = 0; i < 22; ++i) out[1 + i] -= y[0] * a22[i];
    }
    return out;
}

inline Int c_weight(const IntVec& y) {
    Int w = 0;
    for (std::size_t i = 1; i <= 22; ++i) w += abs_int(y[i]);
    return w;
}

inline std::optional<PnEntry> classify_in_u_block(const IntVec& y, std::int64_t n) {
    std::int64_t r = to_int64(y[0]), s = to_int64(y[23]);
    for (auto [a, b] : {std::pair{r, s}, {s, r}, {-r, -s}, {-s, -r}}) {
        PnEntry e{a, b};
        if (valid_pn_entry(n, e)) return e;
    }
    return std::nullopt;
}

/// Bounded search through explicit isometries (reflections in +-2 vectors
/// and Eichler transvections) that tries to move a primitive vector of
/// square 2n-2 into the rank/chi plane; nullopt when it gives up.
inline std::optional<PnEntry> normalize_to_pn(IntVec y, std::int64_t n) {
    auto gram = mukai_vector_lattice()->gram;
    auto weight = [&](const IntVec& v) {
        return std::pair<Int, Int>(c_weight(v), abs_int(v[0]) + abs_int(v[23]));
    };
    for (int step = 0; step < 200; ++step) {
        if (c_weight(y) == 0) return classify_in_u_block(y, n);

        std::optional<IntVec> best;
        std::pair<Int, Int> best_w;
        auto consider = [&](IntVec cand) {
            auto w = weight(cand);
            if (!best || w < best_w) {
                best = std::move(cand);
                best_w = w;
            }
        };

        // Balanced coordinate reduction of c modulo s and modulo r.
        IntVec c(y.begin() + 1, y.begin() + 23);
        for (bool rank_slot : {true, false}) {
            Int d = rank_slot ? y[23] : y[0];
            if (d == 0) continue;
            IntVec a(22);
            bool nonzero = false;
            for (std::size_t i = 0; i < 22; ++i) {
                a[i] = rounded_div(c[i], d);
                if (a[i] != 0) nonzero = true;
            }
            if (nonzero) consider(apply_transvection(y, a, rank_slot));
        }
        // Single-generator transvections for fine steps.
        for (std::size_t i = 0; i < 22; ++i)
            for (Int v : {Int(1), Int(-1)}) {
                IntVec a(22);
                a[i] = v;
                if (y[23] != 0) consider(apply_transvection(y, a, true));
                if (y[0] != 0) consider(apply_transvection(y, a, false));
            }
        // Reflections from the fixed pool.
        for (const auto& u : reflection_pool()) consider(apply_reflection(y, u, gram));

        if (!best || !(best_w < weight(y))) return std::nullopt;
        y = *best;
    }
    return std::nullopt;
}

}  // namespace detail

/// Whether two primitive isometric embeddings of Hilb(n) lie in the same
/// O(Mukai)-orbit: their complement generators must reduce to the same P_n
/// representative. Reports Undecided when the bounded normalization fails.
inline OrbitDecision same_orbit(const Embedding& a, const Embedding& b) {
    if (!same_lattice(*a.source, *b.source) || !same_lattice(*a.target, *b.target))
        throw std::invalid_argument("same_orbit: mismatched lattices");
    Int disc = abs_int(a.source->det());
    std::int64_t n = to_int64(disc / 2 + 1);
    auto ga = complement_generator(a);
    auto gb = complement_generator(b);
    auto pa = detail::normalize_to_pn(ga, n);
    auto pb = detail::normalize_to_pn(gb, n);
    if (!pa || !pb) return OrbitDecision::Undecided;
    return (*pa == *pb) ? OrbitDecision::Same : OrbitDecision::Different;
}

// ---------------------------------------------------------------------------
// The genus-2 worked example on Hilb(7)
// ---------------------------------------------------------------------------

/// w0 = 2 c1(L) + delta for deg(L) in {2, 4}; the reflection
/// f(x) = (-4/(w0,w0)) x + ((x,w0)/2) w0 of Hilb(7).
inline IntMat genus2_reflection(int deg) {
    if (deg != 2 && deg != 4) throw std::invalid_argument("genus2_reflection: deg must be 2 or 4");
    auto h7 = make_hilbert(7);
    IntVec h(23);
    h[0] = 1;
    h[1] = (deg == 2) ? 1 : 2;  // (h,h) = 2 or 4 inside the first hyperbolic block
    IntVec w0(23);
    for (std::size_t i = 0; i < 23; ++i) w0[i] = 2 * h[i];
    w0[22] += 1;
    Int ww = norm(make_vec(h7, w0));
    IntVec gw = h7->gram.mul_vec(w0);
    IntMat f(23, 23);
    Int scale = -4 / ww;
    for (std::size_t i = 0; i < 23; ++i) {
        f(i, i) = scale;
        for (std::size_t j = 0; j < 23; ++j) f(i, j) += (gw[j] / 2) * w0[i];
    }
    return f;
}

inline Report example7_report() {
    Report rep;
    rep.command = "example7";
    auto h7 = make_hilbert(7);
    auto oh7 = oriented_hilbert(7);
    for (int deg : {2, 4}) {
        std::string tag = "deg" + std::to_string(deg);
        IntVec h(23);
        h[0] = 1;
        h[1] = (deg == 2) ? 1 : 2;
        IntVec w0(23);
        for (std::size_t i = 0; i < 23; ++i) w0[i] = 2 * h[i];
        w0[22] += 1;
        Int ww = norm(make_vec(h7, w0));
        rep.check(tag + ": (w0,w0)", deg == 2 ? "-4" : "4", ww.str());

        IntMat f = genus2_reflection(deg);
        rep.check_true(tag + ": f is an isometry", is_isometry(*h7, f));
        rep.check(tag + ": orientation", "1", std::to_string(orientation_character(oh7, f)));

        auto res = residual_action(*h7, f);
        Int expect = deg == 2 ? Int(7) : Int(5);  // -5 and -7 mod 12
        rep.check(tag + ": residual multiplier mod 12 (= " + std::string(deg == 2 ? "-5" : "-7") + ")",
                  expect.str(), res.multiplier.str());

        rep.check_true(tag + ": f not in W", !in_w(oh7, f).in_w);
        bool ext_fails = false;
        try {
            ext_to_mukai(7, f);
        } catch (const std::domain_error&) {
            ext_fails = true;
        }
        rep.check_true(tag + ": no integral extension to the Mukai lattice", ext_fails);

        if (deg == 2) {
            IntVec delta(23);
            delta[22] = 1;
            IntVec fd = f.mul_vec(delta);
            IntVec expect_fd(23);
            for (std::size_t i = 0; i < 23; ++i) expect_fd[i] = -12 * h[i];
            expect_fd[22] -= 5;
            rep.check_true(tag + ": f(delta) = -(12 c1(L) + 5 delta)", fd == expect_fd);
        }
    }
    rep.outputs["w_index_7"] = 2;
    return rep;
}

}  // namespace k3lat
