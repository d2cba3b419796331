#pragma once

#include "monodromy.hpp"

#include <cstdint>
#include <optional>
#include <array>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace k3lat {

// ---------------------------------------------------------------------------
// Orders of cyclic extensions with trivial group action
// ---------------------------------------------------------------------------

/// Order of the class of 0 -> dZ/deZ -> Z/deZ -> Z/dZ -> 0: gcd(d, e),
/// with gcd(d, 0) = |d|.
inline Int cyclic_ext_order(const Int& d, const Int& e) {
    if (d == 0) throw std::invalid_argument("cyclic_ext_order: d must be nonzero");
    if (e == 0) return abs_int(d);
    return gcd_int(d, e);
}

/// Independent oracle: the minimal k >= 1 for which the k-pulled-back
/// sequence splits, found by enumerating candidate splitting images
/// s(1) = m in Z/deZ with m = 0 mod e; the achievable projections are
/// {t e mod d}. Restricted to |d e| <= 10^4.
inline Int cyclic_ext_order_splitting_search(const Int& d, const Int& e) {
    if (d == 0) throw std::invalid_argument("cyclic_ext_order_splitting_search: d must be nonzero");
    Int ad = abs_int(d);
    if (e == 0) return ad;  // s(1) = m in Z forces d m = 0, so m = 0 and k = 0 mod d
    if (abs_int(d * e) > 10000)
        throw std::invalid_argument("cyclic_ext_order_splitting_search: |d e| too large");
    Int ae = abs_int(e);
    Int best = ad;
    for (Int t = 0; t < ad; ++t) {
        Int k = (t * ae) % ad;
        if (k >= 1 && k < best) best = k;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Equivariant homomorphisms by integer linear algebra
// ---------------------------------------------------------------------------

/// Homomorphisms M : domain -> codomain commuting with a finite list of
/// isometry pairs, intersected with affine integer-linear conditions on the
/// entries of M.
struct EquivariantSystem {
    LatticePtr domain, codomain;
    std::vector<std::pair<IntMat, IntMat>> generators;  // (action on domain, action on codomain)

    struct AffineConstraint {
        IntMat coeffs;  // codomain.rank x domain.rank, paired entrywise with M
        Int rhs;
    };
    std::vector<AffineConstraint> constraints;
};

struct HomSolution {
    std::vector<IntMat> basis;  // lattice of homogeneous solutions
    bool affine_consistent = true;
    std::optional<IntMat> particular;  // one affine solution when constraints exist

    std::size_t rank() const { return basis.size(); }
};

namespace detail {

/// Appends the rows of M g_dom - g_cod M = 0 to a solution-lattice stream
/// over unknowns vec(M) (row-major, codomain index first) with `extra`
/// trailing unknowns.
inline void append_commutation_rows(SolutionLattice& sol, const IntMat& g_dom, const IntMat& g_cod,
                                    std::size_t extra) {
    const std::size_t dom = g_dom.rows(), cod = g_cod.rows();
    const std::size_t n = cod * dom + extra;
    for (std::size_t i = 0; i < cod; ++i)
        for (std::size_t j = 0; j < dom; ++j) {
            IntVec row(n);
            for (std::size_t l = 0; l < dom; ++l) row[i * dom + l] += g_dom(l, j);
            for (std::size_t l = 0; l < cod; ++l) row[l * dom + j] -= g_cod(i, l);
            sol.add_row(row);
        }
}

}  // namespace detail

inline HomSolution equivariant_hom(const EquivariantSystem& sys) {
    const std::size_t dom = sys.domain->rank(), cod = sys.codomain->rank();
    for (const auto& [a, b] : sys.generators) {
        if (!is_isometry(*sys.domain, a) || !is_isometry(*sys.codomain, b))
            throw std::invalid_argument("equivariant_hom: generator pair is not a pair of isometries");
    }
    const bool affine = !sys.constraints.empty();
    const std::size_t n = cod * dom + (affine ? 1 : 0);

    SolutionLattice sol(n);
    for (const auto& c : sys.constraints) {
        if (c.coeffs.rows() != cod || c.coeffs.cols() != dom)
            throw std::invalid_argument("equivariant_hom: constraint shape mismatch");
        IntVec row(n);
        for (std::size_t i = 0; i < cod; ++i)
            for (std::size_t j = 0; j < dom; ++j) row[i * dom + j] = c.coeffs(i, j);
        row[n - 1] = -c.rhs;
        sol.add_row(row);
    }
    for (const auto& [a, b] : sys.generators) detail::append_commutation_rows(sol, a, b, affine ? 1 : 0);

    IntMat basis = sol.basis();
    HomSolution out;
    auto unvec = [&](const IntVec& x) {
        IntMat m(cod, dom);
        for (std::size_t i = 0; i < cod; ++i)
            for (std::size_t j = 0; j < dom; ++j) m(i, j) = x[i * dom + j];
        return m;
    };

    if (!affine) {
        for (std::size_t j = 0; j < basis.cols(); ++j) out.basis.push_back(unvec(basis.col(j)));
        return out;
    }

    // Concentrate the homogenizer coordinate on one column by unimodular
    // column operations; the rest spans the homogeneous part.
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < basis.cols(); ++j) cols.push_back(basis.col(j));
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (cols[j][n - 1] != 0) nz.push_back(j);
    while (nz.size() > 1) {
        std::size_t pv = nz[0];
        for (std::size_t j : nz)
            if (abs_int(cols[j][n - 1]) < abs_int(cols[pv][n - 1])) pv = j;
        std::vector<std::size_t> next{pv};
        for (std::size_t j : nz) {
            if (j == pv) continue;
            Int f = rounded_div(cols[j][n - 1], cols[pv][n - 1]);
            for (std::size_t i = 0; i < n; ++i) cols[j][i] -= f * cols[pv][i];
            if (cols[j][n - 1] != 0) next.push_back(j);
        }
        nz = std::move(next);
    }
    std::optional<std::size_t> tau_col;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j][n - 1] == 0) {
            out.basis.push_back(unvec(cols[j]));
        } else {
            tau_col = j;
        }
    }
    if (!tau_col) {
        out.affine_consistent = false;
        return out;
    }
    Int tau = cols[*tau_col][n - 1];
    if (abs_int(tau) != 1) {
        out.affine_consistent = false;  // only multiples of tau are reachable
        return out;
    }
    IntVec part = cols[*tau_col];
    if (tau < 0)
        for (auto& x : part) x = -x;
    out.particular = unvec(part);
    return out;
}

// ---------------------------------------------------------------------------
// The extension with the Mukai lattice in the middle
// ---------------------------------------------------------------------------

namespace detail {

inline IntVec sign_normalized(IntVec v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

}  // namespace detail

/// Deterministic sample of distinct (-2)-vectors of v-perp with coordinates
/// in [-3, 3] in the embedded basis: a fixed spanning prefix (E8 roots,
/// hyperbolic roots, cross-block mixers, and a delta-mixing vector found by
/// bounded search), then seeded pseudo-random draws.
inline std::vector<IntVec> sample_minus_two_vectors(int n, std::size_t count, std::uint64_t seed) {
    auto hilb = make_hilbert(n);
    std::set<IntVec> seen;
    std::vector<IntVec> out;
    auto push = [&](const IntVec& c) {
        if (bilinear(hilb->gram, c, c) != -2) throw std::logic_error("sample_minus_two_vectors: bad prefix");
        if (seen.insert(detail::sign_normalized(c)).second) out.push_back(c);
    };

    // Basis indices: hyperbolic blocks at (0,1), (2,3), (4,5); E8 blocks at
    // 6..13 and 14..21; delta at 22.
    for (std::size_t i = 6; i <= 21; ++i) {
        IntVec c(23);
        c[i] = 1;
        push(c);
    }
    for (std::size_t b = 0; b < 3; ++b) {
        IntVec c(23);
        c[2 * b] = 1;
        c[2 * b + 1] = -1;
        push(c);
    }
    for (std::size_t b = 0; b < 3; ++b) {
        IntVec c(23);
        c[2 * b] = 1;  // e of block b plus the root e - f of the next block
        std::size_t nb = (b + 1) % 3;
        c[2 * nb] += 1;
        c[2 * nb + 1] -= 1;
        push(c);
    }
    {
        // delta + y with (y, y) = 2n - 4, y searched over the hyperbolic
        // blocks with coordinates in [-3, 3].
        bool found = false;
        std::array<int, 6> y{};
        std::function<void(std::size_t)> search = [&](std::size_t idx) {
            if (found) return;
            if (idx == 6) {
                Int q = 0;
                for (std::size_t b = 0; b < 3; ++b) q += 2 * Int(y[2 * b]) * y[2 * b + 1];
                if (q == 2 * Int(n) - 4) {
                    IntVec c(23);
                    for (std::size_t i = 0; i < 6; ++i) c[i] = y[i];
                    c[22] = 1;
                    push(c);
                    found = true;
                }
                return;
            }
            for (int v = 0; v <= 3 && !found; ++v)
                for (int s : {1, -1}) {
                    y[idx] = s * v;
                    search(idx + 1);
                    if (v == 0) break;
                }
            y[idx] = 0;
        };
        search(0);
        if (!found)
            throw std::runtime_error("sample_minus_two_vectors: no delta-mixing root in the search box");
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<std::size_t> pos(0, 22);
    std::size_t failures = 0;
    while (out.size() < count) {
        if (++failures > 2000000)
            throw std::runtime_error("sample_minus_two_vectors: search box exhausted");
        IntVec c(23);
        int support = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < support; ++i) c[pos(rng)] = entry(rng);
        if (bilinear(hilb->gram, c, c) != -2) continue;
        if (!seen.insert(detail::sign_normalized(c)).second) continue;
        out.push_back(c);
        failures = 0;
    }
    return out;
}

struct MukaiMiddleResult {
    Int order = 0;
    bool stabilized = false;
    std::size_t solution_rank = 0;
    int batches_used = 0;
};

/// Minimal k >= 1 admitting an equivariant homomorphism from the Mukai
/// lattice to v-perp (v = (1, 0, 1-n)) restricting to v-perp as k times the
/// identity; the equivariance generators are reflections in sampled
/// (-2)-vectors of v-perp, added in batches until the solution lattice
/// stabilizes. The expected value is (v,v) = 2n-2.
inline MukaiMiddleResult mukai_middle_ext_order(int n, std::size_t generator_count,
                                                std::uint64_t seed = 1, int max_batches = 6) {
    if (n < 2) throw std::invalid_argument("mukai_middle_ext_order: n must be >= 2");
    if (generator_count < 10) throw std::invalid_argument("mukai_middle_ext_order: need at least 10 generators");
    auto mukai = mukai_vector_lattice();
    auto hilb = make_hilbert(n);
    IntMat b = hilbert_embedding(n);

    const std::size_t unknowns = 23 * 24 + 1;  // vec(M) plus k
    SolutionLattice sol(unknowns);

    // Restriction rows: (M b)(i, j) - k delta_ij = 0.
    for (std::size_t i = 0; i < 23; ++i)
        for (std::size_t j = 0; j < 23; ++j) {
            std::vector<std::pair<std::size_t, Int>> row;
            for (std::size_t l = 0; l < 24; ++l)
                if (b(l, j) != 0) row.emplace_back(i * 24 + l, b(l, j));
            if (i == j) row.emplace_back(unknowns - 1, Int(-1));
            sol.add_row_sparse(row);
        }

    auto vectors = sample_minus_two_vectors(n, generator_count * static_cast<std::size_t>(max_batches), seed);

    MukaiMiddleResult res;
    IntMat prev_snapshot;
    bool have_prev = false;
    std::size_t used = 0;
    for (int batch = 0; batch < max_batches; ++batch) {
        for (std::size_t t = 0; t < generator_count; ++t, ++used) {
            const IntVec& c = vectors[used];
            IntMat g_dom = reflection(make_vec(mukai, b.mul_vec(c))).matrix;
            IntMat g_cod = reflection(make_vec(hilb, c)).matrix;
            // Commutation rows M g_dom = g_cod M over the first 23*24 unknowns.
            for (std::size_t i = 0; i < 23; ++i)
                for (std::size_t j = 0; j < 24; ++j) {
                    std::vector<std::pair<std::size_t, Int>> row;
                    IntVec acc(24);
                    for (std::size_t l = 0; l < 24; ++l)
                        if (g_dom(l, j) != 0) acc[l] += g_dom(l, j);
                    for (std::size_t l = 0; l < 24; ++l)
                        if (acc[l] != 0) row.emplace_back(i * 24 + l, acc[l]);
                    for (std::size_t l = 0; l < 23; ++l)
                        if (g_cod(i, l) != 0) row.emplace_back(l * 24 + j, -g_cod(i, l));
                    sol.add_row_sparse(row);
                }
        }
        res.batches_used = batch + 1;
        IntMat snapshot = hnf_rows(sol.basis().transpose());
        if (have_prev && snapshot == prev_snapshot) {
            res.stabilized = true;
            break;
        }
        prev_snapshot = snapshot;
        have_prev = true;
    }

    IntMat basis = sol.basis();
    res.solution_rank = basis.cols();
    if (!res.stabilized || res.solution_rank > 2)
        throw std::runtime_error(
            "mukai_middle_ext_order: generator set too small to stabilize the solution lattice; "
            "increase generator_count");
    Int g = 0;
    for (std::size_t j = 0; j < basis.cols(); ++j) g = gcd_int(g, basis(unknowns - 1, j));
    if (g == 0) throw std::runtime_error("mukai_middle_ext_order: no equivariant map with nonzero k");
    res.order = abs_int(g);
    return res;
}

// ---------------------------------------------------------------------------
// The master order formula
// ---------------------------------------------------------------------------

/// Lower bound for the order of the extension of the leading quotient by the
/// low-degree classes in cohomological degree 2i:
///   i = 2: 2n-2 for odd n, n-1 for even n;
///   3 <= i <= (n+2)/2: (2n-2)/gcd(i-1, 2n-2).
/// Always >= 3 on the admissible range.
inline Int master_order(std::int64_t n, std::int64_t i) {
    if (n < 3) throw std::invalid_argument("master_order: n must be >= 3");
    if (i < 2 || 2 * i > n + 2) throw std::invalid_argument("master_order: i out of range 2 <= i <= (n+2)/2");
    Int result;
    if (i == 2)
        result = (n % 2 == 1) ? Int(2 * n - 2) : Int(n - 1);
    else
        result = Int(2 * n - 2) / gcd_int(Int(i - 1), Int(2 * n - 2));
    if (result < 3) throw std::logic_error("master_order: computed order below 3");
    return result;
}

// ---------------------------------------------------------------------------
// Degeneracy of mu at (v,v) = 2
// ---------------------------------------------------------------------------

struct MuKernel {
    int n = 0;
    bool kernel_trivial = true;
    bool candidate_integral = false;
    std::optional<IntMat> element;  // the nontrivial kernel isometry when it exists
};

/// The candidate kernel element of mu: g with g(v) = v and g = -id on
/// v-perp, i.e. g(x) = (2/(v,v)) (x,v) v - x. Integral exactly when
/// (v,v) = 2 (n = 2), where it is the involution rho_v.
inline MuKernel mu_kernel(int n) {
    if (n < 2) throw std::invalid_argument("mu_kernel: n must be >= 2");
    auto mukai = mukai_vector_lattice();
    auto v = make_mukai_vector(1, 1 - Int(n));
    IntVec vc = mukai_coords(v);
    Int vv = mukai_pairing(v, v);
    IntVec gv = mukai->gram.mul_vec(vc);
    RatMat g(24, 24);
    for (std::size_t i = 0; i < 24; ++i) {
        g(i, i) = -1;
        for (std::size_t j = 0; j < 24; ++j) g(i, j) += Rat(2 * vc[i] * gv[j], vv);
    }
    MuKernel out;
    out.n = n;
    out.candidate_integral = is_integral(g);
    out.kernel_trivial = !out.candidate_integral;
    if (out.candidate_integral) {
        IntMat m = to_int(g);
        if (!is_isometry(*mukai, m)) throw std::logic_error("mu_kernel: candidate not an isometry");
        if (m.mul_vec(vc) != vc) throw std::logic_error("mu_kernel: candidate does not fix v");
        out.element = m;
    }
    return out;
}

}  // namespace k3lat
