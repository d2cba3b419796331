#pragma once

#include "matrix.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace k3lat {

/// Smith normal form data: p * m * q = s with p, q unimodular and s diagonal,
/// diagonal entries nonnegative with d_i | d_{i+1}.
struct Snf {
    IntMat s, p, q;

    std::vector<Int> diagonal() const {
        std::vector<Int> d(std::min(s.rows(), s.cols()));
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = s(i, i);
        return d;
    }
};

inline Snf smith(IntMat m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMat p = IntMat::identity(rows);
    IntMat q = IntMat::identity(cols);

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap(m(a, j), m(b, j));
        for (std::size_t j = 0; j < rows; ++j) std::swap(p(a, j), p(b, j));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, a), m(i, b));
        for (std::size_t i = 0; i < cols; ++i) std::swap(q(i, a), q(i, b));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t j = 0; j < cols; ++j) m(dst, j) += f * m(src, j);
        for (std::size_t j = 0; j < rows; ++j) p(dst, j) += f * p(src, j);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t i = 0; i < rows; ++i) m(i, dst) += f * m(i, src);
        for (std::size_t i = 0; i < cols; ++i) q(i, dst) += f * q(i, src);
    };
    auto negate_row = [&](std::size_t r) {
        for (std::size_t j = 0; j < cols; ++j) m(r, j) = -m(r, j);
        for (std::size_t j = 0; j < rows; ++j) p(r, j) = -p(r, j);
    };

    const std::size_t nmin = std::min(rows, cols);
    for (std::size_t t = 0; t < nmin; ++t) {
        bool trailing_zero = false;
        for (;;) {
            // Move a minimal-magnitude nonzero entry of the trailing block to
            // (t, t); re-selecting every pass keeps quotients (and entries) small.
            bool found = false;
            std::size_t pi = t, pj = t;
            Int best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (m(i, j) != 0) {
                        Int a = abs_int(m(i, j));
                        if (!found || a < best) {
                            found = true;
                            best = a;
                            pi = i;
                            pj = j;
                        }
                    }
            if (!found) {
                trailing_zero = true;
                break;
            }
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                Int f = rounded_div(m(i, t), m(t, t));
                add_row(i, t, -f);
                if (m(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                Int f = rounded_div(m(t, j), m(t, t));
                add_col(j, t, -f);
                if (m(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Divisibility pass over the trailing block.
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols && fixed; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        add_row(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (trailing_zero) break;
        if (m(t, t) < 0) negate_row(t);
    }
    return Snf{std::move(m), std::move(p), std::move(q)};
}

/// Incrementally maintained basis of the solution lattice {x in Z^n : A x = 0}
/// for a stream of integer constraint rows. The basis is exact at every step
/// (the solution set of integral rows is saturated by construction).
class SolutionLattice {
  public:
    explicit SolutionLattice(std::size_t n) : n_(n) {
        cols_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            cols_[j].assign(n, Int(0));
            cols_[j][j] = 1;
        }
    }

    std::size_t unknowns() const { return n_; }
    std::size_t rank() const { return cols_.size(); }

    void add_row(const IntVec& row) {
        if (row.size() != n_) throw std::invalid_argument("SolutionLattice::add_row: size mismatch");
        std::vector<std::pair<std::size_t, Int>> sparse;
        for (std::size_t i = 0; i < n_; ++i)
            if (row[i] != 0) sparse.emplace_back(i, row[i]);
        add_row_sparse(sparse);
    }

    void add_row_sparse(const std::vector<std::pair<std::size_t, Int>>& row) {
        const std::size_t k = cols_.size();
        IntVec y(k);
        for (std::size_t j = 0; j < k; ++j)
            for (const auto& [i, v] : row) y[j] += v * cols_[j][i];

        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < k; ++j)
            if (y[j] != 0) nz.push_back(j);
        if (nz.empty()) return;

        // Column gcd elimination: concentrate the row image on one column.
        while (nz.size() > 1) {
            std::size_t pv = nz[0];
            for (std::size_t j : nz)
                if (abs_int(y[j]) < abs_int(y[pv])) pv = j;
            std::vector<std::size_t> next;
            for (std::size_t j : nz) {
                if (j == pv) {
                    next.push_back(j);
                    continue;
                }
                Int f = rounded_div(y[j], y[pv]);
                y[j] -= f * y[pv];
                if (f != 0) {
                    auto& cj = cols_[j];
                    const auto& cp = cols_[pv];
                    for (std::size_t i = 0; i < n_; ++i)
                        if (cp[i] != 0) cj[i] -= f * cp[i];
                }
                if (y[j] != 0) next.push_back(j);
            }
            nz = std::move(next);
        }
        cols_.erase(cols_.begin() + static_cast<std::ptrdiff_t>(nz[0]));
    }

    /// Basis as an n x rank matrix (columns are lattice generators).
    IntMat basis() const {
        IntMat b(n_, cols_.size());
        for (std::size_t j = 0; j < cols_.size(); ++j)
            for (std::size_t i = 0; i < n_; ++i) b(i, j) = cols_[j][i];
        return b;
    }

  private:
    std::size_t n_;
    std::vector<IntVec> cols_;
};

/// Basis of {x in Z^n : a x = 0} as columns of an n x k matrix.
inline IntMat kernel_basis(const IntMat& a) {
    SolutionLattice sol(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) sol.add_row(a.row(i));
    return sol.basis();
}

/// Unique row Hermite normal form (zero rows dropped): pivots positive,
/// entries above a pivot reduced into [0, pivot).
inline IntMat hnf_rows(IntMat a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Euclidean reduction among rows >= r in column c.
        for (;;) {
            std::size_t pv = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a(i, c) != 0 && (pv == rows || abs_int(a(i, c)) < abs_int(a(pv, c)))) pv = i;
            if (pv == rows) break;
            bool clean = true;
            for (std::size_t i = r; i < rows; ++i) {
                if (i == pv || a(i, c) == 0) continue;
                Int f = rounded_div(a(i, c), a(pv, c));
                for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(pv, j);
                if (a(i, c) != 0) clean = false;
            }
            if (clean) {
                if (pv != r)
                    for (std::size_t j = 0; j < cols; ++j) std::swap(a(pv, j), a(r, j));
                break;
            }
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0)
            for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Int f = a(i, c) / a(r, c);
            if (a(i, c) % a(r, c) < 0) f -= 1;
            if (f != 0)
                for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    IntMat h(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) h(i, j) = a(i, j);
    return h;
}

/// Membership of v in the row lattice presented by its HNF.
inline bool hnf_contains(const IntMat& h, IntVec v) {
    if (h.cols() != v.size()) throw std::invalid_argument("hnf_contains: size mismatch");
    std::size_t i = 0;
    for (std::size_t c = 0; c < h.cols(); ++c) {
        std::size_t pivot_row = h.rows();
        if (i < h.rows() && h(i, c) != 0) pivot_row = i;
        if (pivot_row == h.rows()) {
            if (v[c] != 0) return false;
            continue;
        }
        if (v[c] % h(i, c) != 0) return false;
        Int f = v[c] / h(i, c);
        if (f != 0)
            for (std::size_t j = c; j < h.cols(); ++j) v[j] -= f * h(i, j);
        ++i;
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline Int det_bareiss(IntMat a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det_bareiss: not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t pv = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (a(i, k) != 0) {
                    pv = i;
                    break;
                }
            if (pv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pv, j));
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sgn * a(n - 1, n - 1);
}

inline std::optional<RatMat> rat_inverse(RatMat a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("rat_inverse: not square");
    const std::size_t n = a.rows();
    RatMat inv = RatMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pv = n;
        for (std::size_t i = c; i < n; ++i)
            if (a(i, c) != 0) {
                pv = i;
                break;
            }
        if (pv == n) return std::nullopt;
        if (pv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pv, j), a(c, j));
                std::swap(inv(pv, j), inv(c, j));
            }
        Rat d = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// Solves a x = b over the rationals for square nonsingular a.
inline RatVec rat_solve(const RatMat& a, const RatVec& b) {
    auto inv = rat_inverse(a);
    if (!inv) throw std::domain_error("rat_solve: singular matrix");
    return inv->mul_vec(b);
}

struct Signature {
    int pos = 0, neg = 0, zero = 0;
    bool nondegenerate() const { return zero == 0; }
};

/// Exact signature of a symmetric integer matrix via symmetric
/// Gaussian reduction over the rationals.
inline Signature signature_of(const IntMat& gram) {
    if (!gram.is_symmetric()) throw std::invalid_argument("signature_of: not symmetric");
    const std::size_t n = gram.rows();
    RatMat a = to_rat(gram);
    std::vector<bool> done(n, false);
    Signature sig;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a(i, i) != 0) {
                pv = i;
                break;
            }
        if (pv == n) {
            // All remaining diagonal entries vanish; symmetrize an off-diagonal one.
            std::size_t bi = n, bj = n;
            for (std::size_t i = 0; i < n && bi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && a(i, j) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi == n) {
                for (std::size_t i = 0; i < n; ++i)
                    if (!done[i]) ++sig.zero;
                return sig;
            }
            for (std::size_t j = 0; j < n; ++j) a(bi, j) += a(bj, j);
            for (std::size_t i = 0; i < n; ++i) a(i, bi) += a(i, bj);
            pv = bi;
        }
        Rat d = a(pv, pv);
        if (d > 0)
            ++sig.pos;
        else
            ++sig.neg;
        done[pv] = true;
        // Symmetric rank-one update against the snapshot of the pivot column.
        RatVec c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = a(i, pv);
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || c[i] == 0) continue;
            Rat f = c[i] / d;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) a(i, j) -= f * c[j];
        }
        for (std::size_t i = 0; i < n; ++i) {
            a(i, pv) = 0;
            a(pv, i) = 0;
        }
    }
    return sig;
}

}  // namespace k3lat
