#include <k3lat/matrix.hpp>
#include <iostream>
#include <random>
using namespace k3lat;

// instrumented copy of smith()
int main() {
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<int> dim(1, 12), entry(-20, 20);
    std::size_t r = (std::size_t)dim(rng), c = (std::size_t)dim(rng);
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i) for (std::size_t j = 0; j < c; ++j) m(i,j) = entry(rng);
    for (std::size_t i = 0; i < r; ++i) { for (std::size_t j = 0; j < c; ++j) std::cerr << m(i,j) << " "; std::cerr << "\n"; }

    const std::size_t rows = m.rows(), cols = m.cols();
    IntMat p = IntMat::identity(rows), q = IntMat::identity(cols);
    auto swap_rows = [&](std::size_t a, std::size_t b) { if (a==b) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap(m(a,j), m(b,j));
        for (std::size_t j = 0; j < rows; ++j) std::swap(p(a,j), p(b,j)); };
    auto swap_cols = [&](std::size_t a, std::size_t b) { if (a==b) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(m(i,a), m(i,b));
        for (std::size_t i = 0; i < cols; ++i) std::swap(q(i,a), q(i,b)); };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) { if (f==0) return;
        for (std::size_t j = 0; j < cols; ++j) m(dst,j) += f * m(src,j);
        for (std::size_t j = 0; j < rows; ++j) p(dst,j) += f * p(src,j); };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) { if (f==0) return;
        for (std::size_t i = 0; i < rows; ++i) m(i,dst) += f * m(i,src);
        for (std::size_t i = 0; i < cols; ++i) q(i,dst) += f * q(i,src); };

    const std::size_t nmin = std::min(rows, cols);
    for (std::size_t t = 0; t < nmin; ++t) {
        std::cerr << "t=" << t << "\n";
        bool found = false; std::size_t pi = t, pj = t; Int best;
        for (std::size_t i = t; i < rows; ++i) for (std::size_t j = t; j < cols; ++j)
            if (m(i,j) != 0) { Int a = abs_int(m(i,j)); if (!found || a < best) { found = true; best = a; pi = i; pj = j; } }
        if (!found) break;
        swap_rows(t, pi); swap_cols(t, pj);
        long iter = 0;
        for (;;) {
            if (++iter > 200) { std::cerr << "STUCK at t=" << t << " pivot=" << m(t,t) << "\n";
                for (std::size_t i = t; i < rows; ++i) { for (std::size_t j = t; j < cols; ++j) std::cerr << m(i,j) << " "; std::cerr << "\n"; }
                return 1; }
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i,t) == 0) continue;
                Int f = rounded_div(m(i,t), m(t,t));
                add_row(i, t, -f);
                if (m(i,t) != 0) { swap_rows(t, i); dirty = true; }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t,j) == 0) continue;
                Int f = rounded_div(m(t,j), m(t,t));
                add_col(j, t, -f);
                if (m(t,j) != 0) { swap_cols(t, j); dirty = true; }
            }
            if (dirty) continue;
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols && fixed; ++j)
                    if (m(i,j) % m(t,t) != 0) { add_row(t, i, 1); fixed = false; }
            if (fixed) break;
        }
    }
    std::cerr << "smith finished\n";
    return 0;
}
