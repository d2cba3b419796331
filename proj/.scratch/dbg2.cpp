#include <k3lat/snf.hpp>
#include <iostream>
#include <random>
using namespace k3lat;
int main() {
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<int> dim(1, 12), entry(-20, 20);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t r = (std::size_t)dim(rng), c = (std::size_t)dim(rng);
        IntMat m(r, c);
        for (std::size_t i = 0; i < r; ++i) for (std::size_t j = 0; j < c; ++j) m(i,j) = entry(rng);
        std::cerr << trial << "(" << r << "x" << c << ") " << std::flush;
        auto ff = smith(m);
        if (!(ff.p * m * ff.q == ff.s)) { std::cerr << "\nROUNDTRIP FAIL at " << trial << "\n";
            for (std::size_t i = 0; i < r; ++i) { for (std::size_t j = 0; j < c; ++j) std::cerr << m(i,j) << " "; std::cerr << "\n"; }
            return 1; }
    }
    std::cerr << "all ok\n";
    return 0;
}
