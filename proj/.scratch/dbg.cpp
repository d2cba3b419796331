#include <k3lat/intlat.hpp>
#include <iostream>
#include <random>
using namespace k3lat;
int main() {
    std::cerr << "U..." << std::flush;
    auto u = make_standard(StdLattice::U);
    std::cerr << "det=" << u->det() << " sig..." << std::flush;
    auto s = u->signature();
    std::cerr << s.pos << "," << s.neg << "\n";
    std::cerr << "E8..." << std::flush;
    auto e8 = make_standard(StdLattice::E8neg);
    std::cerr << "det=" << e8->det() << "\n";
    std::cerr << "K3..." << std::flush;
    auto k3 = make_standard(StdLattice::K3);
    std::cerr << "ok\n";
    std::cerr << "Mukai..." << std::flush;
    auto mk = make_standard(StdLattice::Mukai);
    std::cerr << "ok det=" << mk->det() << "\n";
    std::cerr << "hilb7..." << std::flush;
    auto h7 = make_hilbert(7);
    std::cerr << "ok\n";
    std::cerr << "smith small..." << std::flush;
    auto f = smith(IntMat::from_rows({{2,0},{0,3}}));
    std::cerr << "ok\n";
    std::cerr << "smith hilb3..." << std::flush;
    auto fh = smith(make_hilbert(3)->gram);
    std::cerr << "ok last=" << fh.diagonal().back() << "\n";
    std::cerr << "random smith..." << std::flush;
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<int> dim(1, 12), entry(-20, 20);
    for (int trial = 0; trial < 1000; ++trial) {
        if (trial % 100 == 0) std::cerr << trial << " " << std::flush;
        std::size_t r = (std::size_t)dim(rng), c = (std::size_t)dim(rng);
        IntMat m(r, c);
        for (std::size_t i = 0; i < r; ++i) for (std::size_t j = 0; j < c; ++j) m(i,j) = entry(rng);
        auto ff = smith(m);
        if (!(ff.p * m * ff.q == ff.s)) { std::cerr << "ROUNDTRIP FAIL at " << trial << "\n"; return 1; }
    }
    std::cerr << "done\n";
    std::cerr << "disc hilb7..." << std::flush;
    auto d7 = discriminant_group(*h7);
    std::cerr << "order=" << d7.order() << " q=" << rat_to_string(d7.q_values[0]) << "\n";
    return 0;
}
