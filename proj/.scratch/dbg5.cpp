#include <k3lat/extorder.hpp>
#include <iostream>
using namespace k3lat;
int main() {
    for (int n : {2, 3, 4}) {
        auto vectors = sample_minus_two_vectors(n, 96, 1);
        // rank of the span
        SolutionLattice sl(23);
        // abuse: compute rank of span via kernel of transpose... just do echelon rank
        IntMat m(vectors.size(), 23);
        for (std::size_t i = 0; i < vectors.size(); ++i)
            for (std::size_t j = 0; j < 23; ++j) m(i, j) = vectors[i][j];
        auto h = hnf_rows(m);
        std::cout << "n=" << n << " sampled=" << vectors.size() << " span rank=" << h.rows() << "\n";
        int with_delta = 0;
        for (auto& v : vectors) if (v[22] != 0) with_delta++;
        std::cout << "  with delta coord: " << with_delta << "\n";
        try {
            auto res = mukai_middle_ext_order(n, 16, 1, 8);
            std::cout << "  order=" << res.order << " rank=" << res.solution_rank
                      << " stab=" << res.stabilized << " batches=" << res.batches_used << "\n";
        } catch (const std::exception& e) {
            std::cout << "  ERROR: " << e.what() << "\n";
        }
    }
    return 0;
}
