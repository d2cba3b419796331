#include <k3lat/extorder.hpp>
#include <iostream>
using namespace k3lat;
int main() {
    for (int n : {2, 3, 4}) {
        for (std::uint64_t seed : {1, 2, 3}) {
            auto res = mukai_middle_ext_order(n, 16, seed);
            std::cout << "n=" << n << " seed=" << seed << " order=" << res.order
                      << " rank=" << res.solution_rank << " stabilized=" << res.stabilized
                      << " batches=" << res.batches_used << "\n";
        }
    }
    return 0;
}
