#include "bestpath/rng.hpp"

#include <numeric>

namespace bestpath {

std::vector<int> shuffled_indices(int n, SplitMix64& rng) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    shuffle(idx, rng);
    return idx;
}

}  // namespace bestpath
