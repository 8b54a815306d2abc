#ifndef BESTPATH_RNG_HPP
#define BESTPATH_RNG_HPP

#include <cstdint>
#include <vector>

namespace bestpath {

// SplitMix64 (Steele, Lea & Flood 2014). Chosen because the whole generator
// is a dozen lines we control, so shuffles and fold assignments reproduce
// bit-for-bit on any platform, and because it splits cleanly into per-repeat
// substreams. State advances by the golden-ratio increment; output is the
// 64-bit variant of the MurmurHash3 finalizer.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Independent child stream for substream `index` (e.g. one per repeat of
    // a repeated split experiment). Children with distinct indices have
    // distinct, well-mixed seeds; drawing from a child never perturbs the
    // parent.
    SplitMix64 split(std::uint64_t index) const {
        SplitMix64 mixer(state_ ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        return SplitMix64(mixer.next());
    }

    // Uniform draw from [0, bound) by rejection from the top of the range,
    // avoiding modulo bias. bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::uint64_t state_;
};

// Fisher-Yates shuffle written out explicitly (std::shuffle's draw sequence
// is implementation-defined, which would break cross-platform
// reproducibility of fold assignments).
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

// 0..n-1 in shuffled order.
std::vector<int> shuffled_indices(int n, SplitMix64& rng);

}  // namespace bestpath

#endif
