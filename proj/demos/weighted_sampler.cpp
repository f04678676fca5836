// The heap index on its own: a dynamic weighted sampler with O(log n) updates.
#include <cstdio>
#include <vector>

#include "pagen/index.hpp"
#include "pagen/rng.hpp"

int main() {
    pagen::HeapIndex index(pagen::IndexOptions{});
    const double weights[] = {1.0, 2.0, 4.0, 8.0};
    for (pagen::NodeId v = 0; v < 4; ++v)
        index.insert(v, weights[v]);
    index.increment(0, 9.0); // node 0 now outweighs node 3

    pagen::Rng rng(7);
    std::vector<int> counts(4);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        ++counts[index.sample(rng)];

    for (pagen::NodeId v = 0; v < 4; ++v)
        std::printf("node %u  mass %4.1f  share %.4f  expected %.4f\n", v, index.mass(v),
                    counts[v] / double(draws), index.mass(v) / index.total_mass());
    std::printf("most probable: %u\n", index.most_probable());
    return 0;
}
