#pragma once

#include <cstdint>
#include <vector>

namespace leaksim {

// Exact maximum-weight matching on a dense general graph (Blossom with dual
// variables, O(n^3)). `weights` is a symmetric n x n matrix; entries <= 0
// mean "no edge". Returns the mate of each vertex (-1 if unmatched). With
// every weight positive and n even the result is a perfect matching.
std::vector<int> max_weight_matching(const std::vector<std::vector<int64_t>> &weights);

}  // namespace leaksim
