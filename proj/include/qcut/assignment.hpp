// Copyright 2026 The qcut Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcut {

/// Node -> part label in [0, k).
struct Assignment {
    std::vector<int> labels;
    int k = 0;

    /// Throws std::invalid_argument unless every one of `n` nodes has a
    /// label in range.
    void validate(std::size_t n) const {
        if (k < 1) throw std::invalid_argument("assignment needs k >= 1");
        if (labels.size() != n) {
            throw std::invalid_argument("assignment labels " + std::to_string(labels.size()) + " nodes, graph has " +
                                        std::to_string(n));
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] < 0 || labels[i] >= k) {
                throw std::invalid_argument("label " + std::to_string(labels[i]) + " of node " + std::to_string(i) +
                                            " outside [0, " + std::to_string(k) + ")");
            }
        }
    }

    std::vector<std::size_t> part_sizes() const {
        std::vector<std::size_t> sizes(static_cast<std::size_t>(k > 0 ? k : 0), 0);
        for (int l : labels) ++sizes.at(static_cast<std::size_t>(l));
        return sizes;
    }

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

}  // namespace qcut
