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

// Deterministic graph generators. All randomness comes from one SplitMix64
// stream seeded with `seed`, consumed in the order documented per function,
// so the edge sets can be reproduced outside this library.

#pragma once

#include <cstddef>
#include <cstdint>

#include "qcut/graph.hpp"

namespace qcut {

/// G(n, p): pairs (i, j), i < j, visited row by row; each draws one
/// uniform() and becomes an edge when the draw is < p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Holme-Kim growth. Nodes 0..m-1 start isolated; the repeated-node list
/// starts as [0..m-1]. Node s = m..n-1 then:
///   picks m distinct targets by drawing below(|list|) from the list until m
///   distinct ones are found, kept in draw order;
///   links to the last target T (removing it);
///   for each further link: with probability p (one uniform() draw) links
///   to a neighbor of T not yet linked to s, chosen by below() from the
///   sorted candidates (falling through when there are none); otherwise T becomes the
///   next remaining target not yet linked to s (taken from the back) and s
///   links to it, stopping early when none is left;
///   appends every linked node to the list, then s itself m times.
/// Requires 1 <= m < n and 0 <= p <= 1.
Graph powerlaw_cluster(std::size_t n, std::size_t m, double p, std::uint64_t seed);

/// `count` disjoint cliques of `size` nodes; clique c holds nodes
/// c*size .. c*size+size-1.
Graph disjoint_cliques(std::size_t count, std::size_t size);

/// Path 0 - 1 - ... - n-1.
Graph path_graph(std::size_t n);

Graph complete_graph(std::size_t n);

/// G(n, p) redrawn until connected: attempt a uses seed
/// derive_seed(seed, a). Throws after 10000 failed attempts.
Graph random_connected(std::size_t n, double p, std::uint64_t seed);

}  // namespace qcut
