#pragma once

#include <span>
#include <utility>
#include <vector>

#include "channel.hpp"

namespace chandeg {

enum class BlockMode { AtMost, Exactly };
enum class Method { Greedy, Exhaustive, BinaryDP };

struct BlockCost {
    double cost;        // exact mutual-information loss of the block, nats
    double quad_bound;  // quadratic lower bound on it, nats
};

struct DegradeResult {
    Partition partition;
    Channel degraded;
    double drop;  // I(W) - I(Q), nats
    std::vector<BlockCost> per_block;
};

/// Exact mutual-information loss of fusing output set A into one letter.
/// Returns 0 when A carries no output probability.
double merge_cost(const Channel& ch, std::span<const int> A);

/// Quadratic lower bound on merge_cost (mean-centered form).
double merge_cost_quad(const Channel& ch, std::span<const int> A);

/// Both algebraic forms of the quadratic bound (mean-centered, pairwise).
/// They agree up to rounding; exposed so tests can pin the agreement.
std::pair<double, double> merge_cost_quad_forms(const Channel& ch, std::span<const int> A);

struct DefectPair {
    double jensen_gap;  // h(mixture) - mixture of h, nats
    double quad_bound;  // (1/2) * weighted squared spread, nats
};

/// Strong-concavity defect of entropy on weighted points in [0,1]^n.
/// jensen_gap >= quad_bound for every admissible input.
DefectPair concavity_defect(std::span<const std::vector<double>> points,
                            std::span<const double> weights);

/// Minimizes the total merge cost over all partitions into at most (or
/// exactly) L blocks by enumerating restricted growth strings. Guarded at
/// 12 outputs; ties broken by lexicographically smallest growth string.
DegradeResult degrade_exhaustive(const Channel& ch, int L, BlockMode mode = BlockMode::AtMost);

/// Repeatedly merges the pair of current letters with the smallest pairwise
/// merge cost until L letters remain; deterministic smallest-index tie-break.
DegradeResult degrade_greedy(const Channel& ch, int L);

/// Optimal quantizer for binary-input channels: sorts outputs by posterior
/// P(X=1|Y) and runs a dynamic program over contiguous segments.
DegradeResult degrade_binary_dp(const Channel& ch, int L, BlockMode mode = BlockMode::AtMost);

DegradeResult degrade(const Channel& ch, int L, Method method, BlockMode mode = BlockMode::AtMost);

}  // namespace chandeg
