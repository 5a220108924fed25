#pragma once

#include <string>
#include <vector>

#include "hard_channel.hpp"
#include "quantizer.hpp"

namespace chandeg {

/// Single-step transforms for uniform-input channels over the Z_q group.
/// Outputs of the results are the product alphabets, relabeled by index.
Channel polar_minus(const Channel& ch);
Channel polar_plus(const Channel& ch);

/// Losslessly fuses outputs whose posteriors agree (to 1e-12 per coordinate);
/// outputs with zero probability join the first block.
Channel merge_duplicate_posteriors(const Channel& ch);

/// Exact MAP-decision error probability: 1 - sum_y max_x px(x) W(y|x).
double map_error(const Channel& ch);

struct PolarNode {
    std::string path;  // '-'/'+' choices from the root
    Channel channel;   // synthesized channel after degrading
    double mi;         // nats
    double pe;         // MAP error
};

/// Degrades ch to at most L outputs, then recursively applies minus/plus,
/// each followed by duplicate merging and degrading, down to the given
/// depth. Returns all 2^depth leaves in path order ('-' before '+').
std::vector<PolarNode> polar_construct(const Channel& ch, int depth, int L, Method method);

/// Leaf table in CSV form: path,mi_nats,pe,output_size.
std::string leaf_csv(const std::vector<PolarNode>& leaves);

struct RateLossReport {
    double mi_full;        // I of the underlying channel
    double mi_degraded;    // I after the initial degrading to L
    double leaf_avg_mi;    // average leaf mutual information, nats
    double good_fraction;  // fraction of leaves with mi >= threshold * ln q
    double rate_ceiling;   // good_fraction * ln q, nats per symbol
    bool leaves_identical; // construct(W) vs construct(degrade(W)) bit-for-bit
    std::vector<PolarNode> leaves;
};

/// Runs the construction on the hard channel and on its pre-degraded version
/// and reports the rate ceiling; the two leaf tables must coincide since the
/// construction sees the same degraded channel either way.
RateLossReport rate_loss_report(const HardChannelSpec& spec, int L, int depth, Method method,
                                double threshold = 0.99);

}  // namespace chandeg
