#pragma once

#include <span>
#include <string>
#include <vector>

#include "channel.hpp"

namespace chandeg {

/// Parameters of the composition channel: outputs are the integer vectors
/// (j_1..j_q) with nonnegative entries summing to m, so the output alphabet
/// size is binom(m+q-1, q-1).
struct HardChannelSpec {
    int q = 2;
    long long m = 1;
    long long max_outputs = 1'000'000;  // size guard; growth is the whole point
};

BigInt hard_channel_output_count(int q, long long m);

/// All composition labels in colexicographic order (the canonical output
/// order used everywhere).
std::vector<std::vector<int>> composition_labels(const HardChannelSpec& spec);

std::string composition_to_string(std::span<const int> label);

/// Builds the channel with W(label|x) = q*j_x / (m * binom(m+q-1, q-1)) and
/// uniform input distribution, rational-exact.
Channel build_hard_channel(const HardChannelSpec& spec);

/// Posterior vector (j_1/m, ..., j_q/m) of a composition label; equals the
/// built channel's Bayes posterior exactly.
std::vector<Rat> posterior_of_label(const HardChannelSpec& spec, std::span<const int> label);

/// Output index sets closed under coordinate permutation (equal multisets of
/// j-values), in order of first appearance.
std::vector<std::vector<int>> symmetry_orbits(const HardChannelSpec& spec);

/// Checks Gallager symmetry on one output subset: in the submatrix, every row
/// is a permutation of the first row and every column a permutation of the
/// first column. Exact when the channel is exact.
bool gallager_symmetric_on(const Channel& ch, std::span<const int> output_set);

/// ln q - average posterior entropy; uses the uniform output distribution
/// shortcut and must agree with mutual_information of the built channel.
double hard_channel_mi(const HardChannelSpec& spec);

}  // namespace chandeg
