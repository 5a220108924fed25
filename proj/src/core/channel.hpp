#pragma once

#include <span>
#include <string>
#include <vector>

#include "rational.hpp"

namespace chandeg {

/// Finite DMC with an attached input distribution. Inputs are 1..q (stored
/// 0-based), outputs are opaque ordered labels. Channels built from rationals
/// keep the exact entries alongside the double mirror; all information
/// quantities are computed from the doubles, in nats.
struct Channel {
    int q = 0;
    std::vector<std::string> outputs;
    std::vector<std::vector<double>> w;  // q rows, one column per output
    std::vector<double> px;

    // exact mirrors; empty unless the channel was built from rationals
    std::vector<std::vector<Rat>> w_exact;
    std::vector<Rat> px_exact;

    int output_count() const { return static_cast<int>(outputs.size()); }
    bool exact() const { return !w_exact.empty(); }

    static Channel from_doubles(int q, std::vector<std::string> outputs,
                                std::vector<std::vector<double>> w, std::vector<double> px);
    static Channel from_rationals(int q, std::vector<std::string> outputs,
                                  std::vector<std::vector<Rat>> w, std::vector<Rat> px);
};

/// Disjoint cover of a channel's output indices; one block per merged letter.
struct Partition {
    std::vector<std::vector<int>> blocks;

    static Partition singletons(int n);
    static Partition single_block(int n);
    /// Blocks ordered by smallest member, members ascending.
    Partition canonical() const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Output distribution and per-output posteriors. Posteriors are undefined
/// (flagged, stored as zeros) for outputs with py = 0.
struct JointView {
    std::vector<double> py;
    std::vector<std::vector<double>> posteriors;
    std::vector<char> defined;
};

struct ExactJointView {
    std::vector<Rat> py;
    std::vector<std::vector<Rat>> posteriors;
    std::vector<char> defined;
};

/// Shannon entropy in nats; 0·ln 0 = 0. Throws on negative entries.
double entropy(std::span<const double> p);

/// Collects every invariant violation; empty report iff the channel is valid.
/// Exact channels are checked exactly, float channels at tolerance 1e-12.
ValidationReport validate(const Channel& ch);

JointView joint_view(const Channel& ch);

/// Exact Bayes view; requires ch.exact().
ExactJointView exact_joint_view(const Channel& ch);

/// I(X;Y) in nats under the channel's input distribution.
double mutual_information(const Channel& ch);

/// Throws std::invalid_argument unless part is a disjoint, covering,
/// no-empty-block partition of ch's outputs.
void check_partition(const Channel& ch, const Partition& part);

/// Merges each block into a single output letter ("z0", "z1", ...). The
/// result is degraded with respect to ch by construction; exactness is
/// preserved when ch is exact.
Channel apply_partition(const Channel& ch, const Partition& part);

}  // namespace chandeg
