#include "hard_channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "errors.hpp"

namespace chandeg {

namespace {

void check_spec(const HardChannelSpec& spec) {
    if (spec.q < 2) throw std::invalid_argument("hard channel requires q >= 2");
    if (spec.m < 1) throw std::invalid_argument("hard channel requires m >= 1");
    const BigInt count = hard_channel_output_count(spec.q, spec.m);
    if (count > spec.max_outputs)
        throw ResourceLimitError("hard channel q=" + std::to_string(spec.q) +
                                 " m=" + std::to_string(spec.m) + " has " + count.str() +
                                 " outputs, over the cap of " + std::to_string(spec.max_outputs));
}

void check_label(const HardChannelSpec& spec, std::span<const int> label) {
    if (label.size() != static_cast<std::size_t>(spec.q))
        throw std::invalid_argument("composition label has wrong length");
    long long sum = 0;
    for (int j : label) {
        if (j < 0) throw std::invalid_argument("composition label has a negative entry");
        sum += j;
    }
    if (sum != spec.m)
        throw std::invalid_argument("composition label sums to " + std::to_string(sum) +
                                    ", expected " + std::to_string(spec.m));
}

// Colex order: the last coordinate is the slowest, so (2,0) < (1,1) < (0,2).
std::vector<std::vector<int>> colex_compositions(int parts, int total) {
    std::vector<std::vector<int>> out;
    if (parts == 1) {
        out.push_back({total});
        return out;
    }
    for (int last = 0; last <= total; ++last) {
        for (auto& prefix : colex_compositions(parts - 1, total - last)) {
            prefix.push_back(last);
            out.push_back(std::move(prefix));
        }
    }
    return out;
}

}  // namespace

BigInt hard_channel_output_count(int q, long long m) { return binomial(m + q - 1, q - 1); }

std::vector<std::vector<int>> composition_labels(const HardChannelSpec& spec) {
    check_spec(spec);
    return colex_compositions(spec.q, static_cast<int>(spec.m));
}

std::string composition_to_string(std::span<const int> label) {
    std::string s;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(label[i]);
    }
    return s;
}

Channel build_hard_channel(const HardChannelSpec& spec) {
    const auto labels = composition_labels(spec);
    const BigInt count = hard_channel_output_count(spec.q, spec.m);
    const BigInt denom = BigInt(spec.m) * count;

    std::vector<std::string> names;
    names.reserve(labels.size());
    for (const auto& lab : labels) names.push_back(composition_to_string(lab));

    std::vector<std::vector<Rat>> w(spec.q, std::vector<Rat>(labels.size()));
    for (int x = 0; x < spec.q; ++x)
        for (std::size_t y = 0; y < labels.size(); ++y)
            w[x][y] = Rat(BigInt(spec.q) * labels[y][x], denom);

    std::vector<Rat> px(spec.q, Rat(1, spec.q));
    return Channel::from_rationals(spec.q, std::move(names), std::move(w), std::move(px));
}

std::vector<Rat> posterior_of_label(const HardChannelSpec& spec, std::span<const int> label) {
    check_spec(spec);
    check_label(spec, label);
    std::vector<Rat> post;
    post.reserve(label.size());
    for (int j : label) post.emplace_back(j, spec.m);
    return post;
}

std::vector<std::vector<int>> symmetry_orbits(const HardChannelSpec& spec) {
    const auto labels = composition_labels(spec);
    std::map<std::vector<int>, int> orbit_of;
    std::vector<std::vector<int>> orbits;
    for (std::size_t y = 0; y < labels.size(); ++y) {
        std::vector<int> key = labels[y];
        std::sort(key.begin(), key.end(), std::greater<int>());
        auto [it, inserted] = orbit_of.try_emplace(std::move(key), orbits.size());
        if (inserted) orbits.emplace_back();
        orbits[it->second].push_back(static_cast<int>(y));
    }
    return orbits;
}

bool gallager_symmetric_on(const Channel& ch, std::span<const int> output_set) {
    if (output_set.empty()) return false;
    for (int y : output_set)
        if (y < 0 || y >= ch.output_count())
            throw std::invalid_argument("output index out of range");

    if (ch.exact()) {
        std::vector<Rat> first_row, first_col;
        for (int y : output_set) first_row.push_back(ch.w_exact[0][y]);
        for (int x = 0; x < ch.q; ++x) first_col.push_back(ch.w_exact[x][output_set[0]]);
        std::sort(first_row.begin(), first_row.end());
        std::sort(first_col.begin(), first_col.end());
        for (int x = 1; x < ch.q; ++x) {
            std::vector<Rat> row;
            for (int y : output_set) row.push_back(ch.w_exact[x][y]);
            std::sort(row.begin(), row.end());
            if (row != first_row) return false;
        }
        for (std::size_t i = 1; i < output_set.size(); ++i) {
            std::vector<Rat> col;
            for (int x = 0; x < ch.q; ++x) col.push_back(ch.w_exact[x][output_set[i]]);
            std::sort(col.begin(), col.end());
            if (col != first_col) return false;
        }
        return true;
    }

    std::vector<double> first_row, first_col;
    for (int y : output_set) first_row.push_back(ch.w[0][y]);
    for (int x = 0; x < ch.q; ++x) first_col.push_back(ch.w[x][output_set[0]]);
    std::sort(first_row.begin(), first_row.end());
    std::sort(first_col.begin(), first_col.end());
    const auto close = [](const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::abs(a[i] - b[i]) > 1e-12) return false;
        return true;
    };
    for (int x = 1; x < ch.q; ++x) {
        std::vector<double> row;
        for (int y : output_set) row.push_back(ch.w[x][y]);
        std::sort(row.begin(), row.end());
        if (!close(row, first_row)) return false;
    }
    for (std::size_t i = 1; i < output_set.size(); ++i) {
        std::vector<double> col;
        for (int x = 0; x < ch.q; ++x) col.push_back(ch.w[x][output_set[i]]);
        std::sort(col.begin(), col.end());
        if (!close(col, first_col)) return false;
    }
    return true;
}

double hard_channel_mi(const HardChannelSpec& spec) {
    const auto labels = composition_labels(spec);
    const double m = static_cast<double>(spec.m);
    double avg = 0.0;
    std::vector<double> post(spec.q);
    for (const auto& lab : labels) {
        for (int x = 0; x < spec.q; ++x) post[x] = lab[x] / m;
        avg += entropy(post);
    }
    avg /= static_cast<double>(labels.size());
    return std::log(static_cast<double>(spec.q)) - avg;
}

}  // namespace chandeg
