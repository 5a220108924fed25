#include "polar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "errors.hpp"

namespace chandeg {

namespace {

constexpr int kMaxDepth = 10;
constexpr long long kMaxProductOutputs = 4'000'000;

void check_uniform_px(const Channel& ch) {
    for (double p : ch.px)
        if (std::abs(p - 1.0 / ch.q) > 1e-12)
            throw std::invalid_argument("polar transforms require a uniform input distribution");
}

std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

Channel degrade_to(const Channel& ch, int L, Method method) {
    if (ch.output_count() <= L) return ch;
    return degrade(ch, L, method).degraded;
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

Channel polar_minus(const Channel& ch) {
    check_uniform_px(ch);
    const int q = ch.q;
    const long long n = ch.output_count();
    if (n * n > kMaxProductOutputs)
        throw ResourceLimitError("polar_minus product alphabet too large");

    std::vector<std::vector<double>> w(q, std::vector<double>(n * n, 0.0));
    for (int u1 = 0; u1 < q; ++u1)
        for (long long y1 = 0; y1 < n; ++y1)
            for (long long y2 = 0; y2 < n; ++y2) {
                double s = 0.0;
                for (int u2 = 0; u2 < q; ++u2)
                    s += ch.w[(u1 + u2) % q][y1] * ch.w[u2][y2];
                w[u1][y1 * n + y2] = s / q;
            }
    return Channel::from_doubles(q, index_labels(n * n), std::move(w),
                                 std::vector<double>(q, 1.0 / q));
}

Channel polar_plus(const Channel& ch) {
    check_uniform_px(ch);
    const int q = ch.q;
    const long long n = ch.output_count();
    if (n * n * q > kMaxProductOutputs)
        throw ResourceLimitError("polar_plus product alphabet too large");

    std::vector<std::vector<double>> w(q, std::vector<double>(n * n * q, 0.0));
    for (int u2 = 0; u2 < q; ++u2)
        for (long long y1 = 0; y1 < n; ++y1)
            for (long long y2 = 0; y2 < n; ++y2)
                for (int u1 = 0; u1 < q; ++u1)
                    w[u2][(y1 * n + y2) * q + u1] =
                        ch.w[(u1 + u2) % q][y1] * ch.w[u2][y2] / q;
    return Channel::from_doubles(q, index_labels(n * n * q), std::move(w),
                                 std::vector<double>(q, 1.0 / q));
}

Channel merge_duplicate_posteriors(const Channel& ch) {
    const JointView jv = joint_view(ch);
    const int n = ch.output_count();

    std::map<std::vector<long long>, int> block_of;
    std::vector<std::vector<int>> blocks;
    std::vector<int> zero_py;
    for (int y = 0; y < n; ++y) {
        if (!jv.defined[y]) {
            zero_py.push_back(y);
            continue;
        }
        std::vector<long long> key(ch.q);
        for (int x = 0; x < ch.q; ++x) key[x] = std::llround(jv.posteriors[y][x] * 1e12);
        auto [it, inserted] = block_of.try_emplace(std::move(key), blocks.size());
        if (inserted) blocks.emplace_back();
        blocks[it->second].push_back(y);
    }
    if (blocks.empty()) blocks.emplace_back();  // all outputs have zero probability
    blocks.front().insert(blocks.front().end(), zero_py.begin(), zero_py.end());

    Partition part;
    part.blocks = std::move(blocks);
    return apply_partition(ch, part);
}

double map_error(const Channel& ch) {
    double correct = 0.0;
    for (int y = 0; y < ch.output_count(); ++y) {
        double best = 0.0;
        for (int x = 0; x < ch.q; ++x) best = std::max(best, ch.px[x] * ch.w[x][y]);
        correct += best;
    }
    return 1.0 - correct;
}

namespace {

void construct_rec(const Channel& node, int depth, int L, Method method, std::string& path,
                   std::vector<PolarNode>& out) {
    if (depth == 0) {
        PolarNode leaf;
        leaf.path = path;
        // rounding can leave these a few ulp below their true nonnegative value
        leaf.mi = std::max(mutual_information(node), 0.0);
        leaf.pe = std::max(map_error(node), 0.0);
        leaf.channel = node;
        out.push_back(std::move(leaf));
        return;
    }
    for (char sign : {'-', '+'}) {
        Channel t = sign == '-' ? polar_minus(node) : polar_plus(node);
        t = merge_duplicate_posteriors(t);
        t = degrade_to(t, L, method);
        path.push_back(sign);
        construct_rec(t, depth - 1, L, method, path, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<PolarNode> polar_construct(const Channel& ch, int depth, int L, Method method) {
    check_uniform_px(ch);
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    if (depth > kMaxDepth)
        throw ResourceLimitError("depth " + std::to_string(depth) + " over the guard of " +
                                 std::to_string(kMaxDepth));
    if (L < ch.q)
        throw std::invalid_argument("construction requires L >= q");
    if (method == Method::BinaryDP && ch.q != 2)
        throw std::invalid_argument("dp degrading requires q = 2");
    const double work = std::ldexp(static_cast<double>(L) * L * ch.q, depth);
    if (work > 5e7) throw ResourceLimitError("construction work guard exceeded");

    Channel root = degrade_to(ch, L, method);
    std::vector<PolarNode> out;
    out.reserve(1ull << depth);
    std::string path;
    construct_rec(root, depth, L, method, path, out);
    return out;
}

std::string leaf_csv(const std::vector<PolarNode>& leaves) {
    std::string s = "path,mi_nats,pe,output_size\n";
    for (const auto& leaf : leaves) {
        s += leaf.path.empty() ? "." : leaf.path;
        s += ",";
        s += fmt12(leaf.mi);
        s += ",";
        s += fmt12(leaf.pe);
        s += ",";
        s += std::to_string(leaf.channel.output_count());
        s += "\n";
    }
    return s;
}

RateLossReport rate_loss_report(const HardChannelSpec& spec, int L, int depth, Method method,
                                double threshold) {
    const Channel w = build_hard_channel(spec);
    const Channel q = degrade_to(w, L, method);

    RateLossReport rep;
    rep.mi_full = mutual_information(w);
    rep.mi_degraded = mutual_information(q);
    rep.leaves = polar_construct(w, depth, L, method);
    const std::vector<PolarNode> from_degraded = polar_construct(q, depth, L, method);
    rep.leaves_identical = leaf_csv(rep.leaves) == leaf_csv(from_degraded);

    const double lnq = std::log(static_cast<double>(spec.q));
    double sum = 0.0;
    long long good = 0;
    for (const auto& leaf : rep.leaves) {
        sum += leaf.mi;
        if (leaf.mi >= threshold * lnq) ++good;
    }
    rep.leaf_avg_mi = sum / static_cast<double>(rep.leaves.size());
    rep.good_fraction = static_cast<double>(good) / static_cast<double>(rep.leaves.size());
    rep.rate_ceiling = rep.good_fraction * lnq;
    return rep;
}

}  // namespace chandeg
