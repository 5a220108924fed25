#include "channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace chandeg {

namespace {

constexpr double kProbTol = 1e-12;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double eta(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

}  // namespace

Channel Channel::from_doubles(int q, std::vector<std::string> outputs,
                              std::vector<std::vector<double>> w, std::vector<double> px) {
    Channel ch;
    ch.q = q;
    ch.outputs = std::move(outputs);
    ch.w = std::move(w);
    ch.px = std::move(px);
    return ch;
}

Channel Channel::from_rationals(int q, std::vector<std::string> outputs,
                                std::vector<std::vector<Rat>> w, std::vector<Rat> px) {
    Channel ch;
    ch.q = q;
    ch.outputs = std::move(outputs);
    ch.w_exact = std::move(w);
    ch.px_exact = std::move(px);
    ch.w.resize(ch.w_exact.size());
    for (std::size_t x = 0; x < ch.w_exact.size(); ++x) {
        ch.w[x].reserve(ch.w_exact[x].size());
        for (const Rat& r : ch.w_exact[x]) ch.w[x].push_back(to_double(r));
    }
    ch.px.reserve(ch.px_exact.size());
    for (const Rat& r : ch.px_exact) ch.px.push_back(to_double(r));
    return ch;
}

Partition Partition::singletons(int n) {
    Partition p;
    p.blocks.reserve(n);
    for (int i = 0; i < n; ++i) p.blocks.push_back({i});
    return p;
}

Partition Partition::single_block(int n) {
    Partition p;
    p.blocks.emplace_back();
    for (int i = 0; i < n; ++i) p.blocks[0].push_back(i);
    return p;
}

Partition Partition::canonical() const {
    Partition out = *this;
    for (auto& b : out.blocks) std::sort(b.begin(), b.end());
    std::sort(out.blocks.begin(), out.blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "\n";
        os << violations[i];
    }
    return os.str();
}

double entropy(std::span<const double> p) {
    double out = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::invalid_argument("entropy: negative entry " + fmt(v));
        out += eta(v);
    }
    return out;
}

ValidationReport validate(const Channel& ch) {
    ValidationReport rep;
    auto add = [&rep](const std::string& s) { rep.violations.push_back(s); };

    const std::size_t n = ch.outputs.size();
    if (ch.q < 1) add("q must be at least 1, got " + std::to_string(ch.q));
    if (n == 0) add("no outputs");
    if (ch.w.size() != static_cast<std::size_t>(ch.q))
        add("W has " + std::to_string(ch.w.size()) + " rows, expected " + std::to_string(ch.q));
    if (ch.px.size() != static_cast<std::size_t>(ch.q))
        add("px has " + std::to_string(ch.px.size()) + " entries, expected " +
            std::to_string(ch.q));

    {
        std::set<std::string> seen;
        for (const auto& label : ch.outputs)
            if (!seen.insert(label).second) add("duplicate output label \"" + label + "\"");
    }

    for (std::size_t x = 0; x < ch.w.size(); ++x) {
        if (ch.w[x].size() != n) {
            add("row " + std::to_string(x + 1) + " has " + std::to_string(ch.w[x].size()) +
                " entries, expected " + std::to_string(n));
            continue;
        }
        for (std::size_t y = 0; y < n; ++y)
            if (ch.w[x][y] < 0.0)
                add("negative probability W(y" + std::to_string(y + 1) + "|x" +
                    std::to_string(x + 1) + ") = " + fmt(ch.w[x][y]));
    }

    const bool exact = ch.exact();
    if (exact && (ch.w_exact.size() != ch.w.size() || ch.px_exact.size() != ch.px.size()))
        add("exact mirror has inconsistent dimensions");

    // Row sums: exact equality in rational mode, tolerance 1e-12 otherwise.
    for (std::size_t x = 0; x < ch.w.size(); ++x) {
        if (ch.w[x].size() != n) continue;
        if (exact && x < ch.w_exact.size() && ch.w_exact[x].size() == n) {
            Rat s = 0;
            for (const Rat& v : ch.w_exact[x]) s += v;
            if (s != 1)
                add("row " + std::to_string(x + 1) + " sums to " + rat_to_string(s));
        } else {
            double s = 0.0;
            for (double v : ch.w[x]) s += v;
            if (std::abs(s - 1.0) > kProbTol)
                add("row " + std::to_string(x + 1) + " sums to " + fmt(s));
        }
    }

    for (std::size_t x = 0; x < ch.px.size(); ++x)
        if (ch.px[x] < 0.0)
            add("negative probability px(x" + std::to_string(x + 1) + ") = " + fmt(ch.px[x]));
    if (ch.px.size() == static_cast<std::size_t>(ch.q) && ch.q >= 1) {
        if (exact && ch.px_exact.size() == ch.px.size()) {
            Rat s = 0;
            for (const Rat& v : ch.px_exact) s += v;
            if (s != 1) add("px sums to " + rat_to_string(s));
        } else {
            double s = 0.0;
            for (double v : ch.px) s += v;
            if (std::abs(s - 1.0) > kProbTol) add("px sums to " + fmt(s));
        }
    }
    return rep;
}

JointView joint_view(const Channel& ch) {
    const int n = ch.output_count();
    JointView jv;
    jv.py.assign(n, 0.0);
    jv.posteriors.assign(n, std::vector<double>(ch.q, 0.0));
    jv.defined.assign(n, 0);
    for (int y = 0; y < n; ++y) {
        double py = 0.0;
        for (int x = 0; x < ch.q; ++x) py += ch.px[x] * ch.w[x][y];
        jv.py[y] = py;
        if (py > 0.0) {
            jv.defined[y] = 1;
            for (int x = 0; x < ch.q; ++x) jv.posteriors[y][x] = ch.px[x] * ch.w[x][y] / py;
        }
    }
    return jv;
}

ExactJointView exact_joint_view(const Channel& ch) {
    if (!ch.exact()) throw std::invalid_argument("exact_joint_view requires a rational channel");
    const int n = ch.output_count();
    ExactJointView jv;
    jv.py.assign(n, Rat(0));
    jv.posteriors.assign(n, std::vector<Rat>(ch.q, Rat(0)));
    jv.defined.assign(n, 0);
    for (int y = 0; y < n; ++y) {
        Rat py = 0;
        for (int x = 0; x < ch.q; ++x) py += ch.px_exact[x] * ch.w_exact[x][y];
        jv.py[y] = py;
        if (py != 0) {
            jv.defined[y] = 1;
            for (int x = 0; x < ch.q; ++x)
                jv.posteriors[y][x] = ch.px_exact[x] * ch.w_exact[x][y] / py;
        }
    }
    return jv;
}

double mutual_information(const Channel& ch) {
    const JointView jv = joint_view(ch);
    double out = entropy(ch.px);
    for (int y = 0; y < ch.output_count(); ++y) {
        if (!jv.defined[y]) continue;
        double hp = 0.0;
        for (double v : jv.posteriors[y]) hp += eta(v);
        out -= jv.py[y] * hp;
    }
    return out;
}

void check_partition(const Channel& ch, const Partition& part) {
    const int n = ch.output_count();
    if (part.blocks.empty()) throw std::invalid_argument("partition has no blocks");
    std::vector<char> seen(n, 0);
    for (const auto& block : part.blocks) {
        if (block.empty()) throw std::invalid_argument("partition has an empty block");
        for (int y : block) {
            if (y < 0 || y >= n)
                throw std::invalid_argument("partition index " + std::to_string(y) +
                                            " out of range");
            if (seen[y])
                throw std::invalid_argument("partition blocks overlap at index " +
                                            std::to_string(y));
            seen[y] = 1;
        }
    }
    for (int y = 0; y < n; ++y)
        if (!seen[y])
            throw std::invalid_argument("partition does not cover index " + std::to_string(y));
}

Channel apply_partition(const Channel& ch, const Partition& part) {
    check_partition(ch, part);
    const std::size_t k = part.blocks.size();
    std::vector<std::string> labels(k);
    for (std::size_t i = 0; i < k; ++i) labels[i] = "z" + std::to_string(i);

    if (ch.exact()) {
        std::vector<std::vector<Rat>> w(ch.q, std::vector<Rat>(k, Rat(0)));
        for (int x = 0; x < ch.q; ++x)
            for (std::size_t i = 0; i < k; ++i)
                for (int y : part.blocks[i]) w[x][i] += ch.w_exact[x][y];
        return Channel::from_rationals(ch.q, std::move(labels), std::move(w), ch.px_exact);
    }
    std::vector<std::vector<double>> w(ch.q, std::vector<double>(k, 0.0));
    for (int x = 0; x < ch.q; ++x)
        for (std::size_t i = 0; i < k; ++i)
            for (int y : part.blocks[i]) w[x][i] += ch.w[x][y];
    return Channel::from_doubles(ch.q, std::move(labels), std::move(w), ch.px);
}

}  // namespace chandeg
