#include "quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "errors.hpp"

namespace chandeg {

namespace {

constexpr int kExhaustiveMaxOutputs = 12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double eta(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

double entropy_raw(std::span<const double> p) {
    double out = 0.0;
    for (double v : p) out += eta(v);
    return out;
}

struct OutputStats {
    int q = 0;
    int n = 0;
    std::vector<double> py;
    std::vector<std::vector<double>> post;  // zeros where py == 0
    std::vector<double> wh;                 // py * h(post)

    static OutputStats of(const Channel& ch) {
        OutputStats st;
        st.q = ch.q;
        st.n = ch.output_count();
        const JointView jv = joint_view(ch);
        st.py = jv.py;
        st.post = jv.posteriors;
        st.wh.resize(st.n);
        for (int y = 0; y < st.n; ++y)
            st.wh[y] = jv.defined[y] ? st.py[y] * entropy_raw(st.post[y]) : 0.0;
        return st;
    }
};

// pi * h(u / pi) for a block with probability pi and weighted posterior sum u.
double block_term(double pi, std::span<const double> u) {
    if (pi <= 0.0) return 0.0;
    double out = 0.0;
    for (double v : u) out += eta(v / pi);
    return pi * out;
}

void check_subset(const OutputStats& st, std::span<const int> A) {
    if (A.empty()) throw std::invalid_argument("merge set is empty");
    std::vector<char> seen(st.n, 0);
    for (int y : A) {
        if (y < 0 || y >= st.n)
            throw std::invalid_argument("merge set index " + std::to_string(y) +
                                        " is not an output");
        if (seen[y])
            throw std::invalid_argument("merge set repeats index " + std::to_string(y));
        seen[y] = 1;
    }
}

double merge_cost_stats(const OutputStats& st, std::span<const int> A) {
    double pi = 0.0, whsum = 0.0;
    std::vector<double> u(st.q, 0.0);
    for (int y : A) {
        pi += st.py[y];
        whsum += st.wh[y];
        for (int x = 0; x < st.q; ++x) u[x] += st.py[y] * st.post[y][x];
    }
    if (pi <= 0.0) return 0.0;
    return block_term(pi, u) - whsum;
}

double merge_cost_quad_stats(const OutputStats& st, std::span<const int> A) {
    double pi = 0.0;
    std::vector<double> u(st.q, 0.0);
    for (int y : A) {
        pi += st.py[y];
        for (int x = 0; x < st.q; ++x) u[x] += st.py[y] * st.post[y][x];
    }
    if (pi <= 0.0) return 0.0;
    std::vector<double> mean(st.q);
    for (int x = 0; x < st.q; ++x) mean[x] = u[x] / pi;
    double s = 0.0;
    for (int y : A) {
        if (st.py[y] <= 0.0) continue;
        double d2 = 0.0;
        for (int x = 0; x < st.q; ++x) {
            const double d = st.post[y][x] - mean[x];
            d2 += d * d;
        }
        s += st.py[y] / pi * d2;
    }
    return 0.5 * pi * s;
}

DegradeResult finish(const Channel& ch, Partition part) {
    DegradeResult r;
    r.partition = part.canonical();
    r.degraded = apply_partition(ch, r.partition);
    r.drop = mutual_information(ch) - mutual_information(r.degraded);
    const OutputStats st = OutputStats::of(ch);
    r.per_block.reserve(r.partition.blocks.size());
    for (const auto& block : r.partition.blocks)
        r.per_block.push_back({merge_cost_stats(st, block), merge_cost_quad_stats(st, block)});
    return r;
}

void check_target(const Channel& ch, int L) {
    if (L < 1 || L > ch.output_count())
        throw std::invalid_argument("target output count " + std::to_string(L) +
                                    " out of range 1.." + std::to_string(ch.output_count()));
}

void check_work(const char* what, double ops) {
    if (ops > 2e10)
        throw ResourceLimitError(std::string(what) + " would need ~" + std::to_string(ops) +
                                 " operations; reduce the output alphabet first");
}

// Depth-first enumeration over restricted growth strings with incremental
// block accumulators. Total cost only grows as elements join blocks, so
// subtrees above the incumbent are pruned.
struct ExhaustiveSearch {
    const OutputStats& st;
    int n;
    int max_blocks;
    bool exactly;

    std::vector<double> pi;
    std::vector<std::vector<double>> u;
    std::vector<double> whsum;
    std::vector<double> term;
    std::vector<int> rgs;
    double running = 0.0;

    double best = kInf;
    std::vector<int> best_rgs;

    ExhaustiveSearch(const OutputStats& stats, int target, bool exact_blocks)
        : st(stats), n(stats.n), max_blocks(target), exactly(exact_blocks) {
        pi.assign(max_blocks, 0.0);
        u.assign(max_blocks, std::vector<double>(st.q, 0.0));
        whsum.assign(max_blocks, 0.0);
        term.assign(max_blocks, 0.0);
        rgs.assign(n, -1);
    }

    void run() { dfs(0, 0); }

    void dfs(int i, int used) {
        if (exactly && used + (n - i) < max_blocks) return;
        if (running > best) return;
        if (i == n) {
            if (exactly && used != max_blocks) return;
            if (running < best) {
                best = running;
                best_rgs = rgs;
            }
            return;
        }
        const int cap = std::min(used, max_blocks - 1);
        for (int c = 0; c <= cap; ++c) {
            const double old_pi = pi[c], old_wh = whsum[c], old_term = term[c];
            pi[c] += st.py[i];
            whsum[c] += st.wh[i];
            for (int x = 0; x < st.q; ++x) u[c][x] += st.py[i] * st.post[i][x];
            term[c] = block_term(pi[c], u[c]) - whsum[c];
            running += term[c] - old_term;
            rgs[i] = c;

            dfs(i + 1, c == used ? used + 1 : used);

            rgs[i] = -1;
            running -= term[c] - old_term;
            term[c] = old_term;
            whsum[c] = old_wh;
            pi[c] = old_pi;
            for (int x = 0; x < st.q; ++x) u[c][x] -= st.py[i] * st.post[i][x];
        }
    }
};

}  // namespace

double merge_cost(const Channel& ch, std::span<const int> A) {
    const OutputStats st = OutputStats::of(ch);
    check_subset(st, A);
    return merge_cost_stats(st, A);
}

double merge_cost_quad(const Channel& ch, std::span<const int> A) {
    const OutputStats st = OutputStats::of(ch);
    check_subset(st, A);
    return merge_cost_quad_stats(st, A);
}

std::pair<double, double> merge_cost_quad_forms(const Channel& ch, std::span<const int> A) {
    const OutputStats st = OutputStats::of(ch);
    check_subset(st, A);
    const double mean_form = merge_cost_quad_stats(st, A);

    double pi = 0.0;
    for (int y : A) pi += st.py[y];
    if (pi <= 0.0) return {0.0, 0.0};
    double s = 0.0;
    for (int j : A) {
        for (int k : A) {
            if (st.py[j] <= 0.0 || st.py[k] <= 0.0) continue;
            double d2 = 0.0;
            for (int x = 0; x < st.q; ++x) {
                const double d = st.post[j][x] - st.post[k][x];
                d2 += d * d;
            }
            s += (st.py[j] / pi) * (st.py[k] / pi) * d2;
        }
    }
    return {mean_form, 0.25 * pi * s};
}

DefectPair concavity_defect(std::span<const std::vector<double>> points,
                            std::span<const double> weights) {
    if (points.empty() || points.size() != weights.size())
        throw std::invalid_argument("concavity_defect: points/weights size mismatch");
    const std::size_t dim = points.front().size();
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("concavity_defect: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw std::invalid_argument("concavity_defect: weights sum to " + std::to_string(wsum));
    for (const auto& p : points) {
        if (p.size() != dim)
            throw std::invalid_argument("concavity_defect: ragged point dimensions");
        for (double v : p)
            if (v < 0.0 || v > 1.0 + 1e-12)
                throw std::invalid_argument("concavity_defect: point entry outside [0,1]");
    }

    std::vector<double> mean(dim, 0.0);
    double hmix = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t x = 0; x < dim; ++x) mean[x] += weights[j] * points[j][x];
        hmix += weights[j] * entropy_raw(points[j]);
    }
    double spread = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
        double d2 = 0.0;
        for (std::size_t x = 0; x < dim; ++x) {
            const double d = points[j][x] - mean[x];
            d2 += d * d;
        }
        spread += weights[j] * d2;
    }
    return {entropy_raw(mean) - hmix, 0.5 * spread};
}

DegradeResult degrade_exhaustive(const Channel& ch, int L, BlockMode mode) {
    check_target(ch, L);
    const int n = ch.output_count();
    if (n > kExhaustiveMaxOutputs)
        throw ResourceLimitError("exhaustive search limited to " +
                                 std::to_string(kExhaustiveMaxOutputs) + " outputs, got " +
                                 std::to_string(n));
    const OutputStats st = OutputStats::of(ch);
    ExhaustiveSearch search(st, L, mode == BlockMode::Exactly);
    search.run();

    Partition part;
    part.blocks.resize(1 + *std::max_element(search.best_rgs.begin(), search.best_rgs.end()));
    for (int y = 0; y < n; ++y) part.blocks[search.best_rgs[y]].push_back(y);
    return finish(ch, part);
}

DegradeResult degrade_greedy(const Channel& ch, int L) {
    check_target(ch, L);
    const OutputStats st = OutputStats::of(ch);
    const int n = st.n;
    check_work("greedy merging", double(n) * n * std::max(n - L, 1) * st.q);

    struct Letter {
        double pi;
        std::vector<double> u;
        double term;
        std::vector<int> members;
    };
    std::vector<Letter> letters;
    letters.reserve(n);
    for (int y = 0; y < n; ++y) {
        Letter l;
        l.pi = st.py[y];
        l.u.resize(st.q);
        for (int x = 0; x < st.q; ++x) l.u[x] = st.py[y] * st.post[y][x];
        l.term = block_term(l.pi, l.u);
        l.members = {y};
        letters.push_back(std::move(l));
    }

    std::vector<double> merged_u(st.q);
    while (static_cast<int>(letters.size()) > L) {
        int bi = -1, bj = -1;
        double best = kInf;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            for (std::size_t j = i + 1; j < letters.size(); ++j) {
                const double pi = letters[i].pi + letters[j].pi;
                for (int x = 0; x < st.q; ++x) merged_u[x] = letters[i].u[x] + letters[j].u[x];
                const double cost =
                    block_term(pi, merged_u) - letters[i].term - letters[j].term;
                if (cost < best) {
                    best = cost;
                    bi = static_cast<int>(i);
                    bj = static_cast<int>(j);
                }
            }
        }
        Letter& a = letters[bi];
        Letter& b = letters[bj];
        a.pi += b.pi;
        for (int x = 0; x < st.q; ++x) a.u[x] += b.u[x];
        a.term = block_term(a.pi, a.u);
        a.members.insert(a.members.end(), b.members.begin(), b.members.end());
        letters.erase(letters.begin() + bj);
    }

    Partition part;
    for (auto& l : letters) part.blocks.push_back(std::move(l.members));
    return finish(ch, part);
}

DegradeResult degrade_binary_dp(const Channel& ch, int L, BlockMode mode) {
    if (ch.q != 2) throw std::invalid_argument("degrade_binary_dp requires q = 2");
    check_target(ch, L);
    const OutputStats st = OutputStats::of(ch);
    const int n = st.n;
    check_work("dp segmentation", double(n) * n * L);

    // Sort by posterior P(X=1|Y) ascending; outputs with py = 0 go first and
    // are absorbed into whichever segment they land in at zero cost.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<double> key(n);
    for (int y = 0; y < n; ++y) key[y] = st.py[y] > 0.0 ? st.post[y][0] : -1.0;
    std::stable_sort(order.begin(), order.end(),
                     [&key](int a, int b) { return key[a] < key[b]; });

    std::vector<double> S(n + 1, 0.0), T(n + 1, 0.0), U0(n + 1, 0.0), U1(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        const int y = order[i];
        S[i + 1] = S[i] + st.py[y];
        T[i + 1] = T[i] + st.wh[y];
        U0[i + 1] = U0[i] + st.py[y] * st.post[y][0];
        U1[i + 1] = U1[i] + st.py[y] * st.post[y][1];
    }
    const auto seg_cost = [&](int a, int b) {
        const double pi = S[b] - S[a];
        if (pi <= 0.0) return 0.0;
        const double m0 = (U0[b] - U0[a]) / pi;
        const double m1 = (U1[b] - U1[a]) / pi;
        return pi * (eta(m0) + eta(m1)) - (T[b] - T[a]);
    };

    std::vector<std::vector<double>> f(n + 1, std::vector<double>(L + 1, kInf));
    std::vector<std::vector<int>> from(n + 1, std::vector<int>(L + 1, -1));
    f[0][0] = 0.0;
    for (int i = 1; i <= n; ++i) {
        const int lmax = std::min(i, L);
        for (int l = 1; l <= lmax; ++l) {
            for (int k = l - 1; k < i; ++k) {
                if (f[k][l - 1] == kInf) continue;
                const double c = f[k][l - 1] + seg_cost(k, i);
                if (c < f[i][l]) {
                    f[i][l] = c;
                    from[i][l] = k;
                }
            }
        }
    }

    int lbest = L;
    if (mode == BlockMode::AtMost) {
        double best = kInf;
        for (int l = 1; l <= std::min(n, L); ++l) {
            if (f[n][l] < best) {
                best = f[n][l];
                lbest = l;
            }
        }
    }

    Partition part;
    part.blocks.resize(lbest);
    int i = n;
    for (int l = lbest; l >= 1; --l) {
        const int k = from[i][l];
        for (int t = k; t < i; ++t) part.blocks[l - 1].push_back(order[t]);
        i = k;
    }
    return finish(ch, part);
}

DegradeResult degrade(const Channel& ch, int L, Method method, BlockMode mode) {
    switch (method) {
        case Method::Greedy:
            return degrade_greedy(ch, L);
        case Method::Exhaustive:
            return degrade_exhaustive(ch, L, mode);
        case Method::BinaryDP:
            return degrade_binary_dp(ch, L, mode);
    }
    throw std::invalid_argument("unknown degrading method");
}

}  // namespace chandeg
