// chandeg: command-line frontend over the shared-library C API.
//
// Subcommands: hard, degrade, bound, gap, polar. Exit codes: 0 success,
// 2 validation/usage failure, 3 resource guard.

#include <chandeg/chandeg.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

struct CliError {
    int code;
    std::string message;
};

void fail(cdg_status status, const std::string& context) {
    const int code = status == CDG_ERROR_LIMIT ? kExitResource : kExitValidation;
    throw CliError{code, context + ": " + cdg_last_error()};
}

void require_ok(cdg_status status, const std::string& context) {
    if (status != CDG_OK) fail(status, context);
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Report JSON carries the same 12-significant-digit values as the CSV.
double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

// "a", "a..b", "a..b:+s", "a..b:*k", and comma-separated unions of those.
std::vector<long long> parse_range(const std::string& text) {
    std::vector<long long> out;
    std::size_t pos = 0;
    const auto parse_int = [](const std::string& s) -> long long {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters in \"" + s + "\"");
        return v;
    };
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty()) throw std::invalid_argument("empty range item");
        const std::size_t dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_int(item));
        } else {
            const long long lo = parse_int(item.substr(0, dots));
            std::string rest = item.substr(dots + 2);
            long long step = 1, factor = 1;
            const std::size_t colon = rest.find(':');
            if (colon != std::string::npos) {
                const std::string suffix = rest.substr(colon + 1);
                rest = rest.substr(0, colon);
                if (suffix.size() < 2 || (suffix[0] != '+' && suffix[0] != '*'))
                    throw std::invalid_argument("range step must look like :+s or :*k");
                if (suffix[0] == '+')
                    step = parse_int(suffix.substr(1));
                else
                    factor = parse_int(suffix.substr(1));
                if (step < 1 || factor < 1)
                    throw std::invalid_argument("range step must be positive");
                if (factor > 1 && lo < 1)
                    throw std::invalid_argument("geometric range needs a positive start");
            }
            const long long hi = parse_int(rest);
            if (hi < lo) throw std::invalid_argument("range end below start");
            for (long long v = lo;;) {
                out.push_back(v);
                if (factor > 1) {
                    if (v > hi / factor) break;
                    v *= factor;
                } else {
                    if (v > hi - step) break;
                    v += step;
                }
            }
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty range");
    return out;
}

cdg_method parse_method(const std::string& name) {
    if (name == "greedy") return CDG_METHOD_GREEDY;
    if (name == "exhaustive") return CDG_METHOD_EXHAUSTIVE;
    if (name == "dp") return CDG_METHOD_DP;
    throw CliError{kExitValidation, "unknown method \"" + name + "\""};
}

// --out is joined onto CHANDEG_OUT_DIR when relative and the variable is set.
std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("CHANDEG_OUT_DIR");
    if (!dir || !*dir) return path;
    std::string joined = dir;
    if (joined.back() != '/') joined += '/';
    return joined + path;
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    const std::string resolved = resolve_out(out_path);
    std::ofstream out(resolved);
    if (!out) throw CliError{kExitValidation, "cannot write \"" + resolved + "\""};
    out << payload;
}

struct Channel {
    cdg_channel* ptr = nullptr;
    Channel() = default;
    Channel(const Channel&) = delete;
    Channel& operator=(const Channel&) = delete;
    ~Channel() { cdg_channel_free(ptr); }
};

// ------------------------------------------------------------ subcommands

int cmd_hard(int q, long long m, long long max_outputs, const std::string& out_path) {
    Channel ch;
    require_ok(cdg_hard_channel_build(q, m, max_outputs, &ch.ptr), "hard");
    char* text = nullptr;
    require_ok(cdg_channel_to_json(ch.ptr, &text), "hard");
    const std::string payload = text;
    cdg_string_free(text);
    emit(out_path, payload);
    return kExitOk;
}

int cmd_degrade(const std::string& in_path, long long L, const std::string& method,
                const std::string& mode, const std::string& out_path) {
    Channel ch;
    require_ok(cdg_channel_read_file(in_path.c_str(), &ch.ptr), "degrade");
    const cdg_block_mode bm = mode == "exactly" ? CDG_BLOCKS_EXACTLY : CDG_BLOCKS_AT_MOST;
    cdg_degrade_result* r = nullptr;
    require_ok(cdg_degrade(ch.ptr, L, parse_method(method), bm, &r), "degrade");
    char* text = nullptr;
    const cdg_status st = cdg_degrade_result_to_json(r, &text);
    if (st != CDG_OK) {
        cdg_degrade_result_free(r);
        fail(st, "degrade");
    }
    const std::string payload = text;
    cdg_string_free(text);
    cdg_degrade_result_free(r);
    emit(out_path, payload);
    return kExitOk;
}

int cmd_bound(const std::string& q_range, const std::string& L_range, double epsilon,
              const std::string& format, const std::string& out_path) {
    const std::vector<long long> qs = parse_range(q_range);
    nlohmann::json rows = nlohmann::json::array();
    std::string csv;
    if (epsilon > 0.0) {
        csv = "q,epsilon,log10_L,L\n";
        for (long long q : qs) {
            double lg = 0.0;
            require_ok(cdg_alphabet_size_for_cost(static_cast<int32_t>(q), epsilon, &lg),
                       "bound");
            const double L = std::pow(10.0, lg);
            csv += std::to_string(q) + "," + fmt12(epsilon) + "," + fmt12(lg) + "," + fmt12(L) +
                   "\n";
            rows.push_back({{"q", q},
                            {"epsilon", round12(epsilon)},
                            {"log10_L", round12(lg)},
                            {"L", round12(L)}});
        }
    } else {
        const std::vector<long long> Ls = parse_range(L_range);
        csv = "q,L,lower_exact,lower_stirling,upper_old,upper_new\n";
        for (long long q : qs) {
            for (long long L : Ls) {
                double lower = 0, stirling = 0, upper_old = 0, upper_new = 0;
                const auto qd = static_cast<int32_t>(q);
                const auto Ld = static_cast<double>(L);
                require_ok(cdg_cost_lower_bound(qd, Ld, &lower), "bound");
                require_ok(cdg_cost_lower_bound_stirling(qd, Ld, &stirling), "bound");
                require_ok(cdg_cost_upper_bounds(qd, Ld, &upper_old, &upper_new), "bound");
                csv += std::to_string(q) + "," + std::to_string(L) + "," + fmt12(lower) + "," +
                       fmt12(stirling) + "," + fmt12(upper_old) + "," + fmt12(upper_new) + "\n";
                rows.push_back({{"q", q},
                                {"L", L},
                                {"lower_exact", round12(lower)},
                                {"lower_stirling", round12(stirling)},
                                {"upper_old", round12(upper_old)},
                                {"upper_new", round12(upper_new)}});
            }
        }
    }
    emit(out_path, format == "json" ? rows.dump(2) + "\n" : csv);
    return kExitOk;
}

int cmd_gap(int q, const std::string& m_range, long long L, std::string method,
            long long max_outputs, const std::string& format, const std::string& out_path) {
    if (method.empty()) method = q == 2 ? "dp" : "greedy";
    const cdg_method m = parse_method(method);
    std::string csv = "M,cost,bound,ratio\n";
    nlohmann::json rows = nlohmann::json::array();
    for (long long grid : parse_range(m_range)) {
        Channel ch;
        require_ok(cdg_hard_channel_build(q, grid, max_outputs, &ch.ptr), "gap");
        cdg_degrade_result* r = nullptr;
        require_ok(cdg_degrade(ch.ptr, L, m, CDG_BLOCKS_AT_MOST, &r), "gap");
        const double cost = cdg_degrade_result_drop(r);
        cdg_degrade_result_free(r);
        double bound = 0.0;
        require_ok(cdg_cost_lower_bound(q, static_cast<double>(L), &bound), "gap");
        const double ratio = cost / bound;
        csv += std::to_string(grid) + "," + fmt12(cost) + "," + fmt12(bound) + "," +
               fmt12(ratio) + "\n";
        rows.push_back({{"M", grid},
                        {"cost", round12(cost)},
                        {"bound", round12(bound)},
                        {"ratio", round12(ratio)}});
    }
    emit(out_path, format == "json" ? rows.dump(2) + "\n" : csv);
    return kExitOk;
}

int cmd_polar(int q, long long m, long long L, int depth, std::string method, double threshold,
              long long max_outputs, const std::string& format, const std::string& out_path) {
    if (method.empty()) method = q == 2 ? "dp" : "greedy";
    double mi_full = 0, mi_degraded = 0, avg = 0, ceiling = 0;
    int32_t identical = 0;
    cdg_polar_run* run = nullptr;
    require_ok(cdg_rate_loss(q, m, L, depth, parse_method(method), threshold, max_outputs,
                             &mi_full, &mi_degraded, &avg, &ceiling, &identical, &run),
               "polar");
    char* leaf_csv = nullptr;
    const cdg_status st = cdg_polar_run_csv(run, &leaf_csv);
    if (st != CDG_OK) {
        cdg_polar_run_free(run);
        fail(st, "polar");
    }

    std::string payload;
    if (format == "json") {
        nlohmann::json j;
        j["summary"] = {{"I_W", round12(mi_full)},
                        {"I_Q", round12(mi_degraded)},
                        {"leaf_avg_mi", round12(avg)},
                        {"rate_ceiling", round12(ceiling)},
                        {"identical_leaves", identical == 1}};
        nlohmann::json leaves = nlohmann::json::array();
        const int64_t count = cdg_polar_run_leaf_count(run);
        for (int64_t i = 0; i < count; ++i) {
            const char* path = nullptr;
            double mi = 0, pe = 0;
            int64_t size = 0;
            cdg_polar_run_leaf(run, i, &path, &mi, &pe, &size);
            leaves.push_back({{"path", path},
                              {"mi_nats", round12(mi)},
                              {"pe", round12(pe)},
                              {"output_size", size}});
        }
        j["leaves"] = std::move(leaves);
        payload = j.dump(2) + "\n";
    } else {
        payload = "# I_W=" + fmt12(mi_full) + "\n# I_Q=" + fmt12(mi_degraded) +
                  "\n# leaf_avg_mi=" + fmt12(avg) + "\n# rate_ceiling=" + fmt12(ceiling) +
                  "\n# identical_leaves=" + (identical ? std::string("1") : std::string("0")) +
                  "\n" + leaf_csv;
    }
    cdg_string_free(leaf_csv);
    cdg_polar_run_free(run);
    emit(out_path, payload);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"channel degrading toolkit"};
    app.require_subcommand(1);

    long long seed = 12345;  // reserved for randomized sweeps; kept for reproducible reruns
    app.add_option("--seed", seed, "RNG seed (subcommands here are deterministic)");

    // hard
    auto* hard = app.add_subcommand("hard", "emit the hard channel as channel JSON");
    int hard_q = 2;
    long long hard_m = 1, hard_cap = 0;
    std::string hard_out;
    hard->add_option("--q", hard_q, "input alphabet size")->required();
    hard->add_option("--M", hard_m, "grid parameter")->required();
    hard->add_option("--max-outputs", hard_cap, "output alphabet cap (default 1e6)");
    hard->add_option("--out", hard_out, "output file (default stdout)");

    // degrade
    auto* degrade = app.add_subcommand("degrade", "degrade a channel file to L letters");
    std::string degrade_in, degrade_method = "greedy", degrade_mode = "at-most", degrade_out;
    long long degrade_L = 1;
    degrade->add_option("--in", degrade_in, "channel JSON file")->required();
    degrade->add_option("--L", degrade_L, "target letter count")->required();
    degrade->add_option("--method", degrade_method, "greedy|exhaustive|dp");
    degrade->add_option("--mode", degrade_mode, "at-most|exactly");
    degrade->add_option("--out", degrade_out, "output file (default stdout)");

    // bound
    auto* bound = app.add_subcommand("bound", "tabulate degrading-cost bounds");
    std::string bound_q = "2..8", bound_L = "2..1024:*2", bound_fmt = "csv", bound_out;
    double bound_eps = 0.0;
    bound->add_option("--q", bound_q, "q range, e.g. 2..10 or 2,4,8");
    bound->add_option("--L", bound_L, "L range, e.g. 2..16384:*2");
    bound->add_option("--epsilon", bound_eps,
                      "solve for the alphabet size at this cost instead");
    bound->add_option("--format", bound_fmt, "csv|json");
    bound->add_option("--out", bound_out, "output file (default stdout)");

    // gap
    auto* gap = app.add_subcommand("gap", "optimal hard-channel cost against the bound");
    int gap_q = 2;
    std::string gap_m = "8..64:*2", gap_method, gap_fmt = "csv", gap_out;
    long long gap_L = 4, gap_cap = 0;
    gap->add_option("--q", gap_q, "input alphabet size");
    gap->add_option("--M", gap_m, "grid-parameter range");
    gap->add_option("--L", gap_L, "target letter count");
    gap->add_option("--method", gap_method, "greedy|exhaustive|dp (default dp for q=2)");
    gap->add_option("--max-outputs", gap_cap, "output alphabet cap (default 1e6)");
    gap->add_option("--format", gap_fmt, "csv|json");
    gap->add_option("--out", gap_out, "output file (default stdout)");

    // polar
    auto* polar = app.add_subcommand("polar", "degrade-after-each-step construction");
    int polar_q = 2, polar_depth = 0;
    long long polar_m = 1, polar_L = 2, polar_cap = 0;
    std::string polar_method, polar_fmt = "csv", polar_out;
    double polar_threshold = 0.99;
    polar->add_option("--q", polar_q, "input alphabet size");
    polar->add_option("--M", polar_m, "grid parameter")->required();
    polar->add_option("--L", polar_L, "letter budget after each step")->required();
    polar->add_option("--depth", polar_depth, "number of polarization steps");
    polar->add_option("--method", polar_method, "greedy|exhaustive|dp (default dp for q=2)");
    polar->add_option("--threshold", polar_threshold, "good-leaf threshold on mi / ln q");
    polar->add_option("--max-outputs", polar_cap, "output alphabet cap (default 1e6)");
    polar->add_option("--format", polar_fmt, "csv|json");
    polar->add_option("--out", polar_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (hard->parsed()) return cmd_hard(hard_q, hard_m, hard_cap, hard_out);
        if (degrade->parsed())
            return cmd_degrade(degrade_in, degrade_L, degrade_method, degrade_mode, degrade_out);
        if (bound->parsed()) return cmd_bound(bound_q, bound_L, bound_eps, bound_fmt, bound_out);
        if (gap->parsed())
            return cmd_gap(gap_q, gap_m, gap_L, gap_method, gap_cap, gap_fmt, gap_out);
        if (polar->parsed())
            return cmd_polar(polar_q, polar_m, polar_L, polar_depth, polar_method,
                             polar_threshold, polar_cap, polar_fmt, polar_out);
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitValidation;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
