#include "chandeg/chandeg.h"

#include <cstring>
#include <stdexcept>
#include <string>

#include "core/bounds.hpp"
#include "core/channel.hpp"
#include "core/errors.hpp"
#include "core/hard_channel.hpp"
#include "core/io.hpp"
#include "core/polar.hpp"
#include "core/quantizer.hpp"

struct cdg_channel {
    chandeg::Channel ch;
};

struct cdg_degrade_result {
    chandeg::DegradeResult r;
};

struct cdg_polar_run {
    std::vector<chandeg::PolarNode> leaves;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
cdg_status guarded(Fn&& fn) {
    try {
        fn();
        return CDG_OK;
    } catch (const chandeg::ParseError& e) {
        g_last_error = e.what();
        return CDG_ERROR_PARSE;
    } catch (const chandeg::ValidationError& e) {
        g_last_error = e.what();
        return CDG_ERROR_VALIDATION;
    } catch (const chandeg::ResourceLimitError& e) {
        g_last_error = e.what();
        return CDG_ERROR_LIMIT;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return CDG_ERROR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CDG_ERROR_INVALID;
    }
}

cdg_status invalid(const char* msg) {
    g_last_error = msg;
    return CDG_ERROR_INVALID;
}

chandeg::Method to_method(cdg_method m) {
    switch (m) {
        case CDG_METHOD_GREEDY:
            return chandeg::Method::Greedy;
        case CDG_METHOD_EXHAUSTIVE:
            return chandeg::Method::Exhaustive;
        case CDG_METHOD_DP:
            return chandeg::Method::BinaryDP;
    }
    throw std::invalid_argument("unknown method");
}

chandeg::HardChannelSpec make_spec(int32_t q, int64_t m, int64_t max_outputs) {
    chandeg::HardChannelSpec spec;
    spec.q = q;
    spec.m = m;
    if (max_outputs > 0) spec.max_outputs = max_outputs;
    return spec;
}

}  // namespace

extern "C" {

const char* cdg_last_error(void) { return g_last_error.c_str(); }

void cdg_string_free(char* s) { delete[] s; }

cdg_status cdg_channel_parse_json(const char* text, cdg_channel** out) {
    if (!text || !out) return invalid("null argument");
    return guarded([&] { *out = new cdg_channel{chandeg::channel_from_text(text)}; });
}

cdg_status cdg_channel_read_file(const char* path, cdg_channel** out) {
    if (!path || !out) return invalid("null argument");
    return guarded([&] {
        chandeg::Channel ch = chandeg::channel_from_file(path);
        const chandeg::ValidationReport rep = chandeg::validate(ch);
        if (!rep.ok()) throw chandeg::ValidationError(rep.to_string());
        *out = new cdg_channel{std::move(ch)};
    });
}

cdg_status cdg_channel_to_json(const cdg_channel* ch, char** out_text) {
    if (!ch || !out_text) return invalid("null argument");
    return guarded([&] { *out_text = dup_string(chandeg::channel_to_text(ch->ch)); });
}

cdg_status cdg_channel_write_file(const cdg_channel* ch, const char* path) {
    if (!ch || !path) return invalid("null argument");
    return guarded([&] { chandeg::channel_to_file(ch->ch, path); });
}

void cdg_channel_free(cdg_channel* ch) { delete ch; }

int32_t cdg_channel_input_size(const cdg_channel* ch) { return ch ? ch->ch.q : 0; }

int64_t cdg_channel_output_size(const cdg_channel* ch) {
    return ch ? ch->ch.output_count() : 0;
}

int32_t cdg_channel_is_exact(const cdg_channel* ch) {
    return ch && ch->ch.exact() ? 1 : 0;
}

cdg_status cdg_channel_validate(const cdg_channel* ch, char** report_out) {
    if (!ch) return invalid("null argument");
    if (report_out) *report_out = nullptr;
    return guarded([&] {
        const chandeg::ValidationReport rep = chandeg::validate(ch->ch);
        if (!rep.ok()) {
            if (report_out) *report_out = dup_string(rep.to_string());
            throw chandeg::ValidationError(rep.to_string());
        }
    });
}

cdg_status cdg_channel_mutual_information(const cdg_channel* ch, double* nats_out) {
    if (!ch || !nats_out) return invalid("null argument");
    return guarded([&] { *nats_out = chandeg::mutual_information(ch->ch); });
}

cdg_status cdg_channel_map_error(const cdg_channel* ch, double* pe_out) {
    if (!ch || !pe_out) return invalid("null argument");
    return guarded([&] { *pe_out = chandeg::map_error(ch->ch); });
}

cdg_status cdg_hard_channel_build(int32_t q, int64_t m, int64_t max_outputs, cdg_channel** out) {
    if (!out) return invalid("null argument");
    return guarded([&] {
        *out = new cdg_channel{chandeg::build_hard_channel(make_spec(q, m, max_outputs))};
    });
}

cdg_status cdg_hard_channel_mi(int32_t q, int64_t m, int64_t max_outputs, double* nats_out) {
    if (!nats_out) return invalid("null argument");
    return guarded(
        [&] { *nats_out = chandeg::hard_channel_mi(make_spec(q, m, max_outputs)); });
}

cdg_status cdg_degrade(const cdg_channel* ch, int64_t target_outputs, cdg_method method,
                       cdg_block_mode mode, cdg_degrade_result** out) {
    if (!ch || !out) return invalid("null argument");
    return guarded([&] {
        const auto m = to_method(method);
        const auto bm = mode == CDG_BLOCKS_EXACTLY ? chandeg::BlockMode::Exactly
                                                   : chandeg::BlockMode::AtMost;
        if (target_outputs < 1 || target_outputs > ch->ch.output_count())
            throw std::invalid_argument("target output count out of range");
        *out = new cdg_degrade_result{
            chandeg::degrade(ch->ch, static_cast<int>(target_outputs), m, bm)};
    });
}

double cdg_degrade_result_drop(const cdg_degrade_result* r) { return r ? r->r.drop : 0.0; }

int64_t cdg_degrade_result_block_count(const cdg_degrade_result* r) {
    return r ? static_cast<int64_t>(r->r.partition.blocks.size()) : 0;
}

cdg_status cdg_degrade_result_channel(const cdg_degrade_result* r, cdg_channel** out) {
    if (!r || !out) return invalid("null argument");
    return guarded([&] { *out = new cdg_channel{r->r.degraded}; });
}

cdg_status cdg_degrade_result_to_json(const cdg_degrade_result* r, char** out_text) {
    if (!r || !out_text) return invalid("null argument");
    return guarded([&] {
        *out_text = dup_string(chandeg::degrade_result_to_json(r->r).dump(2) + "\n");
    });
}

void cdg_degrade_result_free(cdg_degrade_result* r) { delete r; }

cdg_status cdg_unit_ball_volume(int32_t dim, double* out) {
    if (!out) return invalid("null argument");
    return guarded([&] { *out = chandeg::unit_ball_volume(dim); });
}

cdg_status cdg_cost_lower_bound(int32_t q, double target_outputs, double* out) {
    if (!out) return invalid("null argument");
    return guarded([&] { *out = chandeg::cost_lower_bound(q, target_outputs); });
}

cdg_status cdg_cost_lower_bound_stirling(int32_t q, double target_outputs, double* out) {
    if (!out) return invalid("null argument");
    return guarded([&] { *out = chandeg::cost_lower_bound_stirling(q, target_outputs); });
}

cdg_status cdg_cost_upper_bounds(int32_t q, double target_outputs, double* prior_out,
                                 double* sharper_out) {
    if (!prior_out || !sharper_out) return invalid("null argument");
    return guarded([&] {
        const chandeg::UpperBounds ub = chandeg::cost_upper_bounds(q, target_outputs);
        *prior_out = ub.prior;
        *sharper_out = ub.sharper;
    });
}

cdg_status cdg_alphabet_size_for_cost(int32_t q, double cost, double* log10_out) {
    if (!log10_out) return invalid("null argument");
    return guarded([&] { *log10_out = chandeg::log10_alphabet_size_for_cost(q, cost); });
}

cdg_status cdg_grid_ball_check(int32_t q, int64_t m, double radius, double* vol_out,
                               double* quad_out, double* vol_pred_out, double* quad_pred_out) {
    if (!vol_out || !quad_out || !vol_pred_out || !quad_pred_out)
        return invalid("null argument");
    return guarded([&] {
        const chandeg::GridBallCheck c = chandeg::grid_ball_check(q, m, radius);
        *vol_out = c.vol;
        *quad_out = c.quad;
        *vol_pred_out = c.vol_pred;
        *quad_pred_out = c.quad_pred;
    });
}

cdg_status cdg_equal_volume_bound(int32_t q, double target_outputs, int64_t m, double* out) {
    if (!out) return invalid("null argument");
    return guarded(
        [&] { *out = chandeg::equal_volume_allocation_bound(q, target_outputs, m); });
}

cdg_status cdg_polar_minus(const cdg_channel* ch, cdg_channel** out) {
    if (!ch || !out) return invalid("null argument");
    return guarded([&] { *out = new cdg_channel{chandeg::polar_minus(ch->ch)}; });
}

cdg_status cdg_polar_plus(const cdg_channel* ch, cdg_channel** out) {
    if (!ch || !out) return invalid("null argument");
    return guarded([&] { *out = new cdg_channel{chandeg::polar_plus(ch->ch)}; });
}

cdg_status cdg_polar_construct(const cdg_channel* ch, int32_t depth, int64_t target_outputs,
                               cdg_method method, cdg_polar_run** out) {
    if (!ch || !out) return invalid("null argument");
    return guarded([&] {
        *out = new cdg_polar_run{chandeg::polar_construct(
            ch->ch, depth, static_cast<int>(target_outputs), to_method(method))};
    });
}

int64_t cdg_polar_run_leaf_count(const cdg_polar_run* run) {
    return run ? static_cast<int64_t>(run->leaves.size()) : 0;
}

cdg_status cdg_polar_run_leaf(const cdg_polar_run* run, int64_t index, const char** path_out,
                              double* mi_out, double* pe_out, int64_t* output_size_out) {
    if (!run) return invalid("null argument");
    if (index < 0 || index >= static_cast<int64_t>(run->leaves.size()))
        return invalid("leaf index out of range");
    const chandeg::PolarNode& leaf = run->leaves[static_cast<std::size_t>(index)];
    if (path_out) *path_out = leaf.path.c_str();
    if (mi_out) *mi_out = leaf.mi;
    if (pe_out) *pe_out = leaf.pe;
    if (output_size_out) *output_size_out = leaf.channel.output_count();
    return CDG_OK;
}

cdg_status cdg_polar_run_csv(const cdg_polar_run* run, char** out_text) {
    if (!run || !out_text) return invalid("null argument");
    return guarded([&] { *out_text = dup_string(chandeg::leaf_csv(run->leaves)); });
}

void cdg_polar_run_free(cdg_polar_run* run) { delete run; }

cdg_status cdg_rate_loss(int32_t q, int64_t m, int64_t target_outputs, int32_t depth,
                         cdg_method method, double threshold, int64_t max_outputs,
                         double* mi_full, double* mi_degraded, double* leaf_avg_mi,
                         double* rate_ceiling, int32_t* leaves_identical,
                         cdg_polar_run** run_out) {
    return guarded([&] {
        chandeg::RateLossReport rep =
            chandeg::rate_loss_report(make_spec(q, m, max_outputs),
                                      static_cast<int>(target_outputs), depth,
                                      to_method(method), threshold);
        if (mi_full) *mi_full = rep.mi_full;
        if (mi_degraded) *mi_degraded = rep.mi_degraded;
        if (leaf_avg_mi) *leaf_avg_mi = rep.leaf_avg_mi;
        if (rate_ceiling) *rate_ceiling = rep.rate_ceiling;
        if (leaves_identical) *leaves_identical = rep.leaves_identical ? 1 : 0;
        if (run_out) *run_out = new cdg_polar_run{std::move(rep.leaves)};
    });
}

}  // extern "C"
