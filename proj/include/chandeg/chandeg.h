/* chandeg: channel degrading toolkit.
 *
 * C interface to the shared library. Objects are opaque handles created and
 * destroyed here; every fallible call returns a cdg_status and the failure
 * message of the most recent failing call on the same thread is available
 * via cdg_last_error(). Strings returned through char** outputs are owned by
 * the caller and released with cdg_string_free().
 */
#ifndef CHANDEG_H
#define CHANDEG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdg_status {
    CDG_OK = 0,
    CDG_ERROR_INVALID = 1,    /* bad argument or contract violation */
    CDG_ERROR_VALIDATION = 2, /* channel/partition invariants violated */
    CDG_ERROR_LIMIT = 3,      /* a size or depth guard tripped */
    CDG_ERROR_PARSE = 4,      /* malformed JSON or rational text */
    CDG_ERROR_IO = 5          /* file not readable/writable */
} cdg_status;

typedef enum cdg_method {
    CDG_METHOD_GREEDY = 0,
    CDG_METHOD_EXHAUSTIVE = 1,
    CDG_METHOD_DP = 2 /* binary-input only */
} cdg_method;

typedef enum cdg_block_mode {
    CDG_BLOCKS_AT_MOST = 0,
    CDG_BLOCKS_EXACTLY = 1
} cdg_block_mode;

typedef struct cdg_channel cdg_channel;
typedef struct cdg_degrade_result cdg_degrade_result;
typedef struct cdg_polar_run cdg_polar_run;

/* Message of the most recent failing call on this thread ("" if none). */
const char* cdg_last_error(void);
void cdg_string_free(char* s);

/* ------------------------------------------------------------- channels */
cdg_status cdg_channel_parse_json(const char* text, cdg_channel** out);
cdg_status cdg_channel_read_file(const char* path, cdg_channel** out);
cdg_status cdg_channel_to_json(const cdg_channel* ch, char** out_text);
cdg_status cdg_channel_write_file(const cdg_channel* ch, const char* path);
void cdg_channel_free(cdg_channel* ch);

int32_t cdg_channel_input_size(const cdg_channel* ch);
int64_t cdg_channel_output_size(const cdg_channel* ch);
int32_t cdg_channel_is_exact(const cdg_channel* ch);

/* CDG_OK and *report_out = NULL when valid; CDG_ERROR_VALIDATION and a
 * newline-separated violation list otherwise. */
cdg_status cdg_channel_validate(const cdg_channel* ch, char** report_out);

cdg_status cdg_channel_mutual_information(const cdg_channel* ch, double* nats_out);
cdg_status cdg_channel_map_error(const cdg_channel* ch, double* pe_out);

/* -------------------------------------------------------- hard channel */
/* max_outputs <= 0 selects the default cap of 10^6 output letters. */
cdg_status cdg_hard_channel_build(int32_t q, int64_t m, int64_t max_outputs, cdg_channel** out);
cdg_status cdg_hard_channel_mi(int32_t q, int64_t m, int64_t max_outputs, double* nats_out);

/* ----------------------------------------------------------- degrading */
cdg_status cdg_degrade(const cdg_channel* ch, int64_t target_outputs, cdg_method method,
                       cdg_block_mode mode, cdg_degrade_result** out);
double cdg_degrade_result_drop(const cdg_degrade_result* r);
int64_t cdg_degrade_result_block_count(const cdg_degrade_result* r);
cdg_status cdg_degrade_result_channel(const cdg_degrade_result* r, cdg_channel** out);
cdg_status cdg_degrade_result_to_json(const cdg_degrade_result* r, char** out_text);
void cdg_degrade_result_free(cdg_degrade_result* r);

/* -------------------------------------------------------------- bounds */
cdg_status cdg_unit_ball_volume(int32_t dim, double* out);
cdg_status cdg_cost_lower_bound(int32_t q, double target_outputs, double* out);
cdg_status cdg_cost_lower_bound_stirling(int32_t q, double target_outputs, double* out);
cdg_status cdg_cost_upper_bounds(int32_t q, double target_outputs, double* prior_out,
                                 double* sharper_out);
/* log10 of the alphabet size at which the lower bound equals cost. */
cdg_status cdg_alphabet_size_for_cost(int32_t q, double cost, double* log10_out);
cdg_status cdg_grid_ball_check(int32_t q, int64_t m, double radius, double* vol_out,
                               double* quad_out, double* vol_pred_out, double* quad_pred_out);
cdg_status cdg_equal_volume_bound(int32_t q, double target_outputs, int64_t m, double* out);

/* --------------------------------------------------------------- polar */
cdg_status cdg_polar_minus(const cdg_channel* ch, cdg_channel** out);
cdg_status cdg_polar_plus(const cdg_channel* ch, cdg_channel** out);

cdg_status cdg_polar_construct(const cdg_channel* ch, int32_t depth, int64_t target_outputs,
                               cdg_method method, cdg_polar_run** out);
int64_t cdg_polar_run_leaf_count(const cdg_polar_run* run);
/* path_out points into the run and stays valid until the run is freed. */
cdg_status cdg_polar_run_leaf(const cdg_polar_run* run, int64_t index, const char** path_out,
                              double* mi_out, double* pe_out, int64_t* output_size_out);
cdg_status cdg_polar_run_csv(const cdg_polar_run* run, char** out_text);
void cdg_polar_run_free(cdg_polar_run* run);

/* Full rate-loss experiment on the hard channel (q, m): initial degrading to
 * target_outputs, construction to the given depth on both the hard channel
 * and its degraded version, leaf-identity check, and summary numbers. */
cdg_status cdg_rate_loss(int32_t q, int64_t m, int64_t target_outputs, int32_t depth,
                         cdg_method method, double threshold, int64_t max_outputs,
                         double* mi_full, double* mi_degraded, double* leaf_avg_mi,
                         double* rate_ceiling, int32_t* leaves_identical, cdg_polar_run** run_out);

#ifdef __cplusplus
}
#endif

#endif /* CHANDEG_H */
