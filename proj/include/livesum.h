/* livesum — real-time conversation summarization.
 *
 * C API for the livesum shared library. The streaming side speaks
 * newline-delimited JSON events (one object per line):
 *
 *   in:  {"type":"utterance","session":"s1","id":"u1","speaker":"spk0",
 *         "text":"...","t_start":0.0,"t_end":2.0}
 *   in:  {"type":"end_of_conversation","session":"s1"}
 *   out: {"type":"local_summary","session":"s1","window_index":0,
 *         "utterance_ids":["u1","u2"],"text":"..."}
 *   out: {"type":"global_summary","session":"s1","utterance_ids":[...],
 *         "text":"..."}
 *   out: {"type":"error","session":"s1","code":"...","message":"..."}
 *
 * Sessions are created implicitly by their first utterance. A local summary
 * is produced for every window of n_max utterances (or once the window would
 * span more than t_max seconds); one global summary covers the whole
 * conversation when it ends. Per session, outbound events arrive in window
 * order with the global summary last.
 *
 * All returned strings are heap-allocated; release them with livesum_free().
 * Functions return LIVESUM_OK (0) on success or a negative livesum_status;
 * livesum_last_error() describes the most recent failure on this thread.
 * A pipeline handle may be fed and polled from different threads; summary
 * generation runs on an internal worker pool either way.
 */

#ifndef LIVESUM_H
#define LIVESUM_H

#ifdef __cplusplus
extern "C" {
#endif

#define LIVESUM_VERSION "0.1.0"

typedef enum livesum_status {
    LIVESUM_OK = 0,
    LIVESUM_ERR_INVALID_ARGUMENT = -1,
    LIVESUM_ERR_PARSE = -2,
    LIVESUM_ERR_NOT_FOUND = -3,
    LIVESUM_ERR_IO = -4,
    LIVESUM_ERR_EMPTY_INPUT = -5,
    LIVESUM_ERR_BACKEND = -6,
    LIVESUM_ERR_STATE = -7,
    LIVESUM_ERR_INTERNAL = -8
} livesum_status;

const char* livesum_version(void);
const char* livesum_status_name(int status);

/* Thread-local message for the most recent failed call. */
const char* livesum_last_error(void);

void livesum_free(char* ptr);

/* ------------------------------------------------------------------ */
/* Streaming pipeline                                                  */
/* ------------------------------------------------------------------ */

typedef struct livesum_pipeline_s livesum_pipeline;

/* config_json (all keys optional):
 *   {"n_max":4, "t_max":30.0, "idle_timeout_sec":600, "max_inflight":4,
 *    "language":"vi",
 *    "backend":{"kind":"extractive"}}
 * or "backend":{"kind":"remote","endpoint":"http://host:port/path",
 *               "model":"...","temperature":0.7,"top_p":0.9,
 *               "timeout_sec":30,"max_retries":2,
 *               "instruction":"...","examples":[{"transcript":"...",
 *               "summary":"..."}, ...]}
 * Pass NULL for defaults (extractive backend, n_max=4, t_max=30).
 * Returns NULL on bad config; see livesum_last_error().
 */
livesum_pipeline* livesum_pipeline_open(const char* config_json);

/* Feeds one inbound event line. Malformed or ill-timed input produces an
 * outbound error event rather than a hard failure. */
int livesum_pipeline_feed(livesum_pipeline* pipeline, const char* event_line);

/* Pops the next outbound event line, waiting up to timeout_ms.
 * Returns 1 and sets *line_out when a line is available, 0 on timeout. */
int livesum_pipeline_poll(livesum_pipeline* pipeline, int timeout_ms, char** line_out);

/* Ends every open session (end of input stream); their residual windows and
 * global summaries are flushed to the outbound queue. */
int livesum_pipeline_end_input(livesum_pipeline* pipeline);

/* Number of summary jobs dispatched but not yet delivered. Once this is 0
 * after end_input, draining poll() empties the stream. */
int livesum_pipeline_pending(const livesum_pipeline* pipeline);

void livesum_pipeline_close(livesum_pipeline* pipeline);

/* ------------------------------------------------------------------ */
/* Summarization and scoring                                           */
/* ------------------------------------------------------------------ */

/* Deterministic extractive baseline: leading whole sentences within a
 * 20% token budget (at least one token). */
int livesum_extractive_summarize(const char* transcript, char** summary_out);

/* scores_out: [r1_p, r1_r, r1_f, r2_p, r2_r, r2_f, rl_p, rl_r, rl_f],
 * fractions in [0,1]. */
int livesum_rouge_pair(const char* candidate, const char* reference,
                       double scores_out[9]);

/* Summarizes the selected corpus samples with the configured backend and
 * scores them against the reference summaries.
 *   scope: "local", "global" or "all"; split: "train", "dev", "test" or "all".
 * Report JSON: {"local":{...},"global":{...},"all":{...},"rendered":"..."}
 * where each block holds sample_count plus r1/r2/rl precision, recall, f1. */
int livesum_evaluate_file(const char* corpus_path, const char* backend_config_json,
                          const char* scope, const char* split,
                          char** report_json_out);

/* ------------------------------------------------------------------ */
/* Conversation simulation                                             */
/* ------------------------------------------------------------------ */

/* sim_config_json (all keys optional):
 *   {"p_repeat":0.01,"p_filler":0.01,"fillers":["ờ","à"],
 *    "avg_lengths":[15,20,25,30],"words_per_second":3.5,"seed":42}
 * Returns the conversation as JSON:
 *   {"id":"...","utterances":[{"id","speaker","text","t_start","t_end"},...]}
 */
int livesum_simulate(const char* source_text, const char* sim_config_json,
                     const char* conversation_id, char** conversation_json_out);

/* Same simulation rendered as wire events: one utterance line per turn
 * followed by an end_of_conversation line. */
int livesum_simulate_events(const char* source_text, const char* sim_config_json,
                            const char* session_id, char** events_out);

/* Simulates a conversation, windows it with the pipeline policy, and writes
 * one summary per window with the configured backend. job_config_json:
 *   {"sim":{...sim config...}, "pipeline":{...pipeline config...},
 *    "split":"train"}
 * Output is corpus JSONL text (one sample per line). */
int livesum_simulate_corpus(const char* source_text, const char* job_config_json,
                            const char* id_prefix, char** samples_jsonl_out);

/* ------------------------------------------------------------------ */
/* Corpus files                                                        */
/* ------------------------------------------------------------------ */

/* Stats JSON: {"cells":[{"split","scope","source","count","summary_words",
 * "input_words"},...], "total_count", "total_summary_words",
 * "total_input_words", "avg_summary_length", "avg_input_length",
 * "rendered":"..."} */
int livesum_corpus_stats_file(const char* corpus_path, char** stats_json_out);

/* Guideline check per sample: the summary may use at most 20% of the
 * transcript tokens unless the transcript is shorter than short_threshold
 * tokens. entities_json is an optional JSON array of strings; entities
 * present in a transcript must survive into its summary.
 * Report JSON: {"checked","passed","failed","samples":[{"id","compression_ok",
 * "compression_rate","exempt_short","findings":[...]},...]} */
int livesum_corpus_validate_file(const char* corpus_path, int short_threshold,
                                 const char* entities_json, char** report_json_out);

/* ------------------------------------------------------------------ */
/* Annotation budgeting                                                */
/* ------------------------------------------------------------------ */

/* rate_card_json (all keys optional, NULL for defaults):
 *   {"human_rate":0.01,"gpt_in_rate_per_mtok":0.5,"gpt_out_rate_per_mtok":1.5,
 *    "avg_in_tokens":700,"avg_out_tokens":20}
 * human_share in [0,1] is the budget fraction spent on human editing.
 * Report JSON: {"cost_per_summary":{"human","gpt"},
 *   "summaries_for_budget":{"human","gpt"},
 *   "plan":{"gpt_count","human_count","human_budget","gpt_budget","residual"},
 *   "human_editing_speedup":0.7,"rendered":"..."} */
int livesum_budget_report(const char* rate_card_json, double budget_dollars,
                          double human_share, char** report_json_out);

#ifdef __cplusplus
}
#endif

#endif /* LIVESUM_H */
