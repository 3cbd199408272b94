#include "livesum.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "annotate.hpp"
#include "jsonutil.hpp"
#include "backend.hpp"
#include "budget.hpp"
#include "corpus.hpp"
#include "evaluate.hpp"
#include "pipeline.hpp"
#include "rouge.hpp"
#include "simulate.hpp"
#include "wire.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

void set_last_error(std::string message) { g_last_error = std::move(message); }

int status_from(const livesum::Error& error) {
    using livesum::ErrorCode;
    set_last_error(error.message);
    switch (error.code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidExample:
            return LIVESUM_ERR_INVALID_ARGUMENT;
        case ErrorCode::ParseError:
            return LIVESUM_ERR_PARSE;
        case ErrorCode::NotFound:
            return LIVESUM_ERR_NOT_FOUND;
        case ErrorCode::IoError:
            return LIVESUM_ERR_IO;
        case ErrorCode::EmptyConversation:
        case ErrorCode::EmptySource:
        case ErrorCode::EmptyTranscript:
        case ErrorCode::EmptyCorpus:
        case ErrorCode::BudgetTooSmall:
            return LIVESUM_ERR_EMPTY_INPUT;
        case ErrorCode::BackendUnavailable:
        case ErrorCode::EmptyResponse:
            return LIVESUM_ERR_BACKEND;
        case ErrorCode::SessionExists:
        case ErrorCode::UnknownSession:
        case ErrorCode::SessionEnded:
        case ErrorCode::OutOfOrder:
        case ErrorCode::ContractViolation:
            return LIVESUM_ERR_STATE;
    }
    return LIVESUM_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int fill_output(char** out, const std::string& value) {
    if (!out) {
        set_last_error("output pointer is NULL");
        return LIVESUM_ERR_INVALID_ARGUMENT;
    }
    *out = dup_string(value);
    if (!*out) {
        set_last_error("out of memory");
        return LIVESUM_ERR_INTERNAL;
    }
    return LIVESUM_OK;
}

// Nothing may throw across the C boundary.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        set_last_error(e.what());
        return LIVESUM_ERR_INTERNAL;
    } catch (...) {
        set_last_error("unexpected error");
        return LIVESUM_ERR_INTERNAL;
    }
}

livesum::Expected<livesum::sim::SimConfig> parse_sim_config(const char* json_text) {
    livesum::sim::SimConfig cfg;
    if (!json_text || !*json_text) return cfg;
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return livesum::Error{livesum::ErrorCode::ParseError,
                              "sim config is not a JSON object"};
    }
    cfg.p_repeat = j.value("p_repeat", cfg.p_repeat);
    cfg.p_filler = j.value("p_filler", cfg.p_filler);
    cfg.words_per_second = j.value("words_per_second", cfg.words_per_second);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("fillers")) {
        if (!j["fillers"].is_array()) {
            return livesum::Error{livesum::ErrorCode::ParseError,
                                  "fillers must be an array of strings"};
        }
        cfg.fillers.clear();
        for (const auto& f : j["fillers"]) {
            if (!f.is_string()) {
                return livesum::Error{livesum::ErrorCode::ParseError,
                                      "fillers must be an array of strings"};
            }
            cfg.fillers.push_back(f.get<std::string>());
        }
    }
    if (j.contains("avg_lengths")) {
        if (!j["avg_lengths"].is_array()) {
            return livesum::Error{livesum::ErrorCode::ParseError,
                                  "avg_lengths must be an array of integers"};
        }
        cfg.avg_lengths.clear();
        for (const auto& len : j["avg_lengths"]) {
            if (!len.is_number_integer() || len.get<long long>() < 1) {
                return livesum::Error{livesum::ErrorCode::ParseError,
                                      "avg_lengths entries must be integers >= 1"};
            }
            cfg.avg_lengths.push_back(len.get<size_t>());
        }
    }
    if (auto valid = livesum::sim::validate_config(cfg); !valid) return valid.error();
    return cfg;
}

json conversation_to_json(const livesum::Conversation& conversation) {
    json utterances = json::array();
    for (const auto& u : conversation.utterances) {
        json entry = {{"id", u.id},
                      {"text", u.text},
                      {"t_start", u.t_start},
                      {"t_end", u.t_end}};
        if (u.speaker) entry["speaker"] = *u.speaker;
        utterances.push_back(std::move(entry));
    }
    return json{{"id", conversation.id}, {"utterances", std::move(utterances)}};
}

json rouge_report_to_json(const livesum::rouge::RougeReport& report) {
    auto score = [](const livesum::rouge::RougeScore& s) {
        return json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
    };
    return json{{"sample_count", report.sample_count},
                {"r1", score(report.r1)},
                {"r2", score(report.r2)},
                {"rl", score(report.rl)}};
}

livesum::Expected<livesum::budget::RateCard> parse_rate_card(const char* json_text) {
    livesum::budget::RateCard rates;
    if (!json_text || !*json_text) return rates;
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return livesum::Error{livesum::ErrorCode::ParseError,
                              "rate card is not a JSON object"};
    }
    rates.human_rate = j.value("human_rate", rates.human_rate);
    rates.gpt_in_rate_per_mtok = j.value("gpt_in_rate_per_mtok", rates.gpt_in_rate_per_mtok);
    rates.gpt_out_rate_per_mtok =
        j.value("gpt_out_rate_per_mtok", rates.gpt_out_rate_per_mtok);
    rates.avg_in_tokens = j.value("avg_in_tokens", rates.avg_in_tokens);
    rates.avg_out_tokens = j.value("avg_out_tokens", rates.avg_out_tokens);
    if (auto valid = livesum::budget::validate_rate_card(rates); !valid) {
        return valid.error();
    }
    return rates;
}

}  // namespace

struct livesum_pipeline_s {
    livesum::service::Pipeline impl;
};

extern "C" {

const char* livesum_version(void) { return LIVESUM_VERSION; }

const char* livesum_status_name(int status) {
    switch (status) {
        case LIVESUM_OK:                   return "ok";
        case LIVESUM_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case LIVESUM_ERR_PARSE:            return "parse_error";
        case LIVESUM_ERR_NOT_FOUND:        return "not_found";
        case LIVESUM_ERR_IO:               return "io_error";
        case LIVESUM_ERR_EMPTY_INPUT:      return "empty_input";
        case LIVESUM_ERR_BACKEND:          return "backend_error";
        case LIVESUM_ERR_STATE:            return "state_error";
        case LIVESUM_ERR_INTERNAL:         return "internal_error";
    }
    return "unknown";
}

const char* livesum_last_error(void) { return g_last_error.c_str(); }

void livesum_free(char* ptr) { std::free(ptr); }

livesum_pipeline* livesum_pipeline_open(const char* config_json) {
    auto config = livesum::service::parse_pipeline_config(
        config_json && *config_json ? config_json : "{}");
    if (!config) {
        set_last_error(config.error().message);
        return nullptr;
    }
    try {
        return new livesum_pipeline_s{livesum::service::Pipeline(std::move(*config))};
    } catch (const std::exception& e) {
        set_last_error(e.what());
        return nullptr;
    }
}

int livesum_pipeline_feed(livesum_pipeline* pipeline, const char* event_line) {
    return guarded([&]() -> int {
        if (!pipeline || !event_line) {
            set_last_error("pipeline and event_line must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        pipeline->impl.feed_line(event_line);
        return LIVESUM_OK;
    });
}

int livesum_pipeline_poll(livesum_pipeline* pipeline, int timeout_ms, char** line_out) {
    return guarded([&]() -> int {
        if (!pipeline || !line_out) {
            set_last_error("pipeline and line_out must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        auto line = pipeline->impl.poll(std::chrono::milliseconds(std::max(timeout_ms, 0)));
        if (!line) return 0;
        const int rc = fill_output(line_out, *line);
        return rc == LIVESUM_OK ? 1 : rc;
    });
}

int livesum_pipeline_end_input(livesum_pipeline* pipeline) {
    return guarded([&]() -> int {
        if (!pipeline) {
            set_last_error("pipeline must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        pipeline->impl.end_input();
        return LIVESUM_OK;
    });
}

int livesum_pipeline_pending(const livesum_pipeline* pipeline) {
    return guarded([&]() -> int {
        if (!pipeline) return 0;
        return static_cast<int>(pipeline->impl.pending());
    });
}

void livesum_pipeline_close(livesum_pipeline* pipeline) { delete pipeline; }

int livesum_extractive_summarize(const char* transcript, char** summary_out) {
    return guarded([&]() -> int {
        if (!transcript || !*transcript) {
            set_last_error("transcript must be non-empty");
            return LIVESUM_ERR_EMPTY_INPUT;
        }
        return fill_output(summary_out, livesum::backend::extractive_summarize(transcript));
    });
}

int livesum_rouge_pair(const char* candidate, const char* reference,
                       double scores_out[9]) {
    return guarded([&]() -> int {
        if (!candidate || !reference || !scores_out) {
            set_last_error("candidate, reference and scores_out must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        const auto r1 = livesum::rouge::rouge_n(candidate, reference, 1);
        const auto r2 = livesum::rouge::rouge_n(candidate, reference, 2);
        const auto rl = livesum::rouge::rouge_l(candidate, reference);
        const livesum::rouge::RougeScore all[3] = {r1, r2, rl};
        for (int i = 0; i < 3; ++i) {
            scores_out[i * 3 + 0] = all[i].precision;
            scores_out[i * 3 + 1] = all[i].recall;
            scores_out[i * 3 + 2] = all[i].f1;
        }
        return LIVESUM_OK;
    });
}

int livesum_evaluate_file(const char* corpus_path, const char* backend_config_json,
                          const char* scope, const char* split,
                          char** report_json_out) {
    return guarded([&]() -> int {
        if (!corpus_path) {
            set_last_error("corpus_path must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        auto samples = livesum::corpus::load_corpus(corpus_path);
        if (!samples) return status_from(samples.error());

        auto backend_config = livesum::backend::parse_backend_config(
            backend_config_json && *backend_config_json ? backend_config_json
                                                        : R"({"kind":"extractive"})");
        if (!backend_config) return status_from(backend_config.error());

        livesum::service::EvalOptions options;
        const std::string scope_str = scope ? scope : "all";
        if (scope_str != "all") {
            auto parsed = livesum::scope_from_name(scope_str);
            if (!parsed) {
                set_last_error("scope must be local, global or all");
                return LIVESUM_ERR_INVALID_ARGUMENT;
            }
            options.scope = *parsed;
        }
        const std::string split_str = split ? split : "test";
        if (split_str == "all") {
            options.split = std::nullopt;
        } else {
            auto parsed = livesum::corpus::split_from_name(split_str);
            if (!parsed) {
                set_last_error("split must be train, dev, test or all");
                return LIVESUM_ERR_INVALID_ARGUMENT;
            }
            options.split = *parsed;
        }

        auto report = livesum::service::run_evaluate(
            *samples, livesum::backend::make_backend(*backend_config), options);
        if (!report) return status_from(report.error());

        json out;
        if (report->local) out["local"] = rouge_report_to_json(*report->local);
        if (report->global) out["global"] = rouge_report_to_json(*report->global);
        out["all"] = rouge_report_to_json(report->overall);
        out["failed_samples"] = report->failed_samples;
        out["rendered"] = livesum::service::render_eval_table(*report);
        return fill_output(report_json_out, livesum::dump_line(out));
    });
}

int livesum_simulate(const char* source_text, const char* sim_config_json,
                     const char* conversation_id, char** conversation_json_out) {
    return guarded([&]() -> int {
        if (!source_text) {
            set_last_error("source_text must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        auto config = parse_sim_config(sim_config_json);
        if (!config) return status_from(config.error());
        auto conversation = livesum::sim::simulate_conversation(
            source_text, *config, conversation_id ? conversation_id : "sim");
        if (!conversation) return status_from(conversation.error());
        return fill_output(conversation_json_out, livesum::dump_line(conversation_to_json(*conversation)));
    });
}

int livesum_simulate_events(const char* source_text, const char* sim_config_json,
                            const char* session_id, char** events_out) {
    return guarded([&]() -> int {
        if (!source_text) {
            set_last_error("source_text must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        auto config = parse_sim_config(sim_config_json);
        if (!config) return status_from(config.error());
        const std::string session = session_id && *session_id ? session_id : "sim";
        auto conversation = livesum::sim::simulate_conversation(source_text, *config, session);
        if (!conversation) return status_from(conversation.error());

        std::string lines;
        for (const auto& u : conversation->utterances) {
            json line = {{"type", "utterance"}, {"session", session}, {"id", u.id},
                         {"text", u.text},     {"t_start", u.t_start}, {"t_end", u.t_end}};
            if (u.speaker) line["speaker"] = *u.speaker;
            lines += livesum::dump_line(line);
            lines += '\n';
        }
        lines += json{{"type", "end_of_conversation"}, {"session", session}}.dump();
        lines += '\n';
        return fill_output(events_out, lines);
    });
}

int livesum_simulate_corpus(const char* source_text, const char* job_config_json,
                            const char* id_prefix, char** samples_jsonl_out) {
    return guarded([&]() -> int {
        if (!source_text) {
            set_last_error("source_text must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        json job = json::object();
        if (job_config_json && *job_config_json) {
            job = json::parse(job_config_json, nullptr, false);
            if (job.is_discarded() || !job.is_object()) {
                set_last_error("job config is not a JSON object");
                return LIVESUM_ERR_PARSE;
            }
        }
        auto sim_config =
            parse_sim_config(job.contains("sim") ? job["sim"].dump().c_str() : nullptr);
        if (!sim_config) return status_from(sim_config.error());
        auto pipeline_config = livesum::service::parse_pipeline_config(
            job.contains("pipeline") ? job["pipeline"].dump() : "{}");
        if (!pipeline_config) return status_from(pipeline_config.error());
        auto split = livesum::corpus::split_from_name(job.value("split", "train"));
        if (!split) {
            set_last_error("split must be train, dev or test");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }

        auto samples = livesum::service::annotate_source(
            source_text, *sim_config, pipeline_config->policy,
            livesum::backend::make_backend(pipeline_config->backend_config), *split,
            id_prefix && *id_prefix ? id_prefix : "sim");
        if (!samples) return status_from(samples.error());

        std::string out;
        for (const auto& sample : *samples) {
            out += livesum::corpus::format_sample(sample);
            out += '\n';
        }
        return fill_output(samples_jsonl_out, out);
    });
}

int livesum_corpus_stats_file(const char* corpus_path, char** stats_json_out) {
    return guarded([&]() -> int {
        if (!corpus_path) {
            set_last_error("corpus_path must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        auto samples = livesum::corpus::load_corpus(corpus_path);
        if (!samples) return status_from(samples.error());
        const auto stats = livesum::corpus::corpus_stats(*samples);

        json cells = json::array();
        for (const auto& [key, cell] : stats.cells) {
            const auto& [split, scope, source] = key;
            cells.push_back({{"split", livesum::corpus::split_name(split)},
                             {"scope", livesum::scope_name(scope)},
                             {"source", livesum::corpus::source_name(source)},
                             {"count", cell.count},
                             {"summary_words", cell.summary_words},
                             {"input_words", cell.input_words}});
        }
        json out = {{"cells", std::move(cells)},
                    {"total_count", stats.total_count},
                    {"total_summary_words", stats.total_summary_words},
                    {"total_input_words", stats.total_input_words},
                    {"avg_summary_length", stats.avg_summary_length()},
                    {"avg_input_length", stats.avg_input_length()},
                    {"rendered", livesum::corpus::render_stats_table(stats)}};
        return fill_output(stats_json_out, livesum::dump_line(out));
    });
}

int livesum_corpus_validate_file(const char* corpus_path, int short_threshold,
                                 const char* entities_json, char** report_json_out) {
    return guarded([&]() -> int {
        if (!corpus_path) {
            set_last_error("corpus_path must be non-NULL");
            return LIVESUM_ERR_INVALID_ARGUMENT;
        }
        std::vector<std::string> entities;
        if (entities_json && *entities_json) {
            json j = json::parse(entities_json, nullptr, false);
            if (j.is_discarded() || !j.is_array()) {
                set_last_error("entities must be a JSON array of strings");
                return LIVESUM_ERR_PARSE;
            }
            for (const auto& e : j) {
                if (!e.is_string()) {
                    set_last_error("entities must be a JSON array of strings");
                    return LIVESUM_ERR_PARSE;
                }
                entities.push_back(e.get<std::string>());
            }
        }
        auto samples = livesum::corpus::load_corpus(corpus_path);
        if (!samples) return status_from(samples.error());

        json rows = json::array();
        size_t passed = 0;
        for (const auto& sample : *samples) {
            const auto report =
                livesum::corpus::validate_guideline(sample, short_threshold, entities);
            const bool ok = report.findings.empty();
            if (ok) ++passed;
            rows.push_back({{"id", sample.id},
                            {"compression_ok", report.compression_ok},
                            {"compression_rate", report.compression_rate},
                            {"exempt_short", report.exempt_short},
                            {"findings", report.findings}});
        }
        json out = {{"checked", samples->size()},
                    {"passed", passed},
                    {"failed", samples->size() - passed},
                    {"samples", std::move(rows)}};
        return fill_output(report_json_out, livesum::dump_line(out));
    });
}

int livesum_budget_report(const char* rate_card_json, double budget_dollars,
                          double human_share, char** report_json_out) {
    return guarded([&]() -> int {
        auto rates = parse_rate_card(rate_card_json);
        if (!rates) return status_from(rates.error());

        using livesum::budget::Method;
        auto human_cost = livesum::budget::cost_per_summary(Method::Human, *rates);
        if (!human_cost) return status_from(human_cost.error());
        auto gpt_cost = livesum::budget::cost_per_summary(Method::Gpt, *rates);
        if (!gpt_cost) return status_from(gpt_cost.error());
        auto human_count =
            livesum::budget::summaries_for_budget(budget_dollars, Method::Human, *rates);
        if (!human_count) return status_from(human_count.error());
        auto gpt_count =
            livesum::budget::summaries_for_budget(budget_dollars, Method::Gpt, *rates);
        if (!gpt_count) return status_from(gpt_count.error());

        json out = {{"cost_per_summary", {{"human", *human_cost}, {"gpt", *gpt_cost}}},
                    {"summaries_for_budget", {{"human", *human_count}, {"gpt", *gpt_count}}},
                    {"human_editing_speedup", livesum::budget::kHumanEditingSpeedup},
                    {"rendered", livesum::budget::render_budget_report(budget_dollars, *rates,
                                                                       human_share)}};
        auto plan = livesum::budget::plan_two_step(budget_dollars, *rates, human_share);
        if (plan) {
            out["plan"] = {{"gpt_count", plan->gpt_count},
                           {"human_count", plan->human_count},
                           {"human_budget", plan->human_budget},
                           {"gpt_budget", plan->gpt_budget},
                           {"residual", plan->residual}};
        } else {
            out["plan_error"] = plan.error().message;
        }
        return fill_output(report_json_out, out.dump());
    });
}

}  // extern "C"
