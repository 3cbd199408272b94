// livesum command line: streaming service plus batch tooling, all on top of
// the C API in livesum.h. The CLI owns transport and presentation only.

#include <livesum.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

using nlohmann::json;

namespace {

struct FreeDeleter {
    void operator()(char* p) const { livesum_free(p); }
};
using OwnedString = std::unique_ptr<char, FreeDeleter>;

[[noreturn]] void die(const std::string& message) {
    std::cerr << "livesum: " << message << "\n";
    std::exit(1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Flags shared across subcommands; --config supplies the same keys as JSON
// and explicit flags win.
struct CommonOptions {
    int n_max = 4;
    double t_max = 30.0;
    std::string backend = "extractive";
    std::string endpoint;
    std::string model;
    std::string config_path;
    double idle_timeout = 600.0;
    int max_inflight = 4;

    void add_flags(CLI::App* app) {
        app->add_option("--n-max", n_max, "utterances per local summary window");
        app->add_option("--t-max", t_max, "max window span in seconds");
        app->add_option("--backend", backend, "extractive or remote")
            ->check(CLI::IsMember({"extractive", "remote"}));
        app->add_option("--endpoint", endpoint, "remote backend URL");
        app->add_option("--model", model, "remote model name");
        app->add_option("--config", config_path, "JSON config file (flags override)");
        app->add_option("--idle-timeout", idle_timeout,
                        "seconds before an abandoned session is auto-ended");
        app->add_option("--max-inflight", max_inflight,
                        "concurrent backend calls across sessions");
    }

    json file_config() const {
        if (config_path.empty()) return json::object();
        json j = json::parse(read_file(config_path), nullptr, false);
        if (j.is_discarded() || !j.is_object()) die("config file is not a JSON object");
        return j;
    }

    json backend_config(const CLI::App* app) const {
        json cfg = file_config().value("backend", json::object());
        if (app->count("--backend") || !cfg.contains("kind")) cfg["kind"] = backend;
        if (app->count("--endpoint")) cfg["endpoint"] = endpoint;
        if (app->count("--model")) cfg["model"] = model;
        return cfg;
    }

    json pipeline_config(const CLI::App* app) const {
        json cfg = file_config();
        if (app->count("--n-max") || !cfg.contains("n_max")) cfg["n_max"] = n_max;
        if (app->count("--t-max") || !cfg.contains("t_max")) cfg["t_max"] = t_max;
        if (app->count("--idle-timeout") || !cfg.contains("idle_timeout_sec")) {
            cfg["idle_timeout_sec"] = idle_timeout;
        }
        if (app->count("--max-inflight") || !cfg.contains("max_inflight")) {
            cfg["max_inflight"] = max_inflight;
        }
        cfg["backend"] = backend_config(app);
        return cfg;
    }
};

// --- serve -------------------------------------------------------------------

// One pipeline per connection: reader feeds lines, writer drains events.
void serve_stream(const std::string& config, std::istream& in, std::ostream& out,
                  std::mutex& out_mutex) {
    livesum_pipeline* pipeline = livesum_pipeline_open(config.c_str());
    if (!pipeline) die(std::string("bad config: ") + livesum_last_error());

    std::atomic<bool> input_done{false};
    std::thread writer([&] {
        for (;;) {
            char* line = nullptr;
            const int rc = livesum_pipeline_poll(pipeline, 100, &line);
            if (rc == 1) {
                OwnedString owned(line);
                std::lock_guard lock(out_mutex);
                out << owned.get() << "\n" << std::flush;
                continue;
            }
            if (rc < 0) break;
            if (input_done && livesum_pipeline_pending(pipeline) == 0) break;
        }
    });

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        livesum_pipeline_feed(pipeline, line.c_str());
    }
    livesum_pipeline_end_input(pipeline);
    input_done = true;
    writer.join();
    livesum_pipeline_close(pipeline);
}

int cmd_serve(const CommonOptions& common, const CLI::App* app, int listen_port) {
    const std::string config = common.pipeline_config(app).dump();
    if (listen_port == 0) {
        std::mutex out_mutex;
        serve_stream(config, std::cin, std::cout, out_mutex);
        return 0;
    }

    // Fail on a bad config now, not inside the first connection thread.
    if (livesum_pipeline* probe = livesum_pipeline_open(config.c_str())) {
        livesum_pipeline_close(probe);
    } else {
        die(std::string("bad config: ") + livesum_last_error());
    }

    const int server_fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (server_fd < 0) die("socket() failed");
    const int yes = 1;
    ::setsockopt(server_fd, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(static_cast<uint16_t>(listen_port));
    if (::bind(server_fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        die("bind() failed on port " + std::to_string(listen_port));
    }
    if (::listen(server_fd, 16) < 0) die("listen() failed");
    std::cerr << "livesum: listening on port " << listen_port << "\n";

    for (;;) {
        const int client_fd = ::accept(server_fd, nullptr, nullptr);
        if (client_fd < 0) continue;
        std::thread([config, client_fd] {
            // Minimal line-stream adapter over the socket.
            struct FdBuf : std::streambuf {
                int fd;
                char buf[4096];
                explicit FdBuf(int fd) : fd(fd) {}
                int underflow() override {
                    const ssize_t n = ::read(fd, buf, sizeof(buf));
                    if (n <= 0) return traits_type::eof();
                    setg(buf, buf, buf + n);
                    return traits_type::to_int_type(*gptr());
                }
                std::streamsize xsputn(const char* s, std::streamsize n) override {
                    std::streamsize written = 0;
                    while (written < n) {
                        const ssize_t w = ::write(fd, s + written, n - written);
                        if (w <= 0) return written;
                        written += w;
                    }
                    return written;
                }
                int overflow(int c) override {
                    if (c == traits_type::eof()) return c;
                    const char ch = static_cast<char>(c);
                    return xsputn(&ch, 1) == 1 ? c : traits_type::eof();
                }
            };
            FdBuf buf(client_fd);
            std::istream in(&buf);
            std::ostream out(&buf);
            std::mutex out_mutex;
            serve_stream(config, in, out, out_mutex);
            std::cerr << "livesum: connection closed, open sessions flushed\n";
            ::close(client_fd);
        }).detach();
    }
}

// --- batch subcommands ---------------------------------------------------------

int check(int rc) {
    if (rc < 0) die(std::string(livesum_status_name(rc)) + ": " + livesum_last_error());
    return rc;
}

void print_report(const char* report_json, bool as_json) {
    json j = json::parse(report_json);
    if (as_json) {
        j.erase("rendered");
        std::cout << j.dump(2) << "\n";
    } else if (j.contains("rendered")) {
        std::cout << j["rendered"].get<std::string>();
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"real-time conversation summarization service and tooling"};
    app.require_subcommand(1);

    CommonOptions common;

    // serve
    auto* serve = app.add_subcommand(
        "serve", "read events on stdin (or a socket) and emit summaries");
    common.add_flags(serve);
    int listen_port = 0;
    serve->add_option("--listen", listen_port, "TCP port (default: stdio)");

    // evaluate
    auto* evaluate = app.add_subcommand(
        "evaluate", "score backend summaries against corpus references");
    common.add_flags(evaluate);
    std::string eval_corpus, eval_scope = "all", eval_split = "test";
    bool eval_json = false;
    evaluate->add_option("--corpus", eval_corpus, "corpus JSONL file")->required();
    evaluate->add_option("--scope", eval_scope, "local, global or all")
        ->check(CLI::IsMember({"local", "global", "all"}));
    evaluate->add_option("--split", eval_split, "train, dev, test or all")
        ->check(CLI::IsMember({"train", "dev", "test", "all"}));
    evaluate->add_flag("--json", eval_json, "machine-readable output");

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "generate spoken-style conversations from clean text");
    common.add_flags(simulate);
    std::string sim_input, sim_output, sim_emit = "events", sim_split = "train";
    bool sim_per_line = false;
    uint64_t sim_seed = 42;
    simulate->add_option("--input", sim_input, "plain-text source file")->required();
    simulate->add_flag("--per-line", sim_per_line,
                       "treat each input line as its own document");
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--emit", sim_emit, "events, conversation or corpus")
        ->check(CLI::IsMember({"events", "conversation", "corpus"}));
    simulate->add_option("--split", sim_split, "split for --emit corpus")
        ->check(CLI::IsMember({"train", "dev", "test"}));
    simulate->add_option("--output", sim_output, "output file (default: stdout)");

    // stats
    auto* stats = app.add_subcommand("stats", "corpus statistics table");
    std::string stats_corpus;
    bool stats_json = false;
    stats->add_option("--corpus", stats_corpus, "corpus JSONL file")->required();
    stats->add_flag("--json", stats_json, "machine-readable output");

    // budget
    auto* budget = app.add_subcommand("budget", "annotation cost planning");
    common.add_flags(budget);
    double budget_dollars = 5.0, human_share = 0.5;
    double human_rate = 0.01, gpt_in_rate = 0.50, gpt_out_rate = 1.50;
    double avg_in = 700.0, avg_out = 20.0;
    bool budget_json = false;
    budget->add_option("--budget", budget_dollars, "total budget in dollars");
    budget->add_option("--human-share", human_share,
                       "budget fraction spent on human editing");
    budget->add_option("--human-rate", human_rate, "dollars per human summary");
    budget->add_option("--gpt-in-rate", gpt_in_rate, "dollars per 1M input tokens");
    budget->add_option("--gpt-out-rate", gpt_out_rate, "dollars per 1M output tokens");
    budget->add_option("--avg-in", avg_in, "average input tokens per summary");
    budget->add_option("--avg-out", avg_out, "average output tokens per summary");
    budget->add_flag("--json", budget_json, "machine-readable output");

    // validate
    auto* validate = app.add_subcommand(
        "validate", "check corpus summaries against the annotation rules");
    std::string val_corpus, val_entities;
    int short_threshold = 50;
    bool val_json = false;
    validate->add_option("--corpus", val_corpus, "corpus JSONL file")->required();
    validate->add_option("--short-threshold", short_threshold,
                         "transcripts below this token count are exempt");
    validate->add_option("--entities", val_entities,
                         "file with one entity per line (retention check)");
    validate->add_flag("--json", val_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    if (serve->parsed()) {
        return cmd_serve(common, serve, listen_port);
    }

    if (evaluate->parsed()) {
        char* report = nullptr;
        check(livesum_evaluate_file(eval_corpus.c_str(),
                                    common.backend_config(evaluate).dump().c_str(),
                                    eval_scope.c_str(), eval_split.c_str(), &report));
        OwnedString owned(report);
        print_report(owned.get(), eval_json);
        return 0;
    }

    if (simulate->parsed()) {
        const std::string source = read_file(sim_input);
        std::vector<std::string> documents;
        if (sim_per_line) {
            std::istringstream lines(source);
            std::string line;
            while (std::getline(lines, line)) {
                if (!line.empty()) documents.push_back(line);
            }
        } else {
            documents.push_back(source);
        }
        if (documents.empty()) die("no documents in " + sim_input);

        std::ofstream file_out;
        if (!sim_output.empty()) {
            file_out.open(sim_output, std::ios::binary | std::ios::trunc);
            if (!file_out) die("cannot write " + sim_output);
        }
        std::ostream& out = sim_output.empty() ? std::cout : file_out;

        json base_sim_cfg = common.file_config().value("sim", json::object());
        const uint64_t base_seed =
            (simulate->count("--seed") || !base_sim_cfg.contains("seed"))
                ? sim_seed
                : base_sim_cfg["seed"].get<uint64_t>();
        for (size_t i = 0; i < documents.size(); ++i) {
            const std::string doc_id = "doc-" + std::to_string(i + 1);
            json sim_cfg = base_sim_cfg;
            sim_cfg["seed"] = base_seed + i;  // independent stream per document
            char* result = nullptr;
            if (sim_emit == "events") {
                check(livesum_simulate_events(documents[i].c_str(),
                                              sim_cfg.dump().c_str(), doc_id.c_str(),
                                              &result));
                OwnedString owned(result);
                out << owned.get();
            } else if (sim_emit == "conversation") {
                check(livesum_simulate(documents[i].c_str(), sim_cfg.dump().c_str(),
                                       doc_id.c_str(), &result));
                OwnedString owned(result);
                out << owned.get() << "\n";
            } else {
                json job = {{"sim", sim_cfg},
                            {"pipeline", common.pipeline_config(simulate)},
                            {"split", sim_split}};
                check(livesum_simulate_corpus(documents[i].c_str(), job.dump().c_str(),
                                              doc_id.c_str(), &result));
                OwnedString owned(result);
                out << owned.get();
            }
        }
        return 0;
    }

    if (stats->parsed()) {
        char* report = nullptr;
        check(livesum_corpus_stats_file(stats_corpus.c_str(), &report));
        OwnedString owned(report);
        print_report(owned.get(), stats_json);
        return 0;
    }

    if (budget->parsed()) {
        json rates = common.file_config().value("rates", json::object());
        auto set_if = [&](const char* flag, const char* key, double value) {
            if (budget->count(flag) || !rates.contains(key)) rates[key] = value;
        };
        set_if("--human-rate", "human_rate", human_rate);
        set_if("--gpt-in-rate", "gpt_in_rate_per_mtok", gpt_in_rate);
        set_if("--gpt-out-rate", "gpt_out_rate_per_mtok", gpt_out_rate);
        set_if("--avg-in", "avg_in_tokens", avg_in);
        set_if("--avg-out", "avg_out_tokens", avg_out);
        char* report = nullptr;
        check(livesum_budget_report(rates.dump().c_str(), budget_dollars, human_share,
                                    &report));
        OwnedString owned(report);
        print_report(owned.get(), budget_json);
        return 0;
    }

    if (validate->parsed()) {
        json entities = json::array();
        if (!val_entities.empty()) {
            std::istringstream lines(read_file(val_entities));
            std::string line;
            while (std::getline(lines, line)) {
                if (!line.empty()) entities.push_back(line);
            }
        }
        char* report = nullptr;
        check(livesum_corpus_validate_file(val_corpus.c_str(), short_threshold,
                                           entities.dump().c_str(), &report));
        OwnedString owned(report);
        if (val_json) {
            std::cout << json::parse(owned.get()).dump(2) << "\n";
        } else {
            json j = json::parse(owned.get());
            for (const auto& row : j["samples"]) {
                for (const auto& finding : row["findings"]) {
                    std::cout << row["id"].get<std::string>() << ": "
                              << finding.get<std::string>() << "\n";
                }
            }
            std::cout << j["passed"] << "/" << j["checked"] << " samples pass\n";
            if (j["failed"].get<size_t>() > 0) return 1;
        }
        return 0;
    }

    return 0;
}
