// gsce: corpus generation, validation, evaluation runs, and reports
// for the LLM drone-control harness.
//
// Exit codes: 0 success, 1 runtime/data failure, 2 usage/config error.
// Failures print a single machine-readable JSON line to stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gsce/gsce.hpp"
#include "gsce/llm/http_agent.hpp"

namespace {

using nlohmann::json;

// JSON config files mirroring the CLI flags: top-level keys are
// subcommand names, nested keys are option names, e.g.
// {"run": {"corpus": "c.json", "repeats": 3}}. Command-line flags
// override file values (CLI11's default precedence).
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";  // config emission is not used by this tool
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::exception& e) {
            throw CLI::ConfigError(std::string("config file is not valid JSON: ") + e.what());
        }
        std::vector<CLI::ConfigItem> items;
        walk(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const json& value) {
        return value.is_string() ? value.get<std::string>() : value.dump();
    }

    static void walk(const json& node, std::vector<std::string> parents,
                     std::vector<CLI::ConfigItem>& items) {
        if (!node.is_object()) {
            throw CLI::ConfigError("config sections must be JSON objects");
        }
        for (const auto& [key, value] : node.items()) {
            if (value.is_object()) {
                std::vector<std::string> deeper = parents;
                deeper.push_back(key);
                walk(value, std::move(deeper), items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const json& element : value) item.inputs.push_back(scalar(element));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

void ensure_parent_dir(const std::string& path) {
    std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

// Options shared by `run` and `sweep-k`.
struct RunOptions {
    std::string corpus_path;
    std::string out_path;
    std::string agent = "oracle";
    std::string model = "offline";
    std::string endpoint;
    std::string cache_dir;
    std::string api_key_env = "GSCE_API_KEY";
    std::string library_path;
    std::string guidelines_path;
    std::string api_docs_path;
    std::string constraints_path;
    std::string completeness = "lcs";
    int repeats = 3;
    int parallelism = 4;
    int timeout_seconds = 60;
    int max_attempts = 3;
    int max_tokens = 2048;
    double temperature = 0.0;
    double pos_eps = 0.1;
    double yaw_eps = 1.0;
    bool cot = true;
    bool constraint_impl = true;
};

void add_run_options(CLI::App* cmd, RunOptions& o, CLI::Option** model_opt) {
    cmd->add_option("--corpus", o.corpus_path, "Corpus JSON file")->required();
    cmd->add_option("--out", o.out_path, "Results JSONL output path")->required();
    cmd->add_option("--agent", o.agent,
                    "Agent: oracle, replay, http, faulty:flip_z_sign, "
                    "faulty:ignore_body_frame, faulty:emit_prose")
        ->capture_default_str();
    *model_opt = cmd->add_option("--model", o.model, "Model id sent to the agent")
                     ->capture_default_str();
    cmd->add_option("--endpoint", o.endpoint, "Base URL of an OpenAI-compatible endpoint");
    cmd->add_option("--cache", o.cache_dir, "Response cache directory (record/replay)");
    cmd->add_option("--api-key-env", o.api_key_env,
                    "Environment variable holding the API key")
        ->capture_default_str();
    cmd->add_option("--library", o.library_path, "Example library JSON (default: built-in)");
    cmd->add_option("--guidelines", o.guidelines_path, "Guidelines text file (default: built-in)");
    cmd->add_option("--api-docs", o.api_docs_path, "Skill API docs text file (default: built-in)");
    cmd->add_option("--constraints-file", o.constraints_path,
                    "Constraints text file (default: built-in)");
    cmd->add_option("--repeats", o.repeats, "Repetitions per (task, method)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--parallelism", o.parallelism, "Concurrent runs")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--temperature", o.temperature, "Sampling temperature")
        ->capture_default_str();
    cmd->add_option("--max-tokens", o.max_tokens, "Completion token cap")->capture_default_str();
    cmd->add_option("--timeout", o.timeout_seconds, "HTTP timeout, seconds")
        ->capture_default_str();
    cmd->add_option("--max-attempts", o.max_attempts, "HTTP attempts before giving up")
        ->capture_default_str();
    cmd->add_option("--pos-eps", o.pos_eps, "Position tolerance, meters")->capture_default_str();
    cmd->add_option("--yaw-eps", o.yaw_eps, "Yaw tolerance, degrees")->capture_default_str();
    cmd->add_option("--completeness", o.completeness, "Completeness mode: lcs or prefix")
        ->capture_default_str()
        ->check(CLI::IsMember({"lcs", "prefix"}));
    cmd->add_flag("--cot,!--no-cot", o.cot, "Examples carry reasoning comments")
        ->capture_default_str();
    cmd->add_flag("--constraint-impl,!--no-constraint-impl", o.constraint_impl,
                  "Examples demonstrate constraint usage")
        ->capture_default_str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

// Fills the plan's prompt assets and tolerance from the options.
void fill_plan_assets(gsce::runner::RunPlan& plan, const RunOptions& o) {
    plan.repeats = o.repeats;
    plan.model = o.model;
    plan.temperature = o.temperature;
    plan.max_tokens = o.max_tokens;
    plan.parallelism = o.parallelism;
    plan.tolerance = {o.pos_eps, o.yaw_eps};
    plan.completeness_mode = o.completeness == "prefix" ? gsce::eval::CompletenessMode::Prefix
                                                        : gsce::eval::CompletenessMode::Lcs;
    plan.library = o.library_path.empty() ? gsce::prompt::default_example_library()
                                          : gsce::prompt::load_example_library(o.library_path);
    plan.guidelines_text =
        o.guidelines_path.empty() ? gsce::prompt::kDefaultGuidelines : read_text_file(o.guidelines_path);
    plan.api_docs_text =
        o.api_docs_path.empty() ? gsce::prompt::kDefaultApiDocs : read_text_file(o.api_docs_path);
    plan.constraints_text = o.constraints_path.empty() ? gsce::prompt::kDefaultConstraints
                                                       : read_text_file(o.constraints_path);
}

std::unique_ptr<gsce::llm::Agent> build_agent(const RunOptions& o, bool model_given,
                                              const gsce::corpus::CorpusFile& corpus) {
    using namespace gsce::llm;
    if (o.agent == "oracle") return std::make_unique<OracleAgent>(corpus);
    if (o.agent.rfind("faulty:", 0) == 0) {
        return std::make_unique<FaultyAgent>(corpus, fault_from_string(o.agent.substr(7)));
    }
    if (o.agent == "replay") {
        if (o.cache_dir.empty()) {
            throw std::invalid_argument("--agent replay requires --cache");
        }
        auto cache = std::make_shared<ResponseCache>(
            (std::filesystem::path(o.cache_dir) / "cache.jsonl").string());
        return std::make_unique<ReplayAgent>(std::move(cache));
    }
    if (o.agent == "http") {
        if (o.endpoint.empty()) throw std::invalid_argument("--agent http requires --endpoint");
        if (!model_given) throw std::invalid_argument("--agent http requires --model");
        HttpConfig config;
        config.base_url = o.endpoint;
        if (const char* key = std::getenv(o.api_key_env.c_str())) config.api_key = key;
        config.timeout_seconds = o.timeout_seconds;
        config.max_attempts = o.max_attempts;
        config.max_concurrency = o.parallelism;
        auto http = std::make_unique<HttpAgent>(std::move(config));
        if (o.cache_dir.empty()) return http;
        std::filesystem::create_directories(o.cache_dir);
        auto cache = std::make_shared<ResponseCache>(
            (std::filesystem::path(o.cache_dir) / "cache.jsonl").string());
        return std::make_unique<ReplayAgent>(std::move(cache), std::move(http));
    }
    throw std::invalid_argument("unknown agent: " + o.agent);
}

void write_or_print(const std::string& text, const std::string& out_path, const char* what) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    ensure_parent_dir(out_path);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error(std::string("cannot open for writing: ") + out_path);
    out << text;
    if (!out) throw std::runtime_error(std::string("write failed: ") + out_path);
    std::cout << "wrote " << what << " to " << out_path << "\n";
}

int cmd_gen_corpus(std::uint64_t seed, const std::vector<int>& counts, const std::string& out) {
    gsce::corpus::GeneratorCounts gc;
    gc.family_a = counts[0];
    gc.family_b = counts[1];
    gc.family_c = counts[2];
    gsce::corpus::CorpusFile corpus = gsce::corpus::generate_corpus(seed, gc);
    ensure_parent_dir(out);
    gsce::corpus::save_corpus(corpus, out);
    std::cout << "wrote " << corpus.tasks.size() << " tasks to " << out << "\n";
    return 0;
}

int cmd_validate(const std::string& corpus_path) {
    gsce::corpus::CorpusFile corpus = gsce::corpus::load_corpus(corpus_path, /*validate=*/false);
    std::size_t invalid = 0;
    for (const gsce::corpus::Task& task : corpus.tasks) {
        if (std::optional<std::string> err = gsce::corpus::validate_task(task)) {
            ++invalid;
            std::cout << "INVALID: " << *err << "\n";
        }
    }
    std::cout << "validated " << corpus.tasks.size() << " tasks: "
              << (invalid == 0 ? "all valid" : std::to_string(invalid) + " invalid") << "\n";
    return invalid == 0 ? 0 : 1;
}

int cmd_run(const RunOptions& o, const std::vector<std::string>& methods, int k, bool model_given) {
    gsce::runner::RunPlan plan;
    plan.corpus = gsce::corpus::load_corpus(o.corpus_path);
    fill_plan_assets(plan, o);
    for (const std::string& name : methods) {
        gsce::prompt::MethodConfig method = gsce::prompt::method_preset(name);
        if (method.include_examples) {
            method.k = k;
            method.cot = o.cot;
            method.constraint_impl = o.constraint_impl;
        }
        plan.methods.push_back(std::move(method));
    }

    // Coverage warning: with the built-in constraint set, the first k
    // examples should jointly demonstrate every constraint.
    if (o.constraints_path.empty()) {
        for (const gsce::prompt::MethodConfig& m : plan.methods) {
            if (!m.include_constraints || !m.include_examples) continue;
            if (auto err = gsce::prompt::validate_library(
                    plan.library, gsce::prompt::default_constraint_ids(), m.k)) {
                std::cerr << "warning: method " << m.label << ": " << *err << "\n";
            }
        }
    }

    std::unique_ptr<gsce::llm::Agent> agent = build_agent(o, model_given, plan.corpus);
    std::vector<gsce::eval::RunResult> results = gsce::runner::run_plan(plan, *agent);
    ensure_parent_dir(o.out_path);
    gsce::eval::write_results(results, o.out_path);
    std::cout << gsce::eval::render_report(gsce::eval::aggregate(results),
                                           gsce::eval::ReportFormat::Markdown);
    std::cout << "wrote " << results.size() << " results to " << o.out_path << "\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& format,
               const std::string& out_path) {
    std::vector<gsce::eval::RunResult> results;
    for (const std::string& path : inputs) {
        std::vector<gsce::eval::RunResult> batch = gsce::eval::read_results(path);
        results.insert(results.end(), std::make_move_iterator(batch.begin()),
                       std::make_move_iterator(batch.end()));
    }
    std::string text = gsce::eval::render_report(gsce::eval::aggregate(results),
                                                 gsce::eval::report_format_from_string(format));
    write_or_print(text, out_path, "report");
    return 0;
}

int cmd_sweep_k(const RunOptions& o, int k_min, int k_max, const std::string& report_path,
                const std::string& format, bool model_given) {
    if (k_min < 0 || k_max < k_min) {
        throw std::invalid_argument("sweep-k: need 0 <= min <= max");
    }
    gsce::runner::RunPlan plan;
    plan.corpus = gsce::corpus::load_corpus(o.corpus_path);
    fill_plan_assets(plan, o);
    if (static_cast<std::size_t>(k_max) > plan.library.size()) {
        throw std::invalid_argument("sweep-k: max k " + std::to_string(k_max) +
                                    " exceeds library size " + std::to_string(plan.library.size()));
    }
    std::unique_ptr<gsce::llm::Agent> agent = build_agent(o, model_given, plan.corpus);

    std::vector<gsce::eval::RunResult> all;
    for (int k = k_min; k <= k_max; ++k) {
        gsce::prompt::MethodConfig method = gsce::prompt::method_preset("gsce");
        method.k = k;
        method.cot = o.cot;
        method.constraint_impl = o.constraint_impl;
        plan.methods = {std::move(method)};
        std::vector<gsce::eval::RunResult> results = gsce::runner::run_plan(plan, *agent);
        all.insert(all.end(), std::make_move_iterator(results.begin()),
                   std::make_move_iterator(results.end()));
    }
    ensure_parent_dir(o.out_path);
    gsce::eval::write_results(all, o.out_path);

    std::string text = gsce::eval::render_report(gsce::eval::aggregate(all),
                                                 gsce::eval::report_format_from_string(format));
    if (report_path.empty()) {
        std::cout << text;
    } else {
        write_or_print(text, report_path, "report");
    }
    std::cout << "wrote " << all.size() << " results to " << o.out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evaluation harness for LLM-driven drone control"};
    app.set_version_flag("--version", "gsce 1.0.0");
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file mirroring the flags");
    app.require_subcommand(1);

    // gen-corpus
    std::uint64_t seed = 42;
    std::vector<int> counts = {15, 15, 14};
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen-corpus", "Generate a deterministic task corpus");
    gen->add_option("--seed", seed, "Generator seed")->capture_default_str();
    gen->add_option("--counts", counts, "Tasks per family A,B,C")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    gen->add_option("--out", gen_out, "Output corpus path")->required();

    // validate
    std::string validate_corpus;
    CLI::App* validate = app.add_subcommand("validate", "Validate every task in a corpus");
    validate->add_option("--corpus", validate_corpus, "Corpus JSON file")->required();

    // run
    RunOptions run_opts;
    std::vector<std::string> run_methods = {"gsce"};
    int run_k = gsce::prompt::kDefaultK;
    CLI::Option* run_model_opt = nullptr;
    CLI::App* run = app.add_subcommand("run", "Evaluate methods over a corpus");
    add_run_options(run, run_opts, &run_model_opt);
    run->add_option("--method", run_methods,
                    "Method preset(s): base, constraints, examples, gsce")
        ->capture_default_str()
        ->check(CLI::IsMember({"base", "constraints", "examples", "gsce"}));
    run->add_option("--k", run_k, "Example count for example-bearing methods")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);

    // report
    std::vector<std::string> report_inputs;
    std::string report_format = "markdown";
    std::string report_out;
    CLI::App* report = app.add_subcommand("report", "Aggregate results files into a table");
    report->add_option("--in", report_inputs, "Results JSONL file(s)")->required();
    report->add_option("--format", report_format, "markdown, csv, or json")
        ->capture_default_str()
        ->check(CLI::IsMember({"markdown", "csv", "json"}));
    report->add_option("--out", report_out, "Report output path (default: stdout)");

    // sweep-k
    RunOptions sweep_opts;
    int k_min = 0;
    int k_max = 8;
    std::string sweep_report_out;
    std::string sweep_format = "markdown";
    CLI::Option* sweep_model_opt = nullptr;
    CLI::App* sweep = app.add_subcommand("sweep-k", "Run the gsce preset at each k in a range");
    add_run_options(sweep, sweep_opts, &sweep_model_opt);
    sweep->add_option("--min", k_min, "Smallest k")->capture_default_str();
    sweep->add_option("--max", k_max, "Largest k")->capture_default_str();
    sweep->add_option("--report", sweep_report_out, "Report output path (default: stdout)");
    sweep->add_option("--format", sweep_format, "markdown, csv, or json")
        ->capture_default_str()
        ->check(CLI::IsMember({"markdown", "csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(gen)) return cmd_gen_corpus(seed, counts, gen_out);
        if (app.got_subcommand(validate)) return cmd_validate(validate_corpus);
        if (app.got_subcommand(run)) {
            return cmd_run(run_opts, run_methods, run_k, run_model_opt->count() > 0);
        }
        if (app.got_subcommand(report)) {
            return cmd_report(report_inputs, report_format, report_out);
        }
        if (app.got_subcommand(sweep)) {
            return cmd_sweep_k(sweep_opts, k_min, k_max, sweep_report_out, sweep_format,
                               sweep_model_opt->count() > 0);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
