// Acceptance checks for the evaluation harness. Each criterion prints
// exactly one [PASS]/[FAIL]/[SKIP] line; the process exits nonzero if
// any criterion fails. Criteria that exercise the command-line tool
// run the real binary (path injected as GSCE_CLI_PATH at build time).

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsce/gsce.hpp"

namespace fs = std::filesystem;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

CommandResult run_command(const std::string& command) {
    CommandResult result;
    std::string wrapped = command + " 2>&1";
    FILE* pipe = popen(wrapped.c_str(), "r");
    if (!pipe) return result;
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.output.append(buffer, n);
    int status = pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Failure reporting: checks append to the current criterion's note and
// the criterion fails if any note was recorded.
std::string g_note;

#define REQUIRE(cond, message)    \
    do {                          \
        if (!(cond)) {            \
            g_note = (message);   \
            return;               \
        }                         \
    } while (0)

const char* kCli = GSCE_CLI_PATH;
fs::path g_dir;  // scratch directory shared by the criteria

// --- criterion bodies ------------------------------------------------

void criterion_oracle_end_to_end() {
    const fs::path corpus_path = g_dir / "corpus.json";
    const fs::path results_path = g_dir / "oracle.jsonl";

    auto start = std::chrono::steady_clock::now();
    CommandResult gen = run_command(std::string(kCli) + " gen-corpus --seed 42 --out " +
                                    corpus_path.string());
    REQUIRE(gen.exit_code == 0, "gen-corpus failed: " + gen.output);
    REQUIRE(gen.output.find("wrote 44 tasks") != std::string::npos,
            "expected 44 generated tasks, got: " + gen.output);

    CommandResult validate =
        run_command(std::string(kCli) + " validate --corpus " + corpus_path.string());
    REQUIRE(validate.exit_code == 0, "validate failed: " + validate.output);

    CommandResult run = run_command(std::string(kCli) + " run --corpus " + corpus_path.string() +
                                    " --agent oracle --out " + results_path.string());
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    REQUIRE(run.exit_code == 0, "run failed: " + run.output);
    REQUIRE(run.output.find("| gsce | offline | 3 | true | true | 132 | 100.0% | 100.0% |") !=
                std::string::npos,
            "expected a 132-run 100.0%/100.0% report row, got: " + run.output);

    std::vector<gsce::eval::RunResult> results = gsce::eval::read_results(results_path.string());
    REQUIRE(results.size() == 132, "expected 132 results, got " + std::to_string(results.size()));
    for (const gsce::eval::RunResult& r : results) {
        REQUIRE(r.success, "oracle run " + r.task_id + " did not succeed");
        REQUIRE(r.completeness == 1.0, "oracle run " + r.task_id + " incomplete");
    }
    REQUIRE(elapsed.count() < 10.0,
            "wall clock " + std::to_string(elapsed.count()) + "s exceeds the 10s budget");
}

void criterion_paper_fixtures() {
    using gsce::corpus::Frame;
    using gsce::corpus::ManeuverSpec;
    using gsce::corpus::Plane;
    using gsce::sim::StateTransition;

    struct Fixture {
        std::vector<ManeuverSpec> maneuvers;
        std::vector<StateTransition> expected;
        const char* label;
    };
    const double c30 = std::cos(std::numbers::pi / 6);
    const Fixture fixtures[] = {
        {{gsce::corpus::RelativeMove{Frame::World, 0, 0, 5},
          gsce::corpus::RelativeMove{Frame::World, 0, 0, -4}},
         {{0, 0, 5, 0}, {0, 0, -4, 0}},
         "down-then-up"},
        {{gsce::corpus::Turn{90}, gsce::corpus::RelativeMove{Frame::Body, 0, -4, 0}},
         {{0, 0, 0, 90}, {4, 0, 0, 0}},
         "turn-then-body-left"},
        {{gsce::corpus::PlaneAngleMove{Plane::YZ, 30, 10, 1, 1}},
         {{0, 10 * c30, -5, 0}},
         "yz-top-right"},
    };
    // Reference values as quoted to four decimals, checked at that precision.
    const double quoted_dy = 8.6603;

    for (const Fixture& f : fixtures) {
        std::string program = gsce::corpus::oracle_program(f.maneuvers);
        gsce::skillscript::ParseResult parsed = gsce::skillscript::parse(program);
        REQUIRE(parsed.ok(), std::string(f.label) + ": oracle program failed to parse");
        gsce::sim::Simulator simulator;
        gsce::skillscript::ExecutionOutcome outcome =
            gsce::skillscript::interpret(parsed.program, simulator);
        REQUIRE(!outcome.error, std::string(f.label) + ": " +
                                    (outcome.error ? outcome.error->message : ""));
        const std::vector<StateTransition>& log = simulator.log();
        REQUIRE(log.size() == f.expected.size(), std::string(f.label) + ": transition count " +
                                                     std::to_string(log.size()));
        for (std::size_t i = 0; i < log.size(); ++i) {
            bool close = std::fabs(log[i].dx - f.expected[i].dx) <= 1e-6 &&
                         std::fabs(log[i].dy - f.expected[i].dy) <= 1e-6 &&
                         std::fabs(log[i].dz - f.expected[i].dz) <= 1e-6 &&
                         std::fabs(log[i].dyaw - f.expected[i].dyaw) <= 1e-6;
            REQUIRE(close, std::string(f.label) + ": transition " + std::to_string(i) +
                               " off by more than 1e-6");
        }
    }
    // The third fixture's lateral component matches the quoted rounding.
    std::vector<StateTransition> gt = gsce::corpus::derive_ground_truth(
        {gsce::corpus::PlaneAngleMove{Plane::YZ, 30, 10, 1, 1}});
    REQUIRE(std::fabs(gt[0].dy - quoted_dy) <= 1e-4, "quoted 8.6603 mismatch");
}

void criterion_faulty_discrimination() {
    const fs::path corpus_path = g_dir / "corpus.json";
    gsce::corpus::CorpusFile corpus = gsce::corpus::load_corpus(corpus_path.string());
    // Computed from the frozen corpus before any run.
    int no_vertical = 0;
    for (const gsce::corpus::Task& task : corpus.tasks) {
        if (!gsce::corpus::has_vertical_component(*task.maneuvers)) ++no_vertical;
    }
    REQUIRE(no_vertical > 0 && no_vertical < 44, "degenerate corpus vertical split");

    const fs::path flip_path = g_dir / "flip.jsonl";
    CommandResult flip = run_command(std::string(kCli) + " run --corpus " + corpus_path.string() +
                                     " --agent faulty:flip_z_sign --out " + flip_path.string());
    REQUIRE(flip.exit_code == 0, "flip_z_sign run failed: " + flip.output);
    std::vector<gsce::eval::RunResult> flip_results =
        gsce::eval::read_results(flip_path.string());
    REQUIRE(flip_results.size() == 132, "expected 132 flip results");
    int successes = 0;
    for (const gsce::eval::RunResult& r : flip_results) successes += r.success ? 1 : 0;
    REQUIRE(successes == 3 * no_vertical,
            "flip_z_sign successes " + std::to_string(successes) + " != 3 * " +
                std::to_string(no_vertical) + " no-vertical tasks");

    const fs::path prose_path = g_dir / "prose.jsonl";
    CommandResult prose = run_command(std::string(kCli) + " run --corpus " + corpus_path.string() +
                                      " --agent faulty:emit_prose --out " + prose_path.string());
    REQUIRE(prose.exit_code == 0, "emit_prose run failed: " + prose.output);
    std::vector<gsce::eval::RunResult> prose_results =
        gsce::eval::read_results(prose_path.string());
    REQUIRE(prose_results.size() == 132, "expected 132 prose results");
    for (const gsce::eval::RunResult& r : prose_results) {
        REQUIRE(!r.success, "emit_prose produced a success");
        REQUIRE(r.error == gsce::ErrorCategory::NoCode ||
                    r.error == gsce::ErrorCategory::ParseError,
                std::string("emit_prose error category ") + to_string(r.error));
    }
}

void criterion_lcs_brute_force() {
    using gsce::sim::StateTransition;
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(4242);
    gsce::eval::Tolerance tol;
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    auto component = [&]() {
        double base = static_cast<double>(pick(3));
        int jitter = pick(3);
        return jitter == 0 ? base : (jitter == 1 ? base + 0.05 : base + 0.2);
    };
    auto transition = [&]() -> StateTransition {
        if (pick(3) == 0) return {0, 0, 0, pick(2) ? 90.0 : -90.0};
        return {component(), component(), component(), 0};
    };

    auto brute_force = [&](const std::vector<StateTransition>& a,
                           const std::vector<StateTransition>& b) {
        std::size_t best = 0;
        for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
            std::size_t j = 0, matched = 0;
            bool ok = true;
            for (std::size_t i = 0; i < a.size() && ok; ++i) {
                if (!(mask & (1u << i))) continue;
                while (j < b.size() && !gsce::eval::transitions_match(a[i], b[j], tol)) ++j;
                if (j == b.size()) ok = false;
                else { ++matched; ++j; }
            }
            if (ok) best = std::max(best, matched);
        }
        return best;
    };

    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<StateTransition> a, b;
        int na = pick(9), nb = pick(9);
        for (int i = 0; i < na; ++i) a.push_back(transition());
        for (int i = 0; i < nb; ++i) b.push_back(transition());
        std::size_t dp = gsce::eval::lcs_length(a, b, tol);
        std::size_t bf = brute_force(a, b);
        REQUIRE(dp == bf, "lcs mismatch at iteration " + std::to_string(iter) + ": dp " +
                              std::to_string(dp) + " vs brute force " + std::to_string(bf));
    }
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    REQUIRE(elapsed.count() < 5.0, "lcs suite took " + std::to_string(elapsed.count()) + "s");
}

void criterion_numeric_properties() {
    std::mt19937_64 rng(99);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng()) / 18446744073709551615.0);
    };

    for (int i = 0; i < 100000; ++i) {
        double dx = uniform(-100, 100), dy = uniform(-100, 100), dz = uniform(-100, 100);
        double yaw = uniform(-720, 720);
        gsce::sim::Vec3 w = gsce::sim::body_to_world(dx, dy, dz, yaw);
        double before = std::sqrt(dx * dx + dy * dy + dz * dz);
        double after = std::sqrt(w.x * w.x + w.y * w.y + w.z * w.z);
        REQUIRE(std::fabs(after - before) <= 1e-9 * std::max(1.0, before),
                "norm not preserved at iteration " + std::to_string(i));
    }

    for (int i = 0; i < 100000; ++i) {
        double deg = static_cast<double>(static_cast<std::int64_t>(rng() % (1 << 23)) - (1 << 22)) / 16.0;
        double n = gsce::sim::normalize_yaw(deg);
        REQUIRE(n > -180.0 && n <= 180.0, "normalized yaw out of range");
        REQUIRE(gsce::sim::normalize_yaw(n) == n, "normalize_yaw not idempotent");
        double shifted = gsce::sim::normalize_yaw(deg + 360.0 * ((i % 7) - 3));
        REQUIRE(std::fabs(shifted - n) <= 1e-9, "normalize_yaw not 360-periodic");
    }

    for (int seq = 0; seq < 1000; ++seq) {
        gsce::sim::Simulator sim;
        sim.takeoff();
        double z0 = sim.state().z;
        int steps = 1 + static_cast<int>(rng() % 10);
        for (int i = 0; i < steps; ++i) {
            if (rng() % 3 == 0) sim.set_yaw(uniform(-180, 180));
            else sim.fly_to(uniform(-50, 50), uniform(-50, 50), uniform(-20, -0.5));
        }
        double sx = 0, sy = 0, sz = 0;
        for (const gsce::sim::StateTransition& t : sim.log()) {
            sx += t.dx; sy += t.dy; sz += t.dz;
        }
        bool conserved = std::fabs(sx - sim.state().x) <= 1e-9 &&
                         std::fabs(sy - sim.state().y) <= 1e-9 &&
                         std::fabs(sz - (sim.state().z - z0)) <= 1e-9;
        REQUIRE(conserved, "displacement not conserved in sequence " + std::to_string(seq));
    }
}

void criterion_parser_properties() {
    namespace ss = gsce::skillscript;
    std::mt19937_64 rng(777);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

    // Round-trip law over generated programs (assignments, calls,
    // nested arithmetic, field access, pi, math calls).
    auto random_expr = [&](auto&& self, int depth) -> ss::Expr {
        ss::Expr e;
        int choice = depth <= 0 ? pick(3) : pick(7);
        switch (choice) {
            case 0: e.node = ss::NumberLiteral{static_cast<double>(pick(500)) / 4.0}; break;
            case 1: e.node = ss::VariableRef{pick(2) ? "pos" : "yaw_now"}; break;
            case 2: e.node = ss::FieldAccess{"pos", static_cast<ss::Axis>(pick(3))}; break;
            case 3: e.node = ss::PiConstant{}; break;
            case 4: {
                ss::UnaryNeg neg;
                neg.operand = std::make_unique<ss::Expr>(self(self, depth - 1));
                e.node = std::move(neg);
                break;
            }
            case 5: {
                ss::BinaryExpr bin;
                bin.op = static_cast<ss::BinaryOp>(pick(4));
                bin.lhs = std::make_unique<ss::Expr>(self(self, depth - 1));
                bin.rhs = std::make_unique<ss::Expr>(self(self, depth - 1));
                e.node = std::move(bin);
                break;
            }
            default: {
                ss::FuncCall call;
                call.name = pick(2) ? "sin" : "atan2";
                int arity = call.name == "atan2" ? 2 : 1;
                for (int i = 0; i < arity; ++i) call.args.push_back(self(self, depth - 1));
                e.node = std::move(call);
                break;
            }
        }
        return e;
    };

    for (int iter = 0; iter < 1000; ++iter) {
        ss::SkillProgram program;
        int len = 1 + pick(6);
        for (int i = 0; i < len; ++i) {
            ss::Statement stmt;
            if (pick(2)) {
                ss::Assignment asg;
                asg.name = pick(2) ? "a" : "target_z";
                asg.value = random_expr(random_expr, 3);
                stmt.node = std::move(asg);
            } else {
                ss::SkillCallStmt call;
                call.name = pick(2) ? "set_yaw" : "fly_to";
                int arity = call.name == "set_yaw" ? 1 : 3;
                for (int a = 0; a < arity; ++a) call.args.push_back(random_expr(random_expr, 2));
                stmt.node = std::move(call);
            }
            program.statements.push_back(std::move(stmt));
        }
        std::string text = ss::pretty_print(program);
        ss::ParseResult reparsed = ss::parse(text);
        REQUIRE(reparsed.ok(), "round-trip reparse failed at iteration " + std::to_string(iter) +
                                   ":\n" + text);
        REQUIRE(ss::equal(program, reparsed.program),
                "round-trip AST mismatch at iteration " + std::to_string(iter) + ":\n" + text);
    }

    // Closed dispatch: mutated skill names never execute.
    const std::string skills[] = {"takeoff", "land",   "get_yaw",
                                  "set_yaw", "fly_to", "get_drone_position"};
    int rejected = 0;
    while (rejected < 100) {
        std::string name = skills[pick(6)];
        if (pick(2)) name += static_cast<char>('a' + pick(26));
        else name[static_cast<std::size_t>(pick(static_cast<int>(name.size())))] =
            static_cast<char>('a' + pick(26));
        bool real = false;
        for (const std::string& s : skills) real |= (s == name);
        if (real) continue;
        ss::ParseResult parsed = ss::parse(name + "()\n");
        REQUIRE(parsed.ok(), "mutated name failed to parse: " + name);
        gsce::sim::Simulator sim;
        ss::ExecutionOutcome outcome = ss::interpret(parsed.program, sim);
        bool is_unknown = outcome.error.has_value() &&
                          outcome.error->category == gsce::ErrorCategory::UnknownFunction;
        REQUIRE(is_unknown, "mutated skill name was not rejected: " + name);
        REQUIRE(sim.log().empty(), "mutated skill name had side effects: " + name);
        ++rejected;
    }

    // Step-limit fixture.
    std::string big;
    for (int i = 0; i < 50; ++i) big += "let v" + std::to_string(i) + " = 1\n";
    ss::ParseResult parsed = ss::parse(big);
    REQUIRE(parsed.ok(), "step-limit fixture failed to parse");
    gsce::sim::Simulator sim;
    ss::ExecutionOutcome outcome = ss::interpret(parsed.program, sim, ss::InterpretLimits{49});
    bool limited = outcome.error.has_value() &&
                   outcome.error->category == gsce::ErrorCategory::StepLimitExceeded;
    REQUIRE(limited, "step limit was not enforced");
}

void criterion_prompt_matrix() {
    namespace prompt = gsce::prompt;
    std::vector<prompt::ExampleEntry> library = prompt::default_example_library();
    auto bundle_for = [&](const std::string& preset) {
        return prompt::compose(prompt::method_preset(preset), library,
                               prompt::kDefaultGuidelines, prompt::kDefaultApiDocs,
                               prompt::kDefaultConstraints, "Fly 2 meters up.");
    };
    auto count = [](const std::string& text, const std::string& needle) {
        int n = 0;
        for (std::size_t pos = text.find(needle); pos != std::string::npos;
             pos = text.find(needle, pos + needle.size())) ++n;
        return n;
    };

    struct Row { const char* preset; bool constraints; int examples; };
    const Row rows[] = {{"base", false, 0},
                        {"constraints", true, 0},
                        {"examples", false, 3},
                        {"gsce", true, 3}};
    for (const Row& row : rows) {
        prompt::PromptBundle bundle = bundle_for(row.preset);
        bool constraints_ok =
            (bundle.system_text.find("# Constraints") != std::string::npos) == row.constraints &&
            bundle.manifest.constraints == row.constraints;
        REQUIRE(constraints_ok, std::string(row.preset) + ": constraints section mismatch");
        int blocks = count(bundle.system_text, "## Example ");
        REQUIRE(blocks == row.examples, std::string(row.preset) + ": expected " +
                                            std::to_string(row.examples) + " example blocks, got " +
                                            std::to_string(blocks));
        bool header_ok = bundle.system_text.find("# Guidelines") != std::string::npos &&
                         bundle.system_text.find("# Skill APIs") != std::string::npos;
        REQUIRE(header_ok, std::string(row.preset) + ": core sections missing");
    }

    // Chain-of-thought toggles exactly the comment lines inside the
    // fenced example code: none without it, some with it.
    auto fenced_comment_lines = [](const std::string& text) {
        std::istringstream in(text);
        std::string line;
        bool in_fence = false;
        int comments = 0;
        while (std::getline(in, line)) {
            if (line.rfind("```", 0) == 0) { in_fence = !in_fence; continue; }
            if (in_fence && line.find('#') != std::string::npos) ++comments;
        }
        return comments;
    };
    prompt::MethodConfig no_cot = prompt::method_preset("gsce");
    no_cot.cot = false;
    prompt::PromptBundle stripped =
        prompt::compose(no_cot, library, prompt::kDefaultGuidelines, prompt::kDefaultApiDocs,
                        prompt::kDefaultConstraints, "Fly 2 meters up.");
    REQUIRE(fenced_comment_lines(stripped.system_text) == 0,
            "cot=false bundle still contains comment lines");
    REQUIRE(fenced_comment_lines(bundle_for("gsce").system_text) > 0,
            "cot=true bundle lacks reasoning comments");
}

void criterion_replay_determinism() {
    const fs::path corpus_path = g_dir / "corpus.json";
    const fs::path cache_dir = g_dir / "cache";
    fs::create_directories(cache_dir);

    // Record oracle responses through the same prompt/request pipeline
    // the CLI uses, so strict replay finds every key.
    gsce::runner::RunPlan plan;
    plan.corpus = gsce::corpus::load_corpus(corpus_path.string());
    plan.methods = {gsce::prompt::method_preset("gsce")};
    plan.repeats = 3;
    plan.parallelism = 1;
    plan.library = gsce::prompt::default_example_library();
    plan.guidelines_text = gsce::prompt::kDefaultGuidelines;
    plan.api_docs_text = gsce::prompt::kDefaultApiDocs;
    plan.constraints_text = gsce::prompt::kDefaultConstraints;
    {
        auto cache =
            std::make_shared<gsce::llm::ResponseCache>((cache_dir / "cache.jsonl").string());
        gsce::llm::ReplayAgent recorder(cache,
                                        std::make_unique<gsce::llm::OracleAgent>(plan.corpus));
        gsce::runner::run_plan(plan, recorder);
        REQUIRE(cache->size() == 132, "expected 132 recorded responses, got " +
                                          std::to_string(cache->size()));
    }

    auto replay = [&](const std::string& out_name, int parallelism) {
        return run_command(std::string(kCli) + " run --corpus " + corpus_path.string() +
                           " --agent replay --cache " + cache_dir.string() + " --parallelism " +
                           std::to_string(parallelism) + " --out " +
                           (g_dir / out_name).string());
    };
    CommandResult first = replay("replay1.jsonl", 4);
    REQUIRE(first.exit_code == 0, "first replay failed: " + first.output);
    CommandResult second = replay("replay2.jsonl", 4);
    REQUIRE(second.exit_code == 0, "second replay failed: " + second.output);
    CommandResult serial = replay("replay3.jsonl", 1);
    REQUIRE(serial.exit_code == 0, "serial replay failed: " + serial.output);

    std::string a = read_file(g_dir / "replay1.jsonl");
    std::string b = read_file(g_dir / "replay2.jsonl");
    std::string c = read_file(g_dir / "replay3.jsonl");
    REQUIRE(!a.empty(), "replay produced an empty results file");
    REQUIRE(a == b, "consecutive replay runs differ");
    REQUIRE(a == c, "parallelism 1 and 4 results differ");

    // All three report formats agree on the numeric values.
    CommandResult md = run_command(std::string(kCli) + " report --in " +
                                   (g_dir / "replay1.jsonl").string() + " --format markdown");
    CommandResult csv = run_command(std::string(kCli) + " report --in " +
                                    (g_dir / "replay1.jsonl").string() + " --format csv");
    CommandResult js = run_command(std::string(kCli) + " report --in " +
                                   (g_dir / "replay1.jsonl").string() + " --format json");
    REQUIRE(md.exit_code == 0 && csv.exit_code == 0 && js.exit_code == 0, "report failed");
    REQUIRE(md.output.find("100.0%") != std::string::npos, "markdown lacks 100.0%: " + md.output);
    REQUIRE(csv.output.find("100.0%") != std::string::npos, "csv lacks 100.0%: " + csv.output);
    REQUIRE(js.output.find("\"success_rate_pct\": 100.0") != std::string::npos,
            "json lacks success_rate_pct 100.0: " + js.output);
}

std::optional<std::string> g_skip;  // set when a criterion opts out

void criterion_live_trend() {
    const char* endpoint = std::getenv("GSCE_LIVE_ENDPOINT");
    if (!endpoint || std::string(endpoint).empty()) {
        g_skip = "no GSCE_LIVE_ENDPOINT configured";
        return;
    }
    const char* model_env = std::getenv("GSCE_LIVE_MODEL");
    const std::string model = model_env ? model_env : "gpt-4-turbo";

    const fs::path corpus_path = g_dir / "corpus.json";
    const fs::path out_path = g_dir / "live.jsonl";
    CommandResult live = run_command(
        std::string(kCli) + " run --corpus " + corpus_path.string() +
        " --agent http --endpoint " + endpoint + " --model " + model +
        " --cache " + (g_dir / "live_cache").string() +
        " --method base --method constraints --method examples --method gsce --out " +
        out_path.string());
    REQUIRE(live.exit_code == 0, "live run failed: " + live.output);

    gsce::eval::AggregateReport report =
        gsce::eval::aggregate(gsce::eval::read_results(out_path.string()));
    auto sr = [&](const std::string& method) -> double {
        for (const auto& [key, stats] : report.cells) {
            if (key.method == method) return stats.success_rate();
        }
        return -1.0;
    };
    double base = sr("base"), constraints = sr("constraints"), examples = sr("examples"),
           gsce_sr = sr("gsce");
    REQUIRE(base >= 0 && constraints >= 0 && examples >= 0 && gsce_sr >= 0,
            "missing method cells in the live report");
    REQUIRE(gsce_sr > examples, "SR(gsce) <= SR(examples)");
    REQUIRE(gsce_sr > constraints, "SR(gsce) <= SR(constraints)");
    REQUIRE(constraints > base, "SR(constraints) <= SR(base)");
}

struct Criterion {
    int id;
    const char* title;
    void (*body)();
};

}  // namespace

int main() {
    g_dir = fs::temp_directory_path() /
            ("gsce_acceptance_" + std::to_string(static_cast<long>(getpid())));
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    const Criterion criteria[] = {
        {1, "oracle end-to-end: 44-task corpus, 132 runs, SR and completeness 100.0%, under 10s",
         criterion_oracle_end_to_end},
        {2, "frozen reference maneuvers reproduced within 1e-6 per component",
         criterion_paper_fixtures},
        {3, "faulty agents discriminated: flip_z_sign SR equals the no-vertical fraction; "
            "emit_prose SR 0 with NoCode/ParseError only",
         criterion_faulty_discrimination},
        {4, "LCS completeness equals exhaustive brute force on 1000 random pairs",
         criterion_lcs_brute_force},
        {5, "numeric properties: rotation norm preservation, yaw normalization laws, "
            "displacement conservation",
         criterion_numeric_properties},
        {6, "parser properties: 1000-program round-trip law, closed dispatch, step limit",
         criterion_parser_properties},
        {7, "prompt matrix: section presence per preset, k=3 blocks, cot comment stripping",
         criterion_prompt_matrix},
        {8, "replay determinism: byte-identical results at parallelism 1 and 4, "
            "report formats agree",
         criterion_replay_determinism},
        {9, "live endpoint trend: SR(gsce) > SR(examples), SR(gsce) > SR(constraints) > SR(base)",
         criterion_live_trend},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        g_note.clear();
        g_skip.reset();
        c.body();
        if (g_skip) {
            std::cout << "[SKIP] " << c.id << ". " << c.title << " (" << *g_skip << ")\n";
        } else if (g_note.empty()) {
            std::cout << "[PASS] " << c.id << ". " << c.title << "\n";
        } else {
            ++failures;
            std::cout << "[FAIL] " << c.id << ". " << c.title << " — " << g_note << "\n";
        }
    }

    fs::remove_all(g_dir);
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
