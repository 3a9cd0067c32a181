#include "perceprice/cli.hpp"

#include "perceprice/corpus.hpp"
#include "perceprice/error.hpp"
#include "perceprice/identity.hpp"
#include "perceprice/report/format.hpp"
#include "perceprice/report/render.hpp"
#include "perceprice/report/report.hpp"
#include "perceprice/service.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

namespace perceprice::cli {

namespace {

constexpr std::string_view kSynopsis =
    "usage: perceprice <group> <command> [flags]\n"
    "  perception {error|classify|solve-price|solve-reference|solve-eta-p|solve-eta-i}\n"
    "  replicate  {table1|table2|table3|table4|table5|table6|figure1|figure2|all|discrepancies}\n"
    "  corpus     {validate|export}\n"
    "  serve\n"
    "run 'perceprice <group> <command> --help' for the flags of a command\n";

// Argument-combination problems detected after parsing; reported like
// parse errors.
struct UsageError {
    std::string message;
};

struct Common {
    std::string corpus;
    std::string mode = "as-published";
    double epsilon = identity::kDefaultEpsilon;
    std::string log_policy = "abs";
    std::string dependent = "log-ratio";
    std::string format = "text";
    std::string out;
    bool strict_paper = false;
    double bin_width = 1.0;
    double bin_anchor = 0.0;
};

struct Numbers {
    double eta_p = 0.0;
    double eta_i = 0.0;
    double pa = 0.0;
    double pr = 0.0;
    double error = 0.0;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--corpus", c.corpus, "'embedded' or a CSV path (default: $PERCEPRICE_CORPUS, else embedded)");
    cmd->add_option("--mode", c.mode, "derivation mode")
        ->check(CLI::IsMember({"recomputed", "as-published", "as_published"}));
    cmd->add_option("--epsilon", c.epsilon, "half-width of the Aligned band");
    cmd->add_option("--log-policy", c.log_policy, "log transform for tables 5-6")
        ->check(CLI::IsMember({"abs", "signed-log1p", "drop"}));
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "csv", "json", "svg"}));
    cmd->add_option("--out", c.out, "write the payload to this file instead of standard output");
    cmd->add_flag("--strict-paper", c.strict_paper, "reproduce the printed artifacts verbatim");
}

corpus::Corpus load_corpus(const Common& c, const Environment& env)
{
    std::string source = c.corpus;
    if (source.empty() && env.corpus_path && !env.corpus_path->empty())
        source = *env.corpus_path;
    if (source.empty() || source == "embedded")
        return corpus::embedded_corpus();
    return corpus::load_csv(source);
}

report::ReportOptions options_from(const Common& c)
{
    report::ReportOptions o;
    o.mode = c.mode == "recomputed" ? corpus::DerivationMode::Recomputed : corpus::DerivationMode::AsPublished;
    o.epsilon = c.epsilon;
    o.log_policy = c.log_policy == "signed-log1p" ? stats::LogPolicy::SignedLog1p
                   : c.log_policy == "drop"       ? stats::LogPolicy::DropNonPositive
                                                  : stats::LogPolicy::AbsLog;
    o.dependent = c.dependent == "raw-ratio" ? stats::DependentChoice::RawRatio : stats::DependentChoice::LogRatio;
    o.strict_paper = c.strict_paper;
    o.bin_width = c.bin_width;
    o.bin_anchor = c.bin_anchor;
    return o;
}

std::string number_text(double v)
{
    return report::format_trimmed(v, 6);
}

std::string perception_payload(const std::string& command, const Numbers& n, const CLI::App& app,
                               const Common& c, std::ostream& err)
{
    const auto fmt = report::parse_format(c.format);
    if (fmt == report::Format::VectorGraphic)
        throw UsageError{"svg output is only available for figures"};
    using nlohmann::json;

    if (command == "error" || command == "classify") {
        const bool from_error = command == "classify" && app.count("--error") > 0;
        if (from_error && (app.count("--eta-p") || app.count("--eta-i")))
            throw UsageError{"give either --error or --eta-p/--eta-i, not both"};
        if (!from_error && (!app.count("--eta-p") || !app.count("--eta-i")))
            throw UsageError{"--eta-p and --eta-i are required"};
        if (from_error) {
            const auto cls = identity::classify(n.error, c.epsilon);
            switch (fmt) {
            case report::Format::StructuredData:
                return json{{"error", n.error}, {"classification", identity::to_wire(cls)}}.dump() + "\n";
            case report::Format::DelimitedValues:
                return "error,classification\n" + report::format_shortest(n.error) + "," +
                       std::string(identity::to_wire(cls)) + "\n";
            default: return std::string(identity::to_string(cls)) + "\n";
            }
        }
        const auto a = identity::assess({n.eta_p, n.eta_i}, c.epsilon);
        switch (fmt) {
        case report::Format::StructuredData:
            return json{{"ratio", a.ratio}, {"error", a.error}, {"classification", identity::to_wire(a.classification)}}
                       .dump() +
                   "\n";
        case report::Format::DelimitedValues:
            return "ratio,error,classification\n" + report::format_shortest(a.ratio) + "," +
                   report::format_shortest(a.error) + "," + std::string(identity::to_wire(a.classification)) + "\n";
        default:
            if (command == "classify")
                return std::string(identity::to_string(a.classification)) + "\n";
            return report::format_fixed(a.error, 2) + "  " + std::string(identity::to_string(a.classification)) + "\n";
        }
    }

    identity::Solution s;
    std::string key;
    if (command == "solve-price") {
        s = identity::solve_actual_price(n.pr, {n.eta_p, n.eta_i});
        key = "pa";
    } else if (command == "solve-reference") {
        s = identity::solve_reference_price(n.pa, {n.eta_p, n.eta_i});
        key = "pr";
    } else if (command == "solve-eta-p") {
        s = identity::solve_price_elasticity({n.pa, n.pr}, n.eta_i);
        key = "eta_p";
    } else {
        s = identity::solve_income_elasticity({n.pa, n.pr}, n.eta_p);
        key = "eta_i";
    }
    std::vector<std::string> warnings;
    if (s.non_physical) {
        warnings.push_back("non_physical: solved " + key + " is not a positive price");
        err << "warning: solved " << key << " = " << number_text(s.value) << " is not a positive price\n";
    }
    switch (fmt) {
    case report::Format::StructuredData: return json{{key, s.value}, {"warnings", warnings}}.dump() + "\n";
    case report::Format::DelimitedValues: return key + "\n" + report::format_shortest(s.value) + "\n";
    default: return number_text(s.value) + "\n";
    }
}

std::string replicate_payload(const std::string& what, const Common& c, const Environment& env)
{
    const auto corpus = load_corpus(c, env);
    const auto opt = options_from(c);
    const auto fmt = report::parse_format(c.format);
    const bool figure = what == "figure1" || what == "figure2";
    if (fmt == report::Format::VectorGraphic && !figure)
        throw UsageError{"svg output is only available for figure1 and figure2"};

    if (what == "all")
        return report::render_bundle(report::replicate_all(corpus, opt), fmt);
    if (what == "discrepancies") {
        if (!corpus.has_published_columns())
            throw Error(ErrorCode::MissingPublishedColumn,
                        "the corpus has no published_ratio column to compare against");
        return report::render(report::discrepancy_table(corpus), fmt);
    }
    if (what == "figure1")
        return report::render(report::figure1(corpus, opt), fmt);
    if (what == "figure2")
        return report::render(report::figure2(corpus, opt), fmt);
    if (what == "table1")
        return report::render(report::table1(corpus, opt), fmt);
    if (what == "table2")
        return report::render(report::table2(corpus, opt), fmt);
    if (what == "table3" || what == "table4") {
        auto [t3, t4] = report::table3_4(corpus, opt);
        return report::render(what == "table3" ? t3 : t4, fmt);
    }
    auto [t5, t6] = report::table5_6(corpus, opt);
    return report::render(what == "table5" ? t5 : t6, fmt);
}

std::string corpus_payload(const std::string& what, const Common& c, const Environment& env)
{
    const auto corpus = load_corpus(c, env);
    const auto fmt = report::parse_format(c.format);
    if (fmt == report::Format::VectorGraphic)
        throw UsageError{"svg output is only available for figures"};
    if (what == "export") {
        if (fmt == report::Format::StructuredData) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : corpus.records())
                rows.push_back({{"commodity", r.commodity},
                                {"eta_p", r.eta_p},
                                {"eta_i", r.eta_i},
                                {"source", r.source},
                                {"published_ratio", r.published_ratio ? nlohmann::json(*r.published_ratio) : nullptr},
                                {"published_error", r.published_error ? nlohmann::json(*r.published_error) : nullptr}});
            return rows.dump(2) + "\n";
        }
        return corpus::to_csv(corpus);
    }
    const std::size_t differing = corpus.has_published_columns() ? corpus::discrepancy_report(corpus).size() : 0;
    switch (fmt) {
    case report::Format::StructuredData:
        return nlohmann::json{{"valid", true},
                              {"records", corpus.records().size()},
                              {"origin", corpus::to_string(corpus.origin())},
                              {"published_columns", corpus.has_published_columns()},
                              {"discrepancies", differing}}
                   .dump() +
               "\n";
    case report::Format::DelimitedValues:
        return "valid,records,origin,discrepancies\ntrue," + std::to_string(corpus.records().size()) + "," +
               std::string(corpus::to_string(corpus.origin())) + "," + std::to_string(differing) + "\n";
    default: {
        std::string s = "valid: " + std::to_string(corpus.records().size()) + " records (" +
                        std::string(corpus::to_string(corpus.origin())) + ")\n";
        if (corpus.has_published_columns())
            s += std::to_string(differing) + " rows differ from their published ratio by more than " +
                 number_text(corpus::kDefaultDiscrepancyTolerance) + "\n";
        return s;
    }
    }
}

std::atomic<bool> g_stop{false};

extern "C" void on_stop_signal(int)
{
    g_stop = true;
}

int serve(const std::string& host, int port, const Common& c, const Environment& env, std::ostream& err)
{
    auto svc = service::serve(host, port, load_corpus(c, env));
    err << "listening on http://" << host << ":" << svc->port() << "\n" << std::flush;
    g_stop = false;
    auto old_int = std::signal(SIGINT, on_stop_signal);
    auto old_term = std::signal(SIGTERM, on_stop_signal);
    while (!g_stop)
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    svc->stop();
    svc->wait();
    std::signal(SIGINT, old_int);
    std::signal(SIGTERM, old_term);
    err << "stopped\n";
    return kExitOk;
}

void emit(const std::string& payload, const Common& c, std::ostream& out, std::ostream& err)
{
    if (c.out.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::FileNotFound, "cannot open '" + c.out + "' for writing");
    f << payload;
    if (!f.flush())
        throw Error(ErrorCode::FileNotFound, "failed writing '" + c.out + "'");
    err << "wrote " << c.out << "\n";
}

}  // namespace

Environment environment_from_process()
{
    Environment env;
    if (const char* p = std::getenv("PERCEPRICE_CORPUS"))
        env.corpus_path = p;
    return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env)
{
    CLI::App app{"Price perception identity solver and study replication", "perceprice"};
    app.require_subcommand(1, 1);

    Common common;
    Numbers num;
    std::string host = "127.0.0.1";
    int port = 8080;

    auto* perception = app.add_subcommand("perception", "identity computations and solvers")->require_subcommand(1, 1);
    auto* replicate = app.add_subcommand("replicate", "reproduce the study's tables and figures")->require_subcommand(1, 1);
    auto* corpus_cmd = app.add_subcommand("corpus", "inspect or export the study corpus")->require_subcommand(1, 1);
    auto* serve_cmd = app.add_subcommand("serve", "start the JSON/HTTP service");

    struct Leaf {
        const char* name;
        const char* help;
        std::vector<const char*> required;
        std::vector<const char*> optional;
    };
    const std::vector<Leaf> perception_leaves = {
        {"error", "perception error (eta_p/eta_i - 1) and its classification", {}, {"--eta-p", "--eta-i"}},
        {"classify", "classify an error, or the error of an elasticity pair", {}, {"--eta-p", "--eta-i", "--error"}},
        {"solve-price", "actual price from reference price and elasticities", {"--pr", "--eta-p", "--eta-i"}, {}},
        {"solve-reference", "reference price from actual price and elasticities", {"--pa", "--eta-p", "--eta-i"}, {}},
        {"solve-eta-p", "price elasticity from prices and income elasticity", {"--pa", "--pr", "--eta-i"}, {}},
        {"solve-eta-i", "income elasticity from prices and price elasticity", {"--pa", "--pr", "--eta-p"}, {}},
    };
    auto target_of = [&](std::string_view flag) -> double* {
        if (flag == "--eta-p") return &num.eta_p;
        if (flag == "--eta-i") return &num.eta_i;
        if (flag == "--pa") return &num.pa;
        if (flag == "--pr") return &num.pr;
        return &num.error;
    };
    for (const auto& leaf : perception_leaves) {
        auto* cmd = perception->add_subcommand(leaf.name, leaf.help);
        for (const char* f : leaf.required)
            cmd->add_option(f, *target_of(f))->required();
        for (const char* f : leaf.optional)
            cmd->add_option(f, *target_of(f));
        add_common(cmd, common);
    }
    for (const char* name : {"table1", "table2", "table3", "table4", "table5", "table6", "figure1", "figure2", "all",
                             "discrepancies"}) {
        auto* cmd = replicate->add_subcommand(name, std::string("render ") + name);
        add_common(cmd, common);
        cmd->add_option("--dependent", common.dependent, "dependent variable for tables 5-6")
            ->check(CLI::IsMember({"log-ratio", "raw-ratio"}));
        cmd->add_option("--bin-width", common.bin_width, "histogram bin width");
        cmd->add_option("--bin-anchor", common.bin_anchor, "a histogram bin edge");
    }
    for (const char* name : {"validate", "export"})
        add_common(corpus_cmd->add_subcommand(name, std::string(name) + " the corpus"), common);
    add_common(serve_cmd, common);
    serve_cmd->add_option("--host", host, "bind address");
    serve_cmd->add_option("--port", port, "port, 0 for any free port")->check(CLI::Range(0, 65535));

    auto usage = [&](const std::string& message) {
        err << "error: " << message << "\n" << kSynopsis;
        return kExitUsage;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        // Subcommand help is raised from the innermost parsed command.
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        return usage(e.what());
    }

    try {
        std::string payload;
        if (serve_cmd->parsed())
            return serve(host, port, common, env, err);
        auto leaf_of = [](CLI::App* group) { return group->get_subcommands().front(); };
        if (perception->parsed()) {
            auto* leaf = leaf_of(perception);
            payload = perception_payload(leaf->get_name(), num, *leaf, common, err);
        } else if (replicate->parsed()) {
            payload = replicate_payload(leaf_of(replicate)->get_name(), common, env);
        } else {
            payload = corpus_payload(leaf_of(corpus_cmd)->get_name(), common, env);
        }
        emit(payload, common, out, err);
        return kExitOk;
    } catch (const UsageError& e) {
        return usage(e.message);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::UnsupportedFormat)
            return usage(e.what());
        err << "error: " << e.what() << " [" << to_string(e.code()) << "]\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
}

}  // namespace perceprice::cli
