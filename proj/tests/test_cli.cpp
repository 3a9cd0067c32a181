#include "perceprice/cli.hpp"
#include "perceprice/corpus.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace perceprice;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args, cli::Environment env = {})
{
    std::ostringstream out, err;
    const int status = cli::run(args, out, err, env);
    return {status, out.str(), err.str()};
}

std::filesystem::path scratch_dir()
{
    auto dir = std::filesystem::temp_directory_path() / "perceprice_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("perception commands")
{
    auto r = run({"perception", "error", "--eta-p", "-1.2", "--eta-i", "0.4"});
    CHECK(r.status == 0);
    CHECK(r.out == "-4.00  Overestimate\n");
    CHECK(r.err.empty());

    r = run({"perception", "solve-price", "--pr", "100", "--eta-p", "-1.2", "--eta-i", "0.4"});
    CHECK(r.status == 0);
    CHECK(r.out == "20\n");

    r = run({"perception", "solve-reference", "--pa", "20", "--eta-p", "-1.2", "--eta-i", "0.4"});
    CHECK(r.out == "100\n");
    r = run({"perception", "solve-eta-p", "--pa", "20", "--pr", "100", "--eta-i", "0.4"});
    CHECK(r.out == "-1.2\n");
    r = run({"perception", "solve-eta-i", "--pa", "20", "--pr", "100", "--eta-p", "-1.2"});
    CHECK(r.out == "0.4\n");

    r = run({"perception", "classify", "--eta-p", "1.39", "--eta-i", "1.44"});
    CHECK(r.out == "Aligned\n");
    r = run({"perception", "classify", "--error", "0.05"});
    CHECK(r.out == "Aligned\n");
    r = run({"perception", "classify", "--error", "0.06", "--epsilon", "0.1"});
    CHECK(r.out == "Aligned\n");
    r = run({"perception", "classify", "--error", "0.5"});
    CHECK(r.out == "Underestimate\n");

    r = run({"perception", "error", "--eta-p", "-1.2", "--eta-i", "0.4", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["ratio"].get<double>() == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK(j["error"].get<double>() == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(j["classification"] == "overestimate");
}

TEST_CASE("non-physical solutions warn but succeed")
{
    auto r = run({"perception", "solve-price", "--pr", "100", "--eta-p", "3", "--eta-i", "1"});
    CHECK(r.status == 0);
    CHECK(r.out == "-100\n");
    CHECK(r.err.find("warning:") == 0);

    r = run({"perception", "solve-price", "--pr", "100", "--eta-p", "3", "--eta-i", "1", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pa"] == -100.0);
    CHECK(j["warnings"].size() == 1);
}

TEST_CASE("domain errors exit 1 with a single error line")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"perception", "error", "--eta-p", "1", "--eta-i", "0"},
             {"perception", "solve-price", "--pr", "100", "--eta-p", "-1", "--eta-i", "-0.5"},
             {"perception", "solve-reference", "--pa", "0", "--eta-p", "1", "--eta-i", "1"},
             {"perception", "classify", "--error", "0", "--epsilon", "-1"},
             {"replicate", "table1", "--corpus", "/definitely/not/here.csv"},
         }) {
        const auto r = run(args);
        CHECK(r.status == 1);
        CHECK(r.out.empty());
        CHECK(r.err.rfind("error: ", 0) == 0);
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
}

TEST_CASE("usage errors exit 2 with the synopsis")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"bogus"},
             {"perception"},
             {"perception", "error", "--eta-p", "1"},
             {"perception", "error", "--eta-p", "x", "--eta-i", "1"},
             {"perception", "solve-price", "--pr", "100", "--eta-p", "1"},
             {"replicate", "table7"},
             {"replicate", "table1", "--unknown-flag"},
             {"replicate", "table1", "--mode", "sideways"},
             {"replicate", "table1", "--format", "xlsx"},
             {"replicate", "table1", "--format", "svg"},
             {"perception", "classify", "--error", "1", "--eta-p", "1"},
             {"serve", "--port", "70000"},
         }) {
        const auto r = run(args);
        CHECK_MESSAGE(r.status == 2, args.size());
        CHECK(r.out.empty());
        CHECK(r.err.rfind("error: ", 0) == 0);
        CHECK(r.err.find("usage: perceprice") != std::string::npos);
    }
}

TEST_CASE("help goes to standard output")
{
    const auto r = run({"--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("perception") != std::string::npos);
    CHECK(run({"replicate", "table1", "--help"}).status == 0);
}

TEST_CASE("replicate commands")
{
    auto r = run({"replicate", "table4", "--corpus", "embedded"});
    CHECK(r.status == 0);
    CHECK(r.out.find("0.396") != std::string::npos);

    r = run({"replicate", "table1", "--format", "csv"});
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);

    r = run({"replicate", "discrepancies", "--format", "csv"});
    CHECK(r.out == "Commodity/Service,Printed ratio,Recomputed ratio,Absolute difference\n"
                   "\"Cereal, USA\",1.55,-1.55,3.102\n"
                   "\"Sugar, USA\",0.33,-0.33,0.657\n");

    r = run({"replicate", "figure2", "--format", "svg"});
    CHECK(r.status == 0);
    CHECK(r.out.find("<svg") != std::string::npos);

    r = run({"replicate", "all", "--format", "json", "--mode", "recomputed"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["tables"].size() == 8);
    CHECK(j["figures"].size() == 2);

    const auto a = run({"replicate", "all", "--strict-paper"});
    const auto b = run({"replicate", "all", "--strict-paper"});
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("(*)") != std::string::npos);
}

TEST_CASE("corpus export round trips and feeds --corpus and the environment")
{
    const auto dir = scratch_dir();
    const auto path = (dir / "corpus.csv").string();
    auto r = run({"corpus", "export", "--out", path});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    const auto loaded = corpus::load_csv(path);
    CHECK(loaded.records() == corpus::embedded_corpus().records());

    r = run({"corpus", "validate", "--corpus", path});
    CHECK(r.status == 0);
    CHECK(r.out.find("valid: 30 records (file)") == 0);

    cli::Environment env;
    env.corpus_path = path;
    r = run({"corpus", "validate"}, env);
    CHECK(r.out.find("(file)") != std::string::npos);
    r = run({"corpus", "validate", "--corpus", "embedded"}, env);
    CHECK(r.out.find("(embedded)") != std::string::npos);

    env.corpus_path = (dir / "missing.csv").string();
    CHECK(run({"corpus", "validate"}, env).status == 1);

    // Strict rendering is tied to the embedded rows.
    r = run({"replicate", "table1", "--strict-paper", "--corpus", path});
    CHECK(r.status == 2);

    std::ofstream(dir / "bad.csv") << "commodity,eta_p\nx,1\n";
    r = run({"corpus", "validate", "--corpus", (dir / "bad.csv").string()});
    CHECK(r.status == 1);
    CHECK(r.err.find("schema_violation") != std::string::npos);
}

TEST_CASE("exit-status contract under random argument vectors")
{
    const std::vector<std::string> pool = {
        "perception", "replicate", "corpus", "error", "classify", "solve-price", "solve-reference",
        "solve-eta-p", "solve-eta-i", "table1", "table2", "table3", "table4", "table5", "table6",
        "figure1", "figure2", "all", "discrepancies", "validate", "export", "--eta-p", "--eta-i",
        "--pa", "--pr", "--error", "--epsilon", "--mode", "--format", "--log-policy", "--corpus",
        "--strict-paper", "--dependent", "--bin-width", "--bin-anchor", "--help", "-h", "recomputed",
        "as-published", "text", "csv", "json", "svg", "abs", "drop", "signed-log1p", "embedded",
        "0", "1", "-1", "2", "0.4", "-1.2", "100", "1e308", "-1e-320", "nan", "inf", "-inf", "",
        "--", "-", "--=", "=", "x", "\xff\xfe", "--eta-p=", "--mode=recomputed", "--bin-width=0",
        "--bin-width=-1", "--epsilon=-0.1", "/nonexistent/file.csv",
    };
    std::mt19937_64 rng(20231015);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> len(0, 8);
    std::uniform_int_distribution<int> byte(1, 255);
    const std::vector<std::vector<std::string>> prefixes = {
        {"perception", "error"},        {"perception", "classify"},      {"perception", "solve-price"},
        {"perception", "solve-eta-i"},  {"replicate", "table1"},         {"replicate", "table5"},
        {"replicate", "figure1"},       {"replicate", "all"},            {"corpus", "validate"},
    };
    int seen[3] = {0, 0, 0};
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<std::string> args;
        if (trial % 2 == 0)
            args = prefixes[static_cast<std::size_t>(trial / 2) % prefixes.size()];
        const int n = len(rng);
        for (int k = 0; k < n; ++k) {
            if (rng() % 10 == 0) {
                std::string junk(static_cast<std::size_t>(rng() % 6), ' ');
                for (auto& ch : junk)
                    ch = static_cast<char>(byte(rng));
                args.push_back(junk);
            } else {
                args.push_back(pool[pick(rng)]);
            }
        }
        const auto r = run(args);
        REQUIRE(r.status >= 0);
        REQUIRE(r.status <= 2);
        ++seen[r.status];
        if (r.status != 0) {
            CHECK(r.err.rfind("error: ", 0) == 0);
            CHECK(r.out.empty());
        }
        if (r.status == 2)
            CHECK(r.err.find("usage: perceprice") != std::string::npos);
    }
    CHECK(seen[0] > 0);
    CHECK(seen[1] > 0);
    CHECK(seen[2] > 0);
}
