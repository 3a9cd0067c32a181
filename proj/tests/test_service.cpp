#include "perceprice/corpus.hpp"
#include "perceprice/error.hpp"
#include "perceprice/service.hpp"

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <future>
#include <thread>

using namespace perceprice;
using nlohmann::json;

namespace {

const service::Api& api()
{
    static const service::Api instance(corpus::embedded_corpus());
    return instance;
}

service::Response get(std::string_view path, service::Query q = {})
{
    return api().handle("GET", path, q, "");
}

service::Response post(std::string_view path, std::string_view body)
{
    return api().handle("POST", path, {}, body);
}

}  // namespace

TEST_CASE("health")
{
    const auto r = get("/health");
    CHECK(r.status == 200);
    CHECK(json::parse(r.body) == json{{"status", "ok"}});
}

TEST_CASE("assess")
{
    const auto r = post("/v1/perception/assess", R"({"eta_p":-1.2,"eta_i":0.4,"epsilon":0.05})");
    CHECK(r.status == 200);
    const auto j = json::parse(r.body);
    CHECK(j.size() == 3);
    CHECK(j["ratio"].get<double>() == -1.2 / 0.4);
    CHECK(j["error"].get<double>() == -1.2 / 0.4 - 1.0);
    CHECK(j["error"].get<double>() == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(j["classification"] == "overestimate");

    const auto aligned = json::parse(post("/v1/perception/assess", R"({"eta_p":1.39,"eta_i":1.44})").body);
    CHECK(aligned["classification"] == "aligned");

    const auto z = post("/v1/perception/assess", R"({"eta_p":1,"eta_i":0})");
    CHECK(z.status == 422);
    CHECK(json::parse(z.body)["code"] == "zero_income_elasticity");
    CHECK(json::parse(z.body)["field"] == "eta_i");

    const auto neg = post("/v1/perception/assess", R"({"eta_p":1,"eta_i":1,"epsilon":-1})");
    CHECK(neg.status == 422);
    CHECK(json::parse(neg.body)["code"] == "negative_tolerance");
}

TEST_CASE("solve")
{
    auto r = post("/v1/perception/solve", R"({"solve_for":"pa","pr":100,"eta_p":-1.2,"eta_i":0.4})");
    CHECK(r.status == 200);
    CHECK(json::parse(r.body) == json{{"pa", 20.0}, {"warnings", json::array()}});

    r = post("/v1/perception/solve", R"({"solve_for":"pr","pa":20,"eta_p":-1.2,"eta_i":0.4})");
    CHECK(json::parse(r.body)["pr"] == 100.0);
    r = post("/v1/perception/solve", R"({"solve_for":"eta_p","pa":20,"pr":100,"eta_i":0.4})");
    CHECK(json::parse(r.body)["eta_p"].get<double>() == doctest::Approx(-1.2));
    r = post("/v1/perception/solve", R"({"solve_for":"eta_i","pa":20,"pr":100,"eta_p":-1.2})");
    CHECK(json::parse(r.body)["eta_i"].get<double>() == doctest::Approx(0.4));

    r = post("/v1/perception/solve", R"({"solve_for":"pa","pr":100,"eta_p":3,"eta_i":1})");
    CHECK(r.status == 200);
    CHECK(json::parse(r.body)["warnings"].size() == 1);

    r = post("/v1/perception/solve", R"({"solve_for":"pa","pr":100,"eta_p":-1,"eta_i":-0.5})");
    CHECK(r.status == 422);
    CHECK(json::parse(r.body)["code"] == "singular_rearrangement");
}

TEST_CASE("request validation")
{
    CHECK(post("/v1/perception/assess", "{not json").status == 400);
    CHECK(json::parse(post("/v1/perception/assess", "{not json").body)["code"] == "malformed_json");
    CHECK(post("/v1/perception/assess", "").status == 400);

    const auto missing = post("/v1/perception/assess", R"({"eta_p":1})");
    CHECK(missing.status == 422);
    CHECK(json::parse(missing.body) ==
          json{{"code", "validation_failed"}, {"message", "missing required number 'eta_i'"}, {"field", "eta_i"}});

    CHECK(json::parse(post("/v1/perception/assess", R"({"eta_p":"1","eta_i":1})").body)["field"] == "eta_p");
    CHECK(post("/v1/perception/assess", "[1,2]").status == 422);
    CHECK(json::parse(post("/v1/perception/solve", R"({"solve_for":"x"})").body)["field"] == "solve_for");
    CHECK(json::parse(post("/v1/perception/solve", R"({"solve_for":"pa","pr":1})").body)["field"] == "eta_p");
    CHECK(get("/v1/dataset", {{"mode", "weird"}}).status == 422);
    CHECK(get("/v1/replicate/table5", {{"log_policy", "weird"}}).status == 422);
}

TEST_CASE("unknown routes")
{
    CHECK(get("/nope").status == 404);
    CHECK(get("/v1/replicate/table7").status == 404);
    CHECK(get("/v1/figures/figure3").status == 404);
    CHECK(api().handle("DELETE", "/health", {}, "").status == 404);
    CHECK(post("/health", "{}").status == 404);
    CHECK(json::parse(get("/nope").body)["code"] == "not_found");
    CHECK(api().handle("OPTIONS", "/v1/perception/assess", {}, "").status == 204);
}

TEST_CASE("dataset")
{
    for (const char* mode : {"recomputed", "as_published"}) {
        const auto r = get("/v1/dataset", {{"mode", mode}});
        REQUIRE(r.status == 200);
        const auto j = json::parse(r.body);
        CHECK(j["count"] == 30);
        CHECK(j["records"].size() == 30);
        CHECK(j["mode"] == mode);
        for (const auto& row : j["records"]) {
            CHECK(row.contains("recomputed_ratio"));
            CHECK(row.contains("published_ratio"));
            CHECK(row.contains("classification"));
        }
    }
    const auto j = json::parse(get("/v1/dataset").body);
    const auto& sugar = *std::find_if(j["records"].begin(), j["records"].end(),
                                      [](const json& r) { return r["commodity"] == "Sugar, USA"; });
    CHECK(sugar["published_ratio"] == 0.33);
    CHECK(sugar["recomputed_ratio"].get<double>() == doctest::Approx(-0.294 / 0.898));
}

TEST_CASE("replicate and figures")
{
    auto t4 = json::parse(get("/v1/replicate/table4").body);
    CHECK(t4["id"] == "table4");
    CHECK(t4["rows"][1][1].get<double>() == doctest::Approx(0.39560).epsilon(1e-4));
    auto t5 = json::parse(get("/v1/replicate/table5", {{"mode", "recomputed"}, {"log_policy", "drop"}}).body);
    CHECK(t5["id"] == "table5");
    for (int k = 1; k <= 6; ++k)
        CHECK(get("/v1/replicate/table" + std::to_string(k)).status == 200);

    const auto f2 = json::parse(get("/v1/figures/figure2").body);
    CHECK(f2["series"][0]["points"].size() == 30);
    CHECK(f2["curve_coefficients"].size() == 3);
    const auto f1 = json::parse(get("/v1/figures/figure1").body);
    CHECK(f1["kind"] == "histogram");
}

TEST_CASE("http round trip on an ephemeral port")
{
    auto svc = service::serve("127.0.0.1", 0, corpus::embedded_corpus());
    REQUIRE(svc->port() > 0);
    httplib::Client client("127.0.0.1", svc->port());

    auto health = client.Get("/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(health->get_header_value("Content-Type") == "application/json; charset=utf-8");
    CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

    auto assess = client.Post("/v1/perception/assess", R"({"eta_p":-1.2,"eta_i":0.4,"epsilon":0.05})",
                              "application/json");
    REQUIRE(assess);
    CHECK(assess->status == 200);
    CHECK(json::parse(assess->body)["error"].get<double>() == doctest::Approx(-4.0).epsilon(1e-15));

    auto bad = client.Post("/v1/perception/assess", "{", "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);

    auto dataset = client.Get("/v1/dataset?mode=as_published");
    REQUIRE(dataset);
    CHECK(json::parse(dataset->body)["mode"] == "as_published");

    auto missing = client.Get("/missing");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    auto preflight = client.Options("/v1/perception/solve");
    REQUIRE(preflight);
    CHECK(preflight->status == 204);
    CHECK(preflight->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

    // Concurrent clients see exactly the handler's responses.
    const std::string expected = get("/v1/replicate/table3").body;
    std::vector<std::future<bool>> jobs;
    for (int t = 0; t < 8; ++t) {
        jobs.push_back(std::async(std::launch::async, [port = svc->port(), &expected, t] {
            httplib::Client c("127.0.0.1", port);
            for (int i = 0; i < 5; ++i) {
                auto r = c.Get("/v1/replicate/table3");
                if (!r || r->status != 200 || r->body != expected)
                    return false;
                auto s = c.Post("/v1/perception/solve",
                                json{{"solve_for", "pa"}, {"pr", 100.0 + t}, {"eta_p", -1.2}, {"eta_i", 0.4}}.dump(),
                                "application/json");
                if (!s || json::parse(s->body)["pa"].get<double>() != (100.0 + t) / 5.0)
                    return false;
            }
            return true;
        }));
    }
    for (auto& j : jobs)
        CHECK(j.get());

    svc->stop();
    svc->wait();
    CHECK_FALSE(client.Get("/health"));
}

TEST_CASE("binding a taken port fails")
{
    auto first = service::serve("127.0.0.1", 0, corpus::embedded_corpus());
    try {
        service::serve("127.0.0.1", first->port(), corpus::embedded_corpus());
        FAIL("second bind succeeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BindFailure);
    }
}
