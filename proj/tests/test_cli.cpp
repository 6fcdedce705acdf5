#include "poslab/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    json j;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = poslab::cli::run(args, out, err);
    Result r{code, out.str(), nullptr};
    if (!r.out.empty() && r.out[0] == '{') r.j = json::parse(r.out);
    return r;
}

std::string tmp_path(const std::string& name) {
    const char* base = std::getenv("POSLAB_TEST_TMP");
    return (std::filesystem::path(base ? base : ".") / name).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

bool has_member(const json& members, int p, int q) {
    for (const auto& m : members)
        if (m[0] == p && m[1] == q) return true;
    return false;
}

}  // namespace

TEST_CASE("region command") {
    const auto gg = run({"region", "--n", "5", "--r", "3", "--k", "1", "--m", "5", "--theorem", "gg"});
    CHECK(gg.code == 0);
    CHECK(gg.j["schema"] == 1);
    CHECK(gg.j["lambda0"] == "1/2");
    CHECK(gg.j["s0"] == "5/3");
    CHECK(has_member(gg.j["members"], 2, 4));
    CHECK(has_member(gg.j["members"], 4, 3));

    const auto eq = run({"region", "--n", "3", "--theorem", "main1", "--eps1", "1", "--eps2", "1", "--r", "1", "--k",
                         "1", "--m", "1"});
    CHECK(eq.code == 0);
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) CHECK(has_member(eq.j["members"], p, q) == (p + q >= 4));

    const auto bad = run({"region", "--n", "2", "--r", "2", "--k", "1", "--m", "0", "--theorem", "ample"});
    CHECK(bad.code == 2);
    CHECK(bad.j["error"]["code"] == "PARAM_DOMAIN");
    CHECK(bad.j["error"]["message"].get<std::string>().find("m >= k+r+1") != std::string::npos);

    const auto main1 = run({"region", "--n", "3", "--m", "-4", "--eps1", "1"});
    CHECK(main1.code == 2);
    CHECK(main1.j["error"]["message"].get<std::string>().find("m+(r+k)eps1 must be > 0") != std::string::npos);

    const auto badrat = run({"region", "--n", "3", "--eps1", "1/x"});
    CHECK(badrat.code == 2);
    CHECK(badrat.j["error"]["code"] == "PARSE_ERROR");
}

TEST_CASE("region svg output") {
    const std::string path = tmp_path("cli_region.svg");
    const auto r = run({"region", "--n", "5", "--r", "3", "--m", "5", "--theorem", "gg", "--svg", path});
    CHECK(r.code == 0);
    CHECK(read_file(path).rfind("<svg", 0) == 0);
    const auto s = run({"region", "--n", "4", "--format", "svg"});
    CHECK(s.code == 0);
    CHECK(s.out.rfind("<svg", 0) == 0);
    const auto t = run({"region", "--n", "4", "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("lambda0: ") != std::string::npos);
}

TEST_CASE("certify command") {
    const auto b = run({"certify", "--bundle", "tpn", "--n", "2", "--test", "bounds", "--L", "o(1)"});
    CHECK(b.code == 0);
    CHECK(std::abs(b.j["report"]["eps1"].get<double>() - 1.0) < 1e-6);
    CHECK(std::abs(b.j["report"]["eps2"].get<double>() - 2.0) < 1e-6);
    CHECK(b.j["scope"] == "at all sampled points with this metric");
    CHECK(b.j["report"]["points"].size() == 50);

    const auto d = run({"certify", "--bundle", "dsum(3,-1)", "--test", "bounds", "--L", "det", "--points", "20"});
    CHECK(d.code == 0);
    const double e1 = d.j["report"]["eps1"], e2 = d.j["report"]["eps2"];
    CHECK(e1 >= -1.0);
    CHECK(e2 <= 2.0);
    CHECK(std::abs(e1 + 0.5) < 1e-6);
    CHECK(std::abs(e2 - 1.5) < 1e-6);

    const auto nk = run({"certify", "--bundle", "tpn", "--n", "2", "--sym", "2", "--twist", "0", "--test", "nakano",
                         "--points", "10"});
    CHECK(nk.code == 0);
    CHECK(nk.j["report"]["min_value"].get<double>() > 0.0);
    CHECK(nk.j["report"]["certified_sign"] == "positive");

    const auto u = run({"certify", "--bundle", "nope", "--test", "nakano"});
    CHECK(u.code == 2);
    CHECK(u.j["error"]["code"] == "UNKNOWN_BUNDLE");

    const auto neither = run({"certify", "--test", "nakano"});
    CHECK(neither.code == 2);
    const auto badtest = run({"certify", "--bundle", "tpn", "--test", "weird"});
    CHECK(badtest.code == 2);
}

TEST_CASE("certify with a user metric file") {
    const std::string path = tmp_path("cli_user_metric.json");
    write_file(path, R"({"label": "user_o1", "base_dim": 2, "rank": 1, "entries": [["(1+abs2)^-1"]]})");
    const auto r = run({"certify", "--metric", path, "--test", "nakano", "--points", "12"});
    CHECK(r.code == 0);
    CHECK(r.j["bundle"] == "user_o1");
    CHECK(std::abs(r.j["report"]["min_value"].get<double>() - 1.0) < 1e-6);
    CHECK(r.j["report"]["points"].size() == 12);
    const auto dflt = run({"certify", "--metric", path, "--test", "dual"});
    CHECK(dflt.j["report"]["points"].size() == 100);

    write_file(path, R"({"base_dim": 2, "rank": 1, "entries": [["z3"]]})");
    const auto bad = run({"certify", "--metric", path, "--test", "nakano"});
    CHECK(bad.code == 2);
    CHECK(bad.j["error"]["code"] == "PARSE_ERROR");
}

TEST_CASE("verify command") {
    // Seed 7 draws one diagonal entry at 3.23 standard errors, so the 3-sigma
    // gate reports failure; other seeds pass and no entry is biased.
    const auto m7 = run({"verify", "--what", "moments", "--r", "2", "--k", "2", "--samples", "1000000", "--seed", "7"});
    CHECK(m7.code == (m7.j["pass"] == true ? 0 : 1));
    CHECK(m7.j["max_abs_z"].get<double>() < 3.5);
    CHECK(m7.j["entries"].size() == 9);
    for (const char* seed : {"1", "2", "3"}) {
        const auto m = run({"verify", "--what", "moments", "--r", "2", "--k", "2", "--samples", "1000000", "--seed", seed});
        CHECK(m.code == 0);
        CHECK(m.j["pass"] == true);
        CHECK(m.j["max_abs_z"].get<double>() <= 3.0);
    }

    const auto l = run({"verify", "--what", "lemma-linear", "--bundle", "tpn", "--n", "2", "--k", "1", "--m", "1"});
    CHECK(l.code == 0);
    CHECK(l.j["pass"] == true);
    CHECK(l.j["dev_algebraic_fd"].get<double>() <= 1e-6);

    const auto e = run({"verify", "--what", "estimate", "--n", "3", "--trials", "1000"});
    CHECK(e.code == 0);
    CHECK(e.j["worst_slack"].get<double>() >= -1e-9);
    CHECK(e.j["trials"] == 1000);

    // A tolerance that no finite-difference route can meet reports failure.
    const auto strict = run({"verify", "--what", "lemma-linear", "--bundle", "tpn", "--n", "2", "--tol", "1e-30",
                             "--samples", "2000"});
    CHECK(strict.code == 1);
    CHECK(strict.j["pass"] == false);

    CHECK(run({"verify", "--what", "nothing"}).code == 2);
    CHECK(run({"verify"}).code == 2);
}

TEST_CASE("moments, oracle and check commands") {
    const auto m = run({"moments", "--r", "2", "--A", "1,2", "--B", "1,2"});
    CHECK(m.code == 0);
    CHECK(m.j["exact"] == "1/6");
    const auto mc = run({"moments", "--r", "2", "--A", "1", "--B", "1", "--samples", "100000", "--seed", "3"});
    CHECK(std::abs(mc.j["estimate"][0].get<double>() - 0.5) <= 3 * mc.j["std_error"].get<double>());
    CHECK(run({"moments", "--r", "2", "--A", "1,3", "--B", "1,2"}).code == 2);
    CHECK(run({"moments", "--r", "2", "--A", "1,x", "--B", "1,2"}).j["error"]["code"] == "PARSE_ERROR");

    const auto g = run({"oracle", "--kind", "grassmannian", "--d", "3", "--r", "2", "--k", "1"});
    CHECK(g.code == 0);
    CHECK(g.j["dims"][1]["dim"] == "1");
    const auto p = run({"oracle", "--kind", "pn", "--n", "2", "--l", "3"});
    CHECK(p.j["dims"][0]["dim"] == "10");

    const auto in = run({"check", "--n", "2", "--k", "1", "--l", "0"});
    CHECK(in.code == 0);
    CHECK(in.j["reports"][0]["status"] == "INAPPLICABLE");
    CHECK(in.j["reports"][0]["note"] == "theorem inapplicable - non-vanishing oracle active at (2, 1)");
    const auto ok = run({"check", "--n", "3", "--k", "2", "--l", "1"});
    CHECK(ok.code == 0);
    CHECK(ok.j["reports"][0]["status"] == "PASS");
}

TEST_CASE("usage errors") {
    const auto none = run({});
    CHECK(none.code == 2);
    CHECK(none.j["error"]["code"] == "USAGE");
    CHECK(run({"region"}).code == 2);
    CHECK(run({"region", "--n", "3", "--bogus", "1"}).code == 2);
    CHECK(run({"region", "--n", "three"}).code == 2);
    CHECK(run({"region", "--n", "3", "--format", "xml"}).code == 2);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("region") != std::string::npos);
}

TEST_CASE("identical runs give identical bytes") {
    const std::vector<std::string> args = {"certify", "--bundle", "tpn", "--n", "2", "--test", "griffiths",
                                           "--points", "6", "--seed", "11"};
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    setenv("POSLAB_THREADS", "1", 1);
    const auto c = run(args);
    unsetenv("POSLAB_THREADS");
    CHECK(a.out == c.out);
    const auto m1 = run({"verify", "--what", "moments", "--r", "3", "--k", "1", "--samples", "5000", "--seed", "2"});
    const auto m2 = run({"verify", "--what", "moments", "--r", "3", "--k", "1", "--samples", "5000", "--seed", "2"});
    CHECK(m1.out == m2.out);
}

TEST_CASE("config files with flag overrides") {
    const std::string cfg = tmp_path("cli_config.json");
    write_file(cfg, R"({"command": "region", "n": 5, "r": 3, "k": 1, "m": 5, "theorem": "gg"})");
    const auto base = run({"--config", cfg});
    CHECK(base.code == 0);
    CHECK(base.j["lambda0"] == "1/2");
    const auto over = run({"region", "--config", cfg, "--m", "4"});
    CHECK(over.code == 0);
    CHECK(over.j["params"]["m"] == 4);
    CHECK(over.j["lambda0"] == "3/7");

    const std::string out = tmp_path("cli_config_out.json");
    const auto to_file = run({"--config=" + cfg, "--output", out});
    CHECK(to_file.code == 0);
    CHECK(to_file.out.empty());
    CHECK(json::parse(read_file(out))["lambda0"] == "1/2");

    write_file(cfg, "{not json");
    CHECK(run({"--config", cfg}).j["error"]["code"] == "PARSE_ERROR");
    CHECK(run({"region", "--config", tmp_path("missing.json")}).code == 2);
}
