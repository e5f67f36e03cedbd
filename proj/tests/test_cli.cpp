#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "seqadapt/cli.hpp"

using namespace seqadapt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("seqadapt_cli_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string out_path(const std::string& name) const {
        return (path / name).string();
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing fills defaults and validates") {
    const auto cfg = parse_config(
        R"({"p": 100, "eps2": 1.0, "theta_family": 2, "B2": [1,2,3,4,5]})");
    CHECK(cfg.model.p == 100);
    CHECK(cfg.reps == 1000);
    CHECK(cfg.estimators.size() == 3);
    CHECK(cfg.estimators[0].name() == "proposed");
    CHECK(cfg.estimators[0].hp.eta == 2.0);
    CHECK(cfg.estimators[0].hp.gamma == 2.0);
    CHECK(cfg.estimators[0].hp.k_max == 50);
    CHECK(cfg.estimators[1].name() == "model_averaging(0.5)");

    CHECK_THROWS_WITH_AS(
        parse_config(R"({"eps2": 1.0, "theta_family": 2, "B2": [1]})"),
        "config: missing required key 'p'", std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"p": 10, "eps2": 1.0, "theta_family": 2,
                                     "B2": [1], "beta": 0.7})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"p": 10, "eps2": 1.0, "theta_family": 2,
                                     "B2": [1], "reps": 0})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"p": 10, "eps2": 1.0, "theta_family": 9,
                                     "B2": [1]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config("not json"), std::invalid_argument);
}

TEST_CASE("unknown subcommand and missing config exit with 2") {
    CHECK(run_cli({"frobnicate"}) == 2);
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"risk-sweep"}) == 2); // empty config lacks required keys
    CHECK(run_cli({"risk-sweep", "--config", "/nonexistent/path.json"}) == 2);
}

TEST_CASE("risk-sweep emits a deterministic csv") {
    TempDir tmp;
    const std::string cfg = tmp.file("cfg.json", R"({
        "p": 12, "eps2": 1.0, "theta_family": 1, "B2": [1, 2],
        "reps": 40, "seed": 11, "k_max": 8,
        "estimators": ["proposed", "model_averaging", "model_selection"]
    })");
    const std::string out_a = tmp.out_path("a.csv");
    const std::string out_b = tmp.out_path("b.csv");
    REQUIRE(run_cli({"risk-sweep", "--config", cfg, "--out", out_a}) == 0);
    REQUIRE(run_cli({"risk-sweep", "--config", cfg, "--out", out_b,
                     "--set", "workers=3"}) == 0);

    const std::string text = slurp(out_a);
    CHECK(text == slurp(out_b)); // byte-identical across worker counts
    CHECK(text.rfind("estimator,B2,loss_mean,loss_std,reps,seed\n", 0) == 0);
    CHECK(count_lines(text) == 1 + 3 * 2); // header + estimators x B2

    const std::string out_json = tmp.out_path("a.json");
    REQUIRE(run_cli({"risk-sweep", "--config", cfg, "--out", out_json,
                     "--json"}) == 0);
    CHECK(slurp(out_json).find("\"rows\"") != std::string::npos);
}

TEST_CASE("option overrides reject out-of-range values") {
    TempDir tmp;
    const std::string cfg = tmp.file("cfg.json", R"({
        "p": 12, "eps2": 1.0, "theta_family": 2, "B2": [1], "reps": 10
    })");
    CHECK(run_cli({"risk-sweep", "--config", cfg, "--out",
                   tmp.out_path("x.csv"), "--set", "beta=0.7"}) == 2);
    CHECK(run_cli({"risk-sweep", "--config", cfg, "--out",
                   tmp.out_path("x.csv"), "--set", "reps=0"}) == 2);
}

TEST_CASE("simulate and estimate round") {
    TempDir tmp;
    const std::string cfg = tmp.file("cfg.json", R"({
        "p": 8, "eps2": 1.0, "theta_family": 2, "B": 3.0, "seed": 5, "k_max": 6
    })");
    const std::string sim_a = tmp.out_path("sim_a.csv");
    const std::string sim_b = tmp.out_path("sim_b.csv");
    REQUIRE(run_cli({"simulate", "--config", cfg, "--out", sim_a}) == 0);
    REQUIRE(run_cli({"simulate", "--config", cfg, "--out", sim_b}) == 0);
    CHECK(slurp(sim_a) == slurp(sim_b));
    CHECK(slurp(sim_a).rfind("i,theta,x\n", 0) == 0);
    CHECK(count_lines(slurp(sim_a)) == 9);

    const std::string est = tmp.out_path("est.csv");
    REQUIRE(run_cli({"estimate", "--config", cfg, "--out", est, "--set",
                     "estimator=\"model_selection\""}) == 0);
    CHECK(slurp(est).rfind("i,x,estimate\n", 0) == 0);
}

TEST_CASE("posterior subcommand escalates tail-mass warnings") {
    TempDir tmp;
    const std::string cfg = tmp.file("cfg.json", R"({
        "p": 8, "eps2": 1.0, "theta_family": 2, "B": 2.0, "seed": 1
    })");
    REQUIRE(run_cli({"posterior", "--config", cfg, "--out",
                     tmp.out_path("post.csv")}) == 0);
    CHECK(slurp(tmp.out_path("post.csv"))
              .rfind("i,x,mean,effective_shrink\n", 0) == 0);
    // k_max = 1 leaves prior tail mass e^-2, far above the default threshold
    CHECK(run_cli({"posterior", "--config", cfg, "--out",
                   tmp.out_path("post2.csv"), "--set", "k_max=1"}) == 3);
}

TEST_CASE("whitenoise emits the evaluation grid") {
    TempDir tmp;
    const std::string cfg = tmp.file("cfg.json", R"({
        "p": 30, "eps2": 1.0, "theta_family": 3, "B": 10.0, "seed": 3,
        "k_max": 8, "grid_points": 50,
        "estimators": ["mle", "proposed"]
    })");
    const std::string out = tmp.out_path("wn.csv");
    REQUIRE(run_cli({"whitenoise", "--config", cfg, "--out", out}) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("t,true,observation,mle,proposed\n", 0) == 0);
    CHECK(count_lines(text) == 51);
}

TEST_CASE("regression subcommand reads csv input") {
    TempDir tmp;
    std::ostringstream data;
    data << "t,y\n";
    for (int k = 1; k <= 40; ++k)
        data << (static_cast<double>(k) / 40) << ',' << 1.5 << '\n';
    const std::string input = tmp.file("obs.csv", data.str());
    const std::string cfg = tmp.file("cfg.json", std::string(R"({
        "input": ")") + input + R"(", "p": 10, "k_max": 6, "grid_points": 20
    })");
    const std::string out = tmp.out_path("fit.csv");
    REQUIRE(run_cli({"regression", "--config", cfg, "--out", out}) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("t,fhat\n", 0) == 0);
    CHECK(count_lines(text) == 21);
}

TEST_CASE("small-ball subcommand") {
    TempDir tmp;
    const std::string out = tmp.out_path("sb.csv");
    REQUIRE(run_cli({"small-ball", "--out", out, "--set", "alpha=1.0", "--set",
                     "d=1", "--set", "reps=20000", "--seed", "4"}) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("alpha,d,reps,hits,p_hat,upper_bound_only,upper_bound\n",
                     0) == 0);
    // d = 1: the hit rate is around 0.68
    const auto pos = text.find("\n1,"); // alpha column printed as "1"
    CHECK(pos != std::string::npos);
}

TEST_CASE("seed and reps flags override the config") {
    TempDir tmp;
    const std::string cfg = tmp.file("cfg.json", R"({
        "p": 6, "eps2": 1.0, "theta_family": 2, "B2": [1],
        "reps": 10, "seed": 1, "estimators": ["mle"]
    })");
    const std::string a = tmp.out_path("a.csv");
    const std::string b = tmp.out_path("b.csv");
    const std::string c = tmp.out_path("c.csv");
    REQUIRE(run_cli({"risk-sweep", "--config", cfg, "--out", a}) == 0);
    REQUIRE(run_cli({"risk-sweep", "--config", cfg, "--out", b, "--seed",
                     "99"}) == 0);
    REQUIRE(run_cli({"risk-sweep", "--config", cfg, "--out", c, "--reps",
                     "20"}) == 0);
    CHECK(slurp(a) != slurp(b));
    CHECK(slurp(c).find(",20,") != std::string::npos);
}

} // TEST_SUITE
