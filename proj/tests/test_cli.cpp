#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(SU2GAP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        v.push_back(l);
    return v;
}

std::string shell_quoted(const std::string& s) { return "'" + s + "'"; }

const std::string kIdentity = R"({"type": "matrix", "a": [1, 0, 0, 0], "b": [1, 0, 0, 0]})";

} // namespace

TEST_CASE("construct --fricke 0 2 gives (diag(i, -i), I)")
{
    const Run r = run("construct --fricke 0 2");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["type"] == "matrix");
    CHECK(std::abs(j["a"][0].get<double>()) < 1e-15);
    CHECK(j["a"][1].get<double>() == doctest::Approx(1.0));
    CHECK(j["b"][0].get<double>() == doctest::Approx(1.0));
    CHECK(std::abs(j["b"][2].get<double>()) < 1e-15);
}

TEST_CASE("phi-iterate --t0 1.9 ends at step 3")
{
    const Run r = run("phi-iterate --t0 1.9");
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 6);
    CHECK(ls[0].find("schema=1") != std::string::npos);
    CHECK(ls[0].find("steps_to_negative=3") != std::string::npos);
    CHECK(ls[5].rfind("3,-1.64941759", 0) == 0);

    const Run top = run("phi-iterate --t0 2 --max-steps 5 --format json");
    REQUIRE(top.status == 0);
    CHECK(nlohmann::json::parse(top.out)["steps_to_negative"] == "not-reached");
}

TEST_CASE("gap-profile on the identity pair")
{
    const auto path = std::filesystem::temp_directory_path() / "su2gap_cli_identity.json";
    {
        std::ofstream(path) << kIdentity;
    }
    const Run r = run("gap-profile --pair " + path.string() + " --nmax 50 --format json");
    std::filesystem::remove(path);
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["min_gap"].get<double>() == 0.0);
    CHECK(j["levels"].size() == 50);
}

TEST_CASE("construct then traces reproduces the coordinates")
{
    for (const auto& [x, t] : std::vector<std::pair<double, double>>{{0.3, 1.1}, {-1.2, -0.5}, {1.9, 2.0}, {0.0, -2.0}}) {
        std::ostringstream args;
        args.precision(17);
        args << "construct --fricke " << x << " " << t;
        const Run c = run(args.str());
        REQUIRE(c.status == 0);
        std::string spec = c.out;
        while (!spec.empty() && spec.back() == '\n')
            spec.pop_back();
        const Run tr = run("traces --pair " + shell_quoted(spec) + " --format json");
        REQUIRE(tr.status == 0);
        const auto j = nlohmann::json::parse(tr.out);
        CHECK(std::abs(j["x"].get<double>() - x) < 1e-9);
        CHECK(std::abs(j["t"].get<double>() - t) < 1e-9);
    }
    const Run c = run("construct --triple 0.3 -0.2 1.1");
    REQUIRE(c.status == 0);
    std::string spec = c.out;
    spec.pop_back();
    const auto j = nlohmann::json::parse(run("traces --pair " + shell_quoted(spec) + " --format json").out);
    CHECK(std::abs(j["x"].get<double>() - 0.3) < 1e-9);
    CHECK(std::abs(j["y"].get<double>() + 0.2) < 1e-9);
    CHECK(std::abs(j["z"].get<double>() - 1.1) < 1e-9);
}

TEST_CASE("exit codes")
{
    CHECK(run("").status == 1);
    CHECK(run("no-such-command").status == 1);
    CHECK(run("construct").status == 1);
    CHECK(run("traces --pair '{broken'").status == 1);
    CHECK(run("density --samples 10 --delta 0").status == 1);
    CHECK(run("construct --fricke 2 0").status == 2);
    CHECK(run("phi-iterate --t0 3").status == 2);
    CHECK(run("fiber-sample --t -2.5").status == 2);
    // a single power-iteration step cannot settle the Rayleigh quotient
    CHECK(run("gap-profile --pair " + shell_quoted(R"({"type": "fricke", "x": 0.3, "t": 0.7})") + " --nmax 5 --max-iterations 1")
              .status == 3);
}

TEST_CASE("seeded commands are byte-identical across runs")
{
    const std::string pair = shell_quoted(R"({"type": "fricke", "x": 0.3, "t": 0.7})");
    for (const std::string& args :
         {std::string("--seed 5 sample --count 50"), std::string("--seed 5 density --samples 20000 --bins 10 --delta 0.1"),
          std::string("--seed 5 --threads 3 density --samples 20000 --bins 10"),
          std::string("--seed 5 fiber-sample --t 0.4 --count 30"),
          std::string("--seed 5 fiber-transport --t 0.4 --count 300 --bins 8"),
          "--seed 5 defect --pair " + pair + " --word ABab --level 4 --trials 20",
          "orbit --pair " + pair + " --depth 3", "gap-profile --pair " + pair + " --nmax 6"}) {
        const Run a = run(args), b = run(args);
        INFO(args);
        REQUIRE(a.status == 0);
        CHECK(!a.out.empty());
        CHECK(a.out == b.out);
    }
    // thread count does not change the histogram
    CHECK(run("--seed 5 --threads 1 density --samples 20000 --bins 10").out ==
          run("--seed 5 --threads 4 density --samples 20000 --bins 10").out);
    CHECK(run("--seed 5 sample --count 5").out != run("--seed 6 sample --count 5").out);
}

TEST_CASE("output file option")
{
    const auto path = std::filesystem::temp_directory_path() / "su2gap_cli_out.csv";
    std::filesystem::remove(path);
    const Run r = run("-o " + path.string() + " phi-iterate --t0 0.5");
    REQUIRE(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == run("phi-iterate --t0 0.5").out);
    std::filesystem::remove(path);
}
