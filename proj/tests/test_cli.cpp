#include "nicensus/io.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using nicensus::Json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(NICENSUS_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Json run_json(const std::string& args, int expected_code = 0)
{
    const Run r = run(args);
    CHECK(r.code == expected_code);
    return Json::parse(r.out);
}

} // namespace

TEST_CASE("decompose")
{
    Json j = run_json("decompose '2 2 : 0 1 1 1'");
    CHECK(j["result"]["fitting"]["dim_nil"] == 0);
    CHECK(j["result"]["fitting"]["dim_inv"] == 2);
    CHECK(j["manifest"]["subcommand"] == "decompose");
    CHECK(j["manifest"]["digest"].get<std::string>().size() == 64);

    j = run_json("decompose '2 2 : 1 0 0 0'");
    CHECK(j["result"]["fitting"]["dim_inv"] == 1);
    CHECK(j["result"]["fitting"]["dim_nil"] == 1);

    CHECK(run("decompose '2 2 : 0 1 9 1'").code == 4);
    CHECK(run("decompose '2 2 0 1'").code == 4);
}

TEST_CASE("pc-test")
{
    Json j = run_json("pc-test '1 4 : 2' --tower 4/2");
    CHECK(j["result"]["member"] == true);
    CHECK(j["result"]["f"] == Json::array({1, 1, 1}));
    CHECK(j["result"]["r"] == 1);

    j = run_json("pc-test '1 4 : 1' --tower 4/2");
    CHECK(j["result"]["member"] == false);

    j = run_json("pc-test '2 4 : 1 0 0 1' --tower 4/2");
    CHECK(j["result"]["member"] == false);

    CHECK(run("pc-test '1 2 : 1' --tower 4/2").code == 4);
    CHECK(run("pc-test '1 4 : 1' --tower 8/4").code == 4);
}

TEST_CASE("census and quokka")
{
    Json j = run_json("census --spec primary-cyclic-some-f-not-t --d 2 --q 2 --flag-check");
    CHECK(j["result"]["lhs"] == Json::parse(R"({"num":"11","den":"6"})"));
    CHECK(j["result"]["identity_holds"] == true);
    CHECK(j["verdict"] == "holds");

    j = run_json("quokka --c 2 --q 2 --b 2");
    CHECK(j["result"]["exact_in_m"] == Json::parse(R"({"num":"7","den":"16"})"));
    CHECK(j["verdict"] == "holds");

    const Run table = run("quokka --c 6 --q 2 --b 2 --table");
    CHECK(table.code == 0);
    CHECK(table.out.find("r,") != std::string::npos);

    CHECK(run("census --spec all --d 2").code == 4);
    CHECK(run("census --spec no-such-set --d 2 --q 2").code == 4);
    CHECK(run("census --spec all --d 3 --q 3 --budget 100").code == 4);
    CHECK(run("--help").code == 0);
    CHECK(run("bogus").code == 4);
}

TEST_CASE("estimate")
{
    const Json j = run_json("estimate --spec pc-large-degree --d 2 --q 2 --b 2 --n 20000 --seed 42");
    CHECK(j["result"]["exact"] == Json::parse(R"({"num":"7","den":"16"})"));
    CHECK(j["result"]["exact_in_interval"] == true);
    CHECK(j["manifest"]["seed"] == 42);

    const Json one = run_json("estimate --spec separable --d 3 --q 2 --n 3000 --seed 5 --threads 1");
    const Json many = run_json("estimate --spec separable --d 3 --q 2 --n 3000 --seed 5 --threads 3");
    CHECK(one["result"]["hits"] == many["result"]["hits"]);
}

TEST_CASE("verify")
{
    CHECK(run("verify flag-sum").code == 0);
    CHECK(run("verify quokka-closed-forms").code == 0);
    CHECK(run("verify nope").code == 4);
}

TEST_CASE("identical runs give identical bytes")
{
    const auto dir = std::filesystem::temp_directory_path() / "nicensus_cli_test";
    std::filesystem::create_directories(dir);
    const std::string args = "estimate --spec invertible --d 2 --q 3 --n 5000 --seed 7";
    const Run a = run(args + " --json " + (dir / "a.json").string());
    const Run b = run(args + " --threads 2 --json " + (dir / "b.json").string());
    CHECK(a.code == b.code);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    CHECK_FALSE(slurp(dir / "a.json").empty());
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    CHECK(a.out == run(args).out);
    std::filesystem::remove_all(dir);
}
