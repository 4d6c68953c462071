#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "cli.hpp"

using namespace stringss;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("field and component parsing") {
    CHECK(cli::parse_field("q") == Field::rational());
    CHECK(cli::parse_field("f3") == Field::prime(3));
    CHECK_THROWS_AS(cli::parse_field("f4"), CompositeCharacteristic);
    CHECK(cli::parse_components("-2..1") == std::vector<int>{-2, -1, 0, 1});
    CHECK(cli::parse_components("3,-1") == std::vector<int>{3, -1});
    CHECK(cli::parse_components("5") == std::vector<int>{5});
}

TEST_CASE("compute json output is exact") {
    const auto r = invoke({"compute", "--space", "hol", "--n", "1", "--field", "q", "--component", "3", "--cutoff",
                           "10", "--format", "json"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out ==
          "{\"space\":\"hol\",\"n\":1,\"field\":\"Q\",\"grading\":\"ordinary\",\"cutoff\":10,"
          "\"components\":{\"3\":{\"0\":1,\"3\":1}}}\n");
}

TEST_CASE("csv rows and repeatability") {
    const std::vector<std::string> args{"compute", "--space", "loop", "--n", "2", "--field", "q",
                                        "--components", "-1..1", "--cutoff", "12", "--format", "csv"};
    const auto a = invoke(args), b = invoke(args);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("component,degree,dimension\n", 0) == 0);
    CHECK(a.out.find("1,5,1\n") != std::string::npos);
    CHECK(a.out.find("0,3,1\n") != std::string::npos);
}

TEST_CASE("export writes byte-identical files") {
    const auto dir = std::filesystem::temp_directory_path() / "stringss_cli_test";
    std::filesystem::create_directories(dir);
    const auto f1 = dir / "a.json", f2 = dir / "b.json";
    for (const auto& f : {f1, f2})
        CHECK(invoke({"export", "--space", "loop", "--n", "2", "--field", "f2", "--components", "-2..2", "--cutoff",
                      "20", "--format", "json", "--output", f.string()})
                  .code == cli::kOk);
    CHECK(!slurp(f1).empty());
    CHECK(slurp(f1) == slurp(f2));
    std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes") {
    CHECK(invoke({"verify", "--check", "collapse", "--n", "2", "--field", "f3", "--components", "0..3"}).code ==
          cli::kOk);
    const auto failed = invoke({"verify", "--check", "example62", "--n", "2", "--field", "f2", "--reading", "printed",
                                "--components", "0"});
    CHECK(failed.code == cli::kCheckFailed);
    CHECK(failed.out.find("Fail") != std::string::npos);
    const auto bad = invoke({"compute", "--n", "2", "--field", "f4", "--component", "0"});
    CHECK(bad.code == cli::kConfigError);
    CHECK(bad.err.rfind("error: CompositeCharacteristic", 0) == 0);
    CHECK(invoke({"compute", "--field", "q"}).code == cli::kConfigError);
    CHECK(invoke({"compute", "--space", "hol", "--n", "2", "--component", "-1"}).code == cli::kConfigError);
    const auto tight = invoke({"compute", "--n", "2", "--field", "f2", "--component", "1", "--cutoff", "30",
                               "--generator-cutoff", "8"});
    CHECK(tight.code == cli::kComputeError);
    CHECK(tight.err.find("CutoffTooTight") != std::string::npos);
    CHECK(invoke({"export", "--n", "1", "--component", "0", "--format", "csv", "--output",
                  "/nonexistent-dir/x/out.csv"})
              .code == cli::kIoError);
}

TEST_CASE("unit check without a claim") {
    const auto r = invoke({"verify", "--check", "unit", "--n", "2", "--field", "f2", "--k", "1"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("NoClaim") != std::string::npos);
}

TEST_CASE("the installed binary runs") {
    const std::string cmd = std::string(STRINGSS_BINARY) +
                            " compute --space hol --n 1 --field q --component 2 --cutoff 10 --series > /dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    const std::string bad = std::string(STRINGSS_BINARY) + " compute --n 1 --field f6 2> /dev/null";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == cli::kConfigError);
}
