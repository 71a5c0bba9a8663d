#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "endoscopy/spectrum_io.hpp"

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "endoscopy");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = endoscopy::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("enumerate emits one JSON line per datum")
{
    auto r = run({"enumerate", "--n", "3"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 3);
    auto first = nlohmann::json::parse(ls[0]);
    CHECK(first["schema"] == endoscopy::kSchema);
    CHECK(first["parts"] == nlohmann::json::array({6}));
    CHECK(first["k"] == 1);
    CHECK(first["iota"] == "1");
    CHECK(nlohmann::json::parse(ls[2])["iota"] == "1/4");
}

TEST_CASE("dimdata table")
{
    auto r = run({"dimdata", "--n", "2"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == "partition,k,a1,a2");
    CHECK(ls[1] == "\"[4]\",1,0,0");
    CHECK(ls[2] == "\"[2,2]\",2,0,1");

    auto mc = run({"dimdata", "--n", "2", "--a", "2", "--verify-mc", "--samples", "20000", "--seed", "3"});
    CHECK(mc.code == 0);
    CHECK(lines(mc.out)[0] == "partition,k,a2,a2_mc,a2_se");
}

TEST_CASE("recover")
{
    auto r = run({"recover", "--n", "3", "--values", "2=1"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "unique");
    CHECK(j["partition"] == nlohmann::json::array({4, 2}));

    auto none = run({"recover", "--n", "3", "--values", "2=5"});
    CHECK(none.code == 1);
    CHECK(nlohmann::json::parse(none.out)["status"] == "none");

    CHECK(run({"recover", "--n", "3", "--values", "two"}).code == 2);
}

TEST_CASE("usage errors exit with 2 and name the flag")
{
    auto unknown = run({"frobnicate"});
    CHECK(unknown.code == 2);
    auto missing = run({"enumerate"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--n") != std::string::npos);
    auto bad_rep = run({"tf", "r-limit", "--n", "2", "--rep", "fund5"});
    CHECK(bad_rep.code == 2);
    CHECK(bad_rep.err.find("--rep") != std::string::npos);
    auto bad_pool = run({"spectrum", "--n", "2", "--pool", "3:1", "--summary"});
    CHECK(bad_pool.code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("selftest")
{
    auto r = run({"selftest", "--n", "2", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(lines(r.out).size() == 6);
}

TEST_CASE("reports are byte-identical across runs")
{
    const std::vector<std::string> args{"tf", "verify-decomp", "--n", "3", "--seed", "11", "--trials", "2",
                                        "--prime-bound", "500"};
    auto a = run(args);
    auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["schema"] == endoscopy::kSchema);
    CHECK(j.contains("model"));
    CHECK(j["trials"].size() == 2);
    CHECK(j["passed"] == true);

    auto s1 = run({"spectrum", "--n", "2", "--seed", "4", "--prime-bound", "200"});
    auto s2 = run({"spectrum", "--n", "2", "--seed", "4", "--prime-bound", "200"});
    CHECK(s1.out == s2.out);
}

TEST_CASE("saved spectra feed later commands")
{
    const auto path = (std::filesystem::temp_directory_path() / "endoscopy_cli_spectrum.json").string();
    CHECK(run({"spectrum", "--n", "2", "--seed", "5", "--prime-bound", "300", "--out", path}).code == 0);
    auto from_file = run({"lfun", "euler", "--spectrum", path, "--rep", "std", "--x-grid", "100,300"});
    auto generated = run({"lfun", "euler", "--n", "2", "--seed", "5", "--prime-bound", "300", "--rep", "std",
                          "--x-grid", "100,300"});
    CHECK(from_file.code == 0);
    CHECK(from_file.out == generated.out);
    std::filesystem::remove(path);
    CHECK(run({"lfun", "euler", "--spectrum", path}).code == 2);
}

TEST_CASE("tf and lfun subcommands")
{
    auto limit = run({"tf", "r-limit", "--n", "2", "--prime-bound", "2000", "--x-grid", "100,1000,2000"});
    CHECK(limit.code == 0);
    auto ls = lines(limit.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0].rfind("# model:", 0) == 0);
    CHECK(ls[1] == "X,estimate,prediction,error");

    auto series = run({"tf", "r-series", "--n", "2", "--prime-bound", "500", "--s", "1.5", "--nmax", "8"});
    CHECK(series.code == 0);
    auto sj = nlohmann::json::parse(series.out);
    CHECK(sj["passed"] == true);
    CHECK(sj["interchange_max_rel_deviation"].get<double>() <= 1e-12);

    auto logd = run({"lfun", "logderiv", "--n", "2", "--prime-bound", "500", "--s", "2", "--tol", "1e-6"});
    CHECK(logd.code == 0);
    auto residue = run({"lfun", "residue", "--n", "2", "--rep", "fund2", "--prime-bound", "1000"});
    CHECK(residue.code == 0);
    CHECK(lines(residue.out)[2] == "X,cesaro,target,error");
}

TEST_CASE("config file with flag precedence")
{
    const auto path = (std::filesystem::temp_directory_path() / "endoscopy_cli.toml").string();
    {
        std::ofstream cfg(path);
        cfg << "[dimdata]\nn = 3\n";
    }
    auto from_cfg = run({"--config", path, "dimdata"});
    CHECK(from_cfg.code == 0);
    CHECK(lines(from_cfg.out).size() == 4);
    auto overridden = run({"--config", path, "dimdata", "--n", "2"});
    CHECK(lines(overridden.out).size() == 3);
    std::filesystem::remove(path);
}
