#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using modcross::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("scan emits one row per family member") {
    Result r = call({"scan", "--from", "3", "--to", "7", "--jobs", "2"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0].rfind("# ", 0) == 0);
    CHECK(ls[1] == "N,in_family,D,h,log_eps,L_cnf,L_series,n_geodesics,I_N,cr_upper_proxy,m_systoles,chi_abs,hp_lower,ratio_upper");
    CHECK(ls[2].rfind("3,true,5,1,", 0) == 0);
    CHECK(ls[3].rfind("5,true,21,2,", 0) == 0);
    CHECK(ls[4].rfind("# summary rows=2 ", 0) == 0);
    CHECK(r.err.find("N=5") != std::string::npos);  // progress goes to stderr
}

TEST_CASE("scan of a single N") {
    Result r = call({"scan", "--from", "3", "--to", "3"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[2] == "3,true,5,1,0.962423650119,0.430408940964,0.430408940964,1,0,0,12,2,0,0");
}

TEST_CASE("scan usage errors") {
    CHECK(call({"scan", "--from", "7", "--to", "3"}).code == 2);
    CHECK(call({"scan", "--from", "1", "--to", "3"}).code == 2);
    CHECK(call({"scan", "--from", "x", "--to", "3"}).code == 2);
    CHECK(call({"scan", "--from", "3", "--to", "5", "--format", "xml"}).code == 2);
    CHECK(call({"scan", "--from", "3", "--to", "5", "--precision-bits", "20"}).code == 2);
    CHECK(call({"scan", "--from", "3", "--to", "5", "--jobs", "0"}).code == 2);
    CHECK(call({"scan", "--from", "3"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("scan output is identical across worker counts and formats parse") {
    Result a = call({"scan", "--from", "3", "--to", "40", "--jobs", "1", "--series-cutoff", "10000"});
    Result b = call({"scan", "--from", "3", "--to", "40", "--jobs", "5", "--series-cutoff", "10000"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    Result j = call({"scan", "--from", "3", "--to", "20", "--format", "json", "--series-cutoff", "10000"});
    REQUIRE(j.code == 0);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["schema"] == 1);
    REQUIRE(doc["rows"].size() == 7);
    CHECK(doc["rows"][0]["N"] == 3);
    CHECK(doc["rows"][3]["I_N"] == "8");
    CHECK(doc["summary"]["rows"] == 7);
}

TEST_CASE("scan policies change the counts only where expected") {
    Result ex = call({"scan", "--from", "13", "--to", "13", "--series-cutoff", "1000"});
    Result cs = call({"scan", "--from", "13", "--to", "13", "--series-cutoff", "1000", "--diagonal", "count-self"});
    Result un = call({"scan", "--from", "13", "--to", "13", "--series-cutoff", "1000", "--orientation", "unoriented"});
    REQUIRE(ex.code == 0);
    REQUIRE(cs.code == 0);
    REQUIRE(un.code == 0);
    CHECK(ex.out != cs.out);
    CHECK(lines(un.out)[2].find(",2,") != std::string::npos);
}

TEST_CASE("scan --out writes the file atomically") {
    const auto path = std::filesystem::temp_directory_path() / "modcross_cli_test.csv";
    std::filesystem::remove(path);
    Result r = call({"scan", "--from", "3", "--to", "9", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == call({"scan", "--from", "3", "--to", "9"}).out);
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove(path);
}

TEST_CASE("forms") {
    Result r = call({"forms", "--disc", "5"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "# D=5 h=1 pell_s=3 pell_t=1\nclass,index,a,b,c\n1,0,-1,1,1\n1,1,1,1,-1\n");
    Result j = call({"forms", "--disc", "12", "--format", "json"});
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["h"] == 2);
    CHECK(call({"forms", "--disc", "16"}).code == 1);
    CHECK(call({"forms", "--disc", "7"}).code == 1);
}

TEST_CASE("lfunc") {
    Result r = call({"lfunc", "--disc", "5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("5,class_number_formula,0.430408940964,") != std::string::npos);
    Result bad = call({"lfunc", "--disc", "45"});
    CHECK(bad.code == 1);
    CHECK(bad.err == "modcross: not a fundamental discriminant: 45\n");
    CHECK(call({"lfunc", "--disc", "5", "--cutoff", "3"}).code == 1);
}

TEST_CASE("intersect") {
    Result r = call({"intersect", "--disc1", "5", "--disc2", "12", "--oracle"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "a1,b1,c1,a2,b2,c2,intersection_number,oracle\n-1,1,1,-2,2,1,4,4\n-1,1,1,-1,2,2,4,4\n");
    Result s = call({"intersect", "--disc1", "5", "--disc2", "5"});
    CHECK(s.out == "a1,b1,c1,a2,b2,c2,intersection_number\n-1,1,1,-1,1,1,0\n");
    CHECK(call({"intersect", "--disc1", "5", "--disc2", "9"}).code == 1);
}

TEST_CASE("pgt and family") {
    Result p = call({"pgt", "--x", "7"});
    REQUIRE(p.code == 0);
    CHECK(lines(p.out)[1].rfind("7,1.9248", 0) == 0);
    CHECK(call({"pgt", "--x", "1"}).code == 1);
    Result f = call({"family", "--limit", "7"});
    CHECK(f.out == "N\n3\n5\n");
    CHECK(call({"family", "--limit", "2"}).out == "N\n");
}

TEST_CASE("precision from the environment, flags win") {
    ::setenv("MODCROSS_PRECISION_BITS", "10", 1);
    CHECK(call({"pgt", "--x", "7"}).code == 2);
    CHECK(call({"pgt", "--x", "7", "--precision-bits", "64"}).code == 0);
    ::setenv("MODCROSS_PRECISION_BITS", "256", 1);
    Result r = call({"lfunc", "--disc", "5"});
    CHECK(r.code == 0);
    ::unsetenv("MODCROSS_PRECISION_BITS");
}
