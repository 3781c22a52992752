#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SCAFFOLD_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& f) { return std::string(SCAFFOLD_DATA) + "/" + f; }

}  // namespace

TEST_CASE("cli: scheme reports") {
    Run r = run("scheme petersen");
    CHECK(r.code == 0);
    CHECK(r.out.find("n = 10, d = 2") != std::string::npos);
    Run j = run("scheme hamming:2,4 --json");
    CHECK(j.code == 0);
    auto js = nlohmann::json::parse(j.out);
    CHECK(js["v"] == nlohmann::json::array({1, 6, 9}));
}

TEST_CASE("cli: non-scheme file exits 2") {
    Run r = run("scheme file:" + data("bad.rel"));
    CHECK(r.code == 2);
    const std::string cmd = std::string(SCAFFOLD_BIN) + " scheme file:" + data("bad.rel") + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::array<char, 512> buf{};
    std::string err;
    while (fgets(buf.data(), buf.size(), p)) err += buf.data();
    pclose(p);
    CHECK(err.find("not-a-scheme: (v)") != std::string::npos);
}

TEST_CASE("cli: eval values") {
    Run tri = run("eval " + data("triangle_a1.dsl") + " --scheme hamming:2,4");
    CHECK(tri.code == 0);
    CHECK(nlohmann::json::parse(tri.out)["scalar"]["re"] == 192);

    Run comp = run("eval " + data("petersen_composite.dsl") + " --scheme petersen --check");
    CHECK(comp.code == 0);
    auto j = nlohmann::json::parse(comp.out);
    CHECK(j["scalar"]["re"].get<double>() == doctest::Approx(-2.0 / 243.0).epsilon(1e-10));
    CHECK(j["check"]["pass"] == true);

    Run big = run("eval " + data("path12.dsl") + " --scheme petersen --method brute");
    CHECK(big.code == 3);
    CHECK(run("eval " + data("path12.dsl") + " --scheme petersen").code == 0);
    CHECK(run("eval /nonexistent.dsl --scheme petersen").code == 2);
}

TEST_CASE("cli: verify exit codes") {
    CHECK(run("verify appendixB --scheme petersen").code == 0);
    Run d = run("verify dickie --scheme hamming:4,2 --j 2");
    CHECK(d.code == 0);
    CHECK(d.out.find("contract a=x") != std::string::npos);
    Run sp = run("verify spinmodel --n 5");
    CHECK(sp.code == 0);
    CHECK(sp.out.find("alpha=1+0i D=2.2360679775") != std::string::npos);
    CHECK(run("verify spinmodel --n 7").code == 1);
    CHECK(run("verify dickie --scheme petersen --j 1").code == 2);
    CHECK(run("verify suzuki --scheme hamming:2,4").code == 2);
    CHECK(run("verify nosuch --scheme petersen").code == 2);
    CHECK(run("verify wspace --scheme petersen --shape triangle").code == 0);
    CHECK(run("verify regularity --scheme shrikhande --mode triply").code == 0);
    CHECK(run("verify duality --scheme hamming:4,2").code == 0);
}

TEST_CASE("cli: usage errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("eval").code == 2);
    CHECK(run("verify appendixB --scheme petersen --tol notanumber").code == 2);
}

TEST_CASE("cli: identical invocations give identical JSON") {
    Run a = run("verify appendixB --scheme petersen --seed 3 --json");
    Run b = run("verify appendixB --scheme petersen --seed 3 --json");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run("scheme johnson:5,2 --json").out == run("scheme johnson:5,2 --json").out);
}

TEST_CASE("cli: dual") {
    Run r = run("dual " + data("series_pair.dsl") + " --embedding " + data("series_pair.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("E1") != std::string::npos);
    CHECK(run("dual " + data("series_pair.dsl") + " --embedding " + data("bad.rel")).code == 2);
}
