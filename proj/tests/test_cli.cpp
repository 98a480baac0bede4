#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CANTOR_QC_BIN) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
        res.out.append(buf.data(), n);
    int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

} // namespace

TEST_CASE("metric subcommand prints the exact distance") {
    auto r = run("metric const:1/3 const:1/2");
    CHECK(r.status == 0);
    CHECK(r.out.find("0.287682072451780") != std::string::npos);
    CHECK(r.out.find("exact") != std::string::npos);
}

TEST_CASE("build emits four level-2 intervals of length 1/9") {
    auto r = run("build const:1/3 --depth 2");
    CHECK(r.status == 0);
    int count = 0;
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("interval,2,", 0) == 0) {
            ++count;
            CHECK(line.find("0.1111111111111111") != std::string::npos);
        }
    CHECK(count == 4);
}

TEST_CASE("exit codes: usage errors return 2") {
    CHECK(run("frobnicate").status == 2);
    CHECK(run("build not-a-spec:zz").status == 2);
    CHECK(run("build const:1/3 --depth 99").status == 2);
}

TEST_CASE("map-check reports measured vs budget and exits 0") {
    auto r = run("map-check const:1/3 const:1/2 --delta 1/3 --depth 3 "
                 "--grid 32");
    CHECK(r.status == 0);
    CHECK(r.out.find("measured_max_K") != std::string::npos);
    CHECK(r.out.find("budget") != std::string::npos);
}

TEST_CASE("outputs are byte identical across runs") {
    auto a = run("build rand:0.2:0.8:77 --depth 6");
    auto b = run("build rand:0.2:0.8:77 --depth 6");
    CHECK(a.out == b.out);
    auto sa = run("pants const:1/3 --depth 4 --format svg");
    auto sb = run("pants const:1/3 --depth 4 --format svg");
    CHECK(sa.out == sb.out);
}

TEST_CASE("config file feeds options and flags win") {
    {
        std::ofstream cfg("cli_test_cfg.ini");
        cfg << "# test config\n";
        cfg << "[build]\n";
        cfg << "depth = 3\n";
    }
    auto from_cfg = run("build const:1/2 --config cli_test_cfg.ini");
    CHECK(from_cfg.status == 0);
    CHECK(from_cfg.out.find("interval,3,") != std::string::npos);
    CHECK(from_cfg.out.find("interval,4,") == std::string::npos);
    auto overridden =
        run("build const:1/2 --config cli_test_cfg.ini --depth 4");
    CHECK(overridden.out.find("interval,4,") != std::string::npos);
    std::remove("cli_test_cfg.ini");
}

TEST_CASE("plan subcommand") {
    auto r = run("plan --l 6 --L 2 --L 2");
    CHECK(r.status == 0);
    CHECK(r.out.find("N0 2 l0 1") != std::string::npos);
}

TEST_CASE("out flag writes the same bytes as stdout") {
    auto direct = run("bound const:1/2 const:1/3 --delta 1/3 --depth 3");
    auto filed =
        run("bound const:1/2 const:1/3 --delta 1/3 --depth 3 "
            "--out cli_test_out.csv && cat cli_test_out.csv");
    CHECK(direct.out == filed.out);
    std::remove("cli_test_out.csv");
}
