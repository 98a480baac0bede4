#include "cantorqc/emit.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

using namespace cantorqc;

TEST_CASE("g17 formatting round trips doubles") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        double v = u(rng);
        CHECK(std::stod(format_g17(v)) == v);
    }
    CHECK(std::stod(format_g17(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("levels csv shape and determinism") {
    auto levels = CantorLevels::build(GapSequence::constant(1.0 / 3), 3);
    std::string a = csv_levels(levels), b = csv_levels(levels);
    CHECK(a == b);
    std::istringstream in(a);
    std::string line;
    std::getline(in, line);
    CHECK(line == "kind,level,index,left,length,log_length");
    int intervals = 0, gaps = 0;
    while (std::getline(in, line)) {
        if (line.rfind("interval,", 0) == 0) ++intervals;
        if (line.rfind("gap,", 0) == 0) ++gaps;
    }
    CHECK(intervals == 1 + 2 + 4 + 8);
    CHECK(gaps == 1 + 3 + 7);
}

TEST_CASE("svg outputs start with the version comment") {
    auto levels = CantorLevels::build(GapSequence::constant(1.0 / 3), 3);
    auto pants = PantsDecomposition::build(levels, 1.0 / 3);
    for (const std::string& svg :
         {svg_levels(levels), svg_pants(levels, pants)}) {
        CHECK(svg.rfind("<!--", 0) == 0);
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
    }
    CHECK(svg_levels(levels) == svg_levels(levels));
}

TEST_CASE("write_text_file round trip") {
    std::string path = "emit_test_tmp.txt";
    write_text_file(path, "alpha\nbeta\n");
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "alpha\nbeta\n");
    std::remove(path.c_str());
    CHECK_THROWS(write_text_file("no_such_dir_xyz/file.txt", "x"));
}

TEST_CASE("ledger and census csv headers") {
    auto ledger = build_ledger(GapSequence::constant(0.5),
                               GapSequence::constant(1.0 / 3), 1.0 / 3, 2, 50);
    auto csv = csv_ledger(ledger);
    CHECK(csv.rfind("level,q,q_tilde,", 0) == 0);

    ExhaustionCensus census;
    census.levels.push_back({0, 1, 1, {3}, true});
    auto ccsv = csv_census(census);
    CHECK(ccsv ==
          "k,sublevel_components,shell_components,boundary_curves_list\n"
          "0,1,1,3\n");
}
