#include "csr/instances.hpp"

#include "csr/exact.hpp"
#include "doctest.h"

#include <filesystem>
#include <fstream>

using namespace csr;

namespace {

std::filesystem::path temp_file(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / "csr_instance_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("gen_claim1 reproduces the published alignment") {
    LabeledInstance li = gen_claim1(3, 2);
    CHECK(li.instance.sequences() ==
          std::vector<std::string>{"xBBxABA", "yBByAAA", "zBBzAAA"});
    CHECK(li.instance.alphabet().symbols() == "ABxyz");
    CHECK(li.instance.alphabet().size() == li.instance.t() + 2);
    REQUIRE(li.certified.size() == 1);
    CHECK(li.certified[0].length == 2);
    CHECK(li.certified[0].solution.pattern == "BB");
    CHECK(li.certified[0].solution.cost == 0);
    CHECK(li.certified[0].optimal);
    CHECK(recompute_cost(li.certified[0].solution, li.instance) == 0);
    CHECK(li.provenance == "claim1 t=3 l=2");
}

TEST_CASE("gen_claim1 certifies B^l across the family") {
    for (int t = 2; t <= 6; ++t) {
        for (int l = 1; l <= 4; ++l) {
            LabeledInstance li = gen_claim1(t, l);
            CHECK(li.instance.n() == 2 * l + 3);
            CHECK(li.instance.alphabet().size() == t + 2);
            CHECK(evaluate(std::string(static_cast<std::size_t>(l), 'B'), li.instance).cost == 0);
        }
    }
}

TEST_CASE("gen_claim1 small case agrees with the pattern oracle") {
    LabeledInstance li = gen_claim1(2, 1);
    CHECK(li.instance.n() == 5);
    CHECK(evaluate("B", li.instance).cost == 0);
    CHECK(solve_pattern(li.instance, 1).cost == 0);
}

TEST_CASE("gen_claim1 rejects bad parameters") {
    CHECK_THROWS_AS(gen_claim1(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(gen_claim1(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_claim1(27, 1), std::invalid_argument);
}

TEST_CASE("gen_shrink reproduces the published table") {
    LabeledInstance li = gen_shrink(3, 2, 1);
    CHECK(li.instance.sequences() ==
          std::vector<std::string>{"AAABBA", "AAABBA", "BBBBBA"});
    CHECK(solve_alignment(li.instance, 2).cost == 0);
    // By enumeration the 3-length optimum is free as well; "BBA" is the only
    // common 3-substring.
    Solution opt3 = solve_pattern(li.instance, 3);
    CHECK(opt3.cost == 0);
    CHECK(opt3.pattern == "BBA");
}

TEST_CASE("gen_random is deterministic and respects its parameters") {
    LabeledInstance a = gen_random(3, 8, 2, 7);
    LabeledInstance b = gen_random(3, 8, 2, 7);
    CHECK(a.instance.sequences() == b.instance.sequences());
    CHECK(a.provenance == b.provenance);
    LabeledInstance c = gen_random(3, 8, 2, 8);
    CHECK(a.instance.sequences() != c.instance.sequences());
    CHECK(a.instance.t() == 3);
    CHECK(a.instance.n() == 8);
    CHECK(a.instance.alphabet().symbols() == "AB");

    SUBCASE("single sequence solves to zero at any length") {
        LabeledInstance single = gen_random(1, 5, 4, 1);
        for (int L = 1; L <= 5; ++L) {
            CHECK(solve_alignment(single.instance, L).cost == 0);
        }
    }
}

TEST_CASE("gen_planted certifies the planted pattern's cost") {
    SUBCASE("exact planting") {
        LabeledInstance li = gen_planted(3, 10, 4, 0, 11);
        REQUIRE(li.certified.size() == 1);
        CHECK(li.certified[0].solution.cost == 0);
        CHECK(!li.certified[0].optimal);
    }
    SUBCASE("mutation budget bounds the certified cost") {
        LabeledInstance li = gen_planted(3, 10, 4, 1, 5);
        REQUIRE(li.certified.size() == 1);
        CHECK(li.certified[0].length == 4);
        CHECK(li.certified[0].solution.cost <= 3);
        CHECK(recompute_cost(li.certified[0].solution, li.instance) ==
              li.certified[0].solution.cost);
        CHECK(solve_alignment(li.instance, 4).cost <= li.certified[0].solution.cost);
    }
    SUBCASE("deterministic") {
        CHECK(gen_planted(3, 10, 4, 1, 5).instance.sequences() ==
              gen_planted(3, 10, 4, 1, 5).instance.sequences());
    }
}

TEST_CASE("instance files round-trip bytewise") {
    LabeledInstance li = gen_claim1(3, 2);
    const std::string text = format_instance(li.instance);
    CHECK(text == "#csr v1 t=3 n=7 sigma=ABxyz\nxBBxABA\nyBByAAA\nzBBzAAA\n");
    Instance back = parse_instance(text);
    CHECK(back.sequences() == li.instance.sequences());
    CHECK(back.alphabet() == li.instance.alphabet());
    CHECK(format_instance(back) == text);

    auto path = temp_file("roundtrip.csr");
    write_instance(li.instance, path);
    Instance read = read_instance(path);
    CHECK(read.sequences() == li.instance.sequences());
}

TEST_CASE("instance parse errors carry line numbers") {
    SUBCASE("ragged row") {
        try {
            parse_instance("#csr v1 t=2 n=3 sigma=AB\nABA\nAB\n", "bad.csr");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
            CHECK(std::string(e.what()).find("bad.csr:3") != std::string::npos);
        }
    }
    SUBCASE("unknown symbol") {
        try {
            parse_instance("#csr v1 t=1 n=3 sigma=AB\nABC\n", "bad.csr");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("malformed header") {
        CHECK_THROWS_AS(parse_instance("#csr v2 t=1 n=3 sigma=AB\nABA\n"), ParseError);
        CHECK_THROWS_AS(parse_instance("#csr v1 t=x n=3 sigma=AB\nABA\n"), ParseError);
        CHECK_THROWS_AS(parse_instance(""), ParseError);
    }
    SUBCASE("wrong row count") {
        CHECK_THROWS_AS(parse_instance("#csr v1 t=3 n=3 sigma=AB\nABA\n"), ParseError);
    }
}

TEST_CASE("solution documents round-trip and re-verify") {
    LabeledInstance li = gen_claim1(3, 2);
    SolutionDoc doc;
    doc.solution = li.certified[0].solution;
    doc.algorithm = "gen-claim1";
    doc.params = {{"certified", "true"}, {"l", "2"}};
    doc.provenance = li.provenance;

    auto path = temp_file("solution.json");
    write_solution(doc, path);
    SolutionDoc back = read_solution(path, li.instance);
    CHECK(back.solution == doc.solution);
    CHECK(back.algorithm == doc.algorithm);
    CHECK(back.params == doc.params);
    CHECK(back.provenance == doc.provenance);

    SUBCASE("field order is fixed") {
        const std::string text = format_solution(doc);
        CHECK(text.find("\"pattern\"") < text.find("\"cost\""));
        CHECK(text.find("\"cost\"") < text.find("\"occurrences\""));
        CHECK(text.find("\"occurrences\"") < text.find("\"algorithm\""));
        CHECK(text.find("\"algorithm\"") < text.find("\"params\""));
        CHECK(text.find("\"params\"") < text.find("\"provenance\""));
    }

    SUBCASE("stored cost is checked against the instance") {
        SolutionDoc lying = doc;
        lying.solution.cost = 5;
        auto lying_path = temp_file("lying.json");
        write_solution(lying, lying_path);
        CHECK_THROWS_AS(read_solution(lying_path, li.instance), ParseError);
        // without an instance the structural read still succeeds
        CHECK(read_solution(lying_path).solution.cost == 5);
    }

    SUBCASE("garbage is a parse error") {
        auto bad_path = temp_file("bad.json");
        std::ofstream(bad_path) << "{not json";
        CHECK_THROWS_AS(read_solution(bad_path), ParseError);
    }
}
