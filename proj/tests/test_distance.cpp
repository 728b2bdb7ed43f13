#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "stylo/distance.hpp"
#include "stylo/errors.hpp"
#include "stylo/tokenizer.hpp"

using namespace stylo;

namespace {

std::vector<std::string> stream(const std::string& spaced) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : spaced) {
        if (c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<std::string> random_stream(std::mt19937& rng, int len, int vocab) {
    std::uniform_int_distribution<int> pick(0, vocab - 1);
    std::vector<std::string> out;
    for (int i = 0; i < len; ++i) out.push_back("w" + std::to_string(pick(rng)));
    return out;
}

Document make_doc(const std::string& id, const std::string& group,
                  const std::string& text) {
    Document d;
    d.id = id;
    d.group = group;
    d.tokens = tokenize(text);
    d.sentences = segment_sentences(d.tokens);
    return d;
}

} // namespace

TEST_CASE("identical texts have distance exactly zero") {
    auto a = stream("we the people of the union");
    CHECK(labbe_distance(a, a) == 0.0);
}

TEST_CASE("disjoint equal-length vocabularies have distance exactly one") {
    auto a = stream("alpha beta gamma delta");
    auto b = stream("one two three four");
    CHECK(labbe_distance(a, b) == 1.0);
}

TEST_CASE("hand example") {
    // A = a a b (n=3); B = a b b c c c (n=6); scaled B = {a:0.5, b:1, c:1.5}
    // D = (|2-0.5| + |1-1| + |0-1.5|) / 6 = 0.5
    auto a = stream("a a b");
    auto b = stream("a b b c c c");
    CHECK(labbe_distance(a, b) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("distance is symmetric to 1e-12") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_stream(rng, 200 + trial, 30);
        auto b = random_stream(rng, 350, 30);
        CHECK(std::fabs(labbe_distance(a, b) - labbe_distance(b, a)) < 1e-12);
    }
}

TEST_CASE("self-concatenation leaves the distance unchanged") {
    std::mt19937 rng(103);
    auto a = random_stream(rng, 150, 20);
    auto b = random_stream(rng, 220, 20);
    std::vector<std::string> bb = b;
    bb.insert(bb.end(), b.begin(), b.end());
    CHECK(std::fabs(labbe_distance(a, bb) - labbe_distance(a, b)) < 1e-12);
}

TEST_CASE("distance lies in [0, 1] on random streams") {
    std::mt19937 rng(107);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = random_stream(rng, 50 + trial * 3, 12);
        auto b = random_stream(rng, 80 + trial * 2, 12);
        const double d = labbe_distance(a, b);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
}

TEST_CASE("length-ratio guard refuses extreme pairs") {
    auto a = stream("one two");
    std::vector<std::string> b(40, "one");
    CHECK_THROWS_AS(labbe_distance(a, b, 8.0, true), ValidationError);
    // overridable to a plain computation
    CHECK_NOTHROW(labbe_distance(a, b, 8.0, false));
}

TEST_CASE("empty stream is a validation error") {
    auto a = stream("one two");
    CHECK_THROWS_AS(labbe_distance(a, {}), ValidationError);
    CHECK_THROWS_AS(labbe_distance({}, a), ValidationError);
}

TEST_CASE("term stream lowercases surfaces") {
    Document d = make_doc("d", "G", "We The PEOPLE .");
    auto s = term_stream({&d}, FreqUnit::Surface);
    REQUIRE(s.size() == 4);
    CHECK(s[0] == "we");
    CHECK(s[1] == "the");
    CHECK(s[3] == ".");
}

TEST_CASE("distance matrix over a small corpus") {
    Corpus c({make_doc("d1", "A", "we the people . we stand ."),
              make_doc("d2", "B", "we the nation . we build ."),
              make_doc("d3", "C", "entirely different words here now then .")});
    DistanceMatrix m = distance_matrix(c, "group");
    REQUIRE(m.size() == 3);
    CHECK(m.labels == std::vector<std::string>{"A", "B", "C"});
    CHECK_NOTHROW(m.validate());
    CHECK(m.d[0][0] == 0.0);
    CHECK(m.d[0][1] == doctest::Approx(m.d[1][0]));
    CHECK(m.d[0][1] < m.d[0][2]); // A is closer to B than to C
}

TEST_CASE("ratio violation inside a matrix names the offending pair") {
    std::string longtext;
    for (int i = 0; i < 60; ++i) longtext += "many words fill this text . ";
    Corpus c({make_doc("d1", "Tiny", "two words"),
              make_doc("d2", "Huge", longtext)});
    try {
        distance_matrix(c, "group");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("Tiny") != std::string::npos);
        CHECK(msg.find("Huge") != std::string::npos);
    }
}

TEST_CASE("matrix TSV round-trip") {
    DistanceMatrix m;
    m.labels = {"A", "B", "C"};
    m.d = {{0.0, 0.25, 0.5}, {0.25, 0.0, 0.75}, {0.5, 0.75, 0.0}};
    const std::string tsv = matrix_to_tsv(m);
    const auto path =
        std::filesystem::temp_directory_path() / "stylo_matrix_rt.tsv";
    std::ofstream(path) << tsv;
    DistanceMatrix back = read_matrix_tsv(path.string());
    std::filesystem::remove(path);
    REQUIRE(back.labels == m.labels);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(back.d[i][j] == doctest::Approx(m.d[i][j]).epsilon(1e-9));
}

TEST_CASE("matrix validation catches shape violations") {
    DistanceMatrix bad;
    bad.labels = {"A", "B"};
    bad.d = {{0.0, -0.5}, {-0.5, 0.0}}; // negative entry
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    DistanceMatrix asym;
    asym.labels = {"A", "B"};
    asym.d = {{0.0, 0.2}, {0.3, 0.0}};
    CHECK_THROWS_AS(asym.validate(), ValidationError);
    DistanceMatrix diag;
    diag.labels = {"A", "B"};
    diag.d = {{0.1, 0.2}, {0.2, 0.0}};
    CHECK_THROWS_AS(diag.validate(), ValidationError);
}
