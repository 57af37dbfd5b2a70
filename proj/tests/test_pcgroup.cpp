#include <doctest.h>

#include <array>
#include <fstream>
#include <sstream>

#include "pgrp/error.hpp"
#include "pgrp/generators.hpp"
#include "pgrp/pcgroup.hpp"
#include "support.hpp"

using namespace pgrp;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <class Fn>
ParseError capture_parse_error(Fn&& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no ParseError thrown");
    return ParseError(0, 0, "");
}

using Mat3 = std::array<std::array<long long, 3>, 3>;

Mat3 mat_mul(const Mat3& a, const Mat3& b, long long p) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            long long s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            r[i][j] = ((s % p) + p) % p;
        }
    return r;
}

Mat3 mat_pow(const Mat3& a, unsigned e, long long p) {
    Mat3 r{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (unsigned i = 0; i < e; ++i) r = mat_mul(r, a, p);
    return r;
}

}  // namespace

TEST_CASE("parser accepts the documented format") {
    const PcPresentation pres = parse_presentation(
        "pcgroup v1\n# comment\np 3\nngens 3\n\nconj 2 1 : 3^2   # trailing comment\npow 1 : 3\n");
    CHECK(pres.prime() == 3);
    CHECK(pres.ngens() == 3);
    CHECK(pres.conjugate(1, 0) == Word{{2, 2}});
    CHECK(pres.power(0) == Word{{2, 1}});
    CHECK(pres.power(1).empty());
    // Exponents are reduced mod p and zero factors dropped.
    const PcPresentation red = parse_presentation("pcgroup v1\np 3\nngens 3\nconj 2 1 : 3^5\npow 1 : 3^3\n");
    CHECK(red.conjugate(1, 0) == Word{{2, 2}});
    CHECK(red.power(0).empty());
}

TEST_CASE("syntax errors carry line and column") {
    auto e1 = capture_parse_error([] { parse_presentation("pcgroup v1\np 3\nngens 2\nconj 2 1 3\n"); });
    CHECK(e1.line() == 4);
    auto e2 = capture_parse_error([] { parse_presentation("pcgroup v1\np 3\nngens 3\nconj 2 1 : 3^x\n"); });
    CHECK(e2.line() == 4);
    CHECK(e2.column() == 14);
    auto e3 = capture_parse_error([] { parse_presentation("pcgroup v1\np 4\nngens 2\n"); });
    CHECK(e3.line() == 2);
    CHECK(e3.column() == 3);
    auto e4 = capture_parse_error([] { parse_presentation("pcgroup v2\np 3\nngens 2\n"); });
    CHECK(e4.line() == 1);
    auto e5 = capture_parse_error([] { parse_presentation("pcgroup v1\np 3\nngens 2\n  frob 1 : 2\n"); });
    CHECK(e5.line() == 4);
    CHECK(e5.column() == 3);
    auto e6 = capture_parse_error([] { parse_presentation("pcgroup v1\np 3\n"); });
    CHECK(std::string(e6.what()).find("ngens") != std::string::npos);
    CHECK(std::string(e2.what()).find("line 4, column 14") == 0);
}

TEST_CASE("structural violations are invariant errors") {
    CHECK_THROWS_AS(parse_presentation("pcgroup v1\np 3\nngens 3\nconj 2 1 : 3\nconj 2 1 : 3^2\n"),
                    DuplicateRelationError);
    CHECK_THROWS_AS(parse_presentation("pcgroup v1\np 3\nngens 3\npow 1 : 2\npow 1 : 3\n"), DuplicateRelationError);
    // Tails must be strictly deeper than the relation.
    CHECK_THROWS_AS(parse_presentation("pcgroup v1\np 3\nngens 3\nconj 2 1 : 2\n"), InvariantError);
    CHECK_THROWS_AS(parse_presentation("pcgroup v1\np 3\nngens 3\npow 2 : 1\n"), InvariantError);
    CHECK_THROWS_AS(parse_presentation("pcgroup v1\np 3\nngens 3\nconj 1 2 : 3\n"), InvariantError);
    CHECK_THROWS_AS(parse_presentation("pcgroup v1\np 3\nngens 3\nconj 3 1 : 4\n"), InvariantError);
    CHECK_THROWS_AS(parse_presentation("pcgroup v1\np 3\nngens 4\nconj 2 1 : 4 3\n"), InvariantError);
    CHECK_THROWS_AS(parse_presentation("pcgroup v1\np 3\nngens 2\npow 5 : 2\n"), InvariantError);
    PcPresentation pres(3, 3);
    CHECK_THROWS_AS(pres.set_power(1, Word{{1, 1}}), InvariantError);
    CHECK_THROWS_AS(pres.set_conjugate(2, 1, Word{{2, 1}}), InvariantError);
    CHECK_THROWS_AS(pres.set_conjugate(2, 0, Word{{3, 1}}), InvariantError);
    CHECK_THROWS_AS(pres.set_conjugate(1, 0, Word{{2, 3}}), InvariantError);
}

TEST_CASE("serialize round-trips") {
    for (const auto& pres : {heisenberg(3, 2), heisenberg(5, 1), extraspecial_p3(7), load_presentation(testing::data_path("group1.pc")),
                             load_presentation(testing::data_path("group2.pc"))}) {
        const std::string text = serialize(pres);
        CHECK(parse_presentation(text) == pres);
        CHECK(serialize(parse_presentation(text)) == text);
    }
}

TEST_CASE("fixtures are consistent with the expected orders") {
    const PcGroup G1(load_presentation(testing::data_path("group1.pc")));
    const PcGroup G2(load_presentation(testing::data_path("group2.pc")));
    CHECK(G1.prime() == 3);
    CHECK(G1.ngens() == 13);
    CHECK(G2.ngens() == 14);
    CHECK(check_consistency(G1).consistent);
    CHECK(check_consistency(G2).consistent);
}

TEST_CASE("a corrupted fixture is reported inconsistent") {
    // x_1^3 = x_2 together with [x_2, x_1] = x_13^2 forces x_13 trivial.
    const std::string text = read_file(testing::data_path("group1.pc")) + "pow 1 : 2\n";
    const PcGroup G(parse_presentation(text));
    const auto r = check_consistency(G);
    CHECK_FALSE(r.consistent);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->lhs != r.witness->rhs);
}

TEST_CASE("collector matches unitriangular matrices") {
    for (std::uint32_t p : {3u, 5u}) {
        const PcGroup G(extraspecial_p3(p));
        REQUIRE(check_consistency(G).consistent);
        const long long P = p;
        const Mat3 X{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
        const Mat3 Y{{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}};
        const Mat3 Xi = mat_pow(X, p - 1, P), Yi = mat_pow(Y, p - 1, P);
        const Mat3 Z = mat_mul(mat_mul(Xi, Yi, P), mat_mul(X, Y, P), P);  // [X, Y]
        auto image = [&](const Element& g) {
            return mat_mul(mat_mul(mat_pow(X, g[0], P), mat_pow(Y, g[1], P), P), mat_pow(Z, g[2], P), P);
        };
        CHECK(G.commutator(G.generator(0), G.generator(1)) == G.generator(2));
        std::vector<Element> all;
        for (unsigned a = 0; a < p; ++a)
            for (unsigned b = 0; b < p; ++b)
                for (unsigned c = 0; c < p; ++c) {
                    Element e;
                    e[0] = static_cast<Exponent>(a);
                    e[1] = static_cast<Exponent>(b);
                    e[2] = static_cast<Exponent>(c);
                    all.push_back(e);
                }
        for (const auto& g : all)
            for (const auto& h : all) REQUIRE(image(G.multiply(g, h)) == mat_mul(image(g), image(h), P));
    }
}

TEST_CASE("group axioms on the fixtures") {
    std::mt19937_64 rng(3);
    for (const char* name : {"group1.pc", "group2.pc"}) {
        const PcGroup G(load_presentation(testing::data_path(name)));
        for (int t = 0; t < 2000; ++t) {
            const Element a = testing::random_element(G, rng), b = testing::random_element(G, rng),
                          c = testing::random_element(G, rng);
            REQUIRE(G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c)));
            REQUIRE(G.multiply(a, G.inverse(a)).is_identity());
            REQUIRE(G.conjugate(a, b) == G.multiply(G.inverse(b), G.multiply(a, b)));
            REQUIRE(G.commutator(a, b) == G.multiply(G.inverse(a), G.conjugate(a, b)));
        }
        // A 3-group of class 3 has exponent dividing 9.
        for (int t = 0; t < 200; ++t) CHECK(G.power(testing::random_element(G, rng), 9).is_identity());
        const Element a = testing::random_element(G, rng);
        CHECK(G.power(a, -1) == G.inverse(a));
        CHECK(G.power(a, 5) == G.multiply(G.power(a, 2), G.power(a, 3)));
    }
}

TEST_CASE("element formatting and construction") {
    const PcGroup G(extraspecial_p3(3));
    CHECK(G.format(G.identity()) == "1");
    const Exponent e[] = {1, 0, 2};
    const Element g = G.from_exponents(e);
    CHECK(g[0] == 1);
    CHECK(g[2] == 2);
    CHECK(G.word_element(Word{{0, 1}, {2, 2}}) == g);
    CHECK(g.leading_index() == 0);
    CHECK(G.identity().leading_index() == kMaxGens);
}
