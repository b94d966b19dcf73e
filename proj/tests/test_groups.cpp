#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sumsetlab/group.hpp"

using namespace sumsetlab;

TEST_CASE("cyclic groups") {
    GroupTable g = buildGroup("zn:6");
    CHECK(g.order() == 6);
    CHECK(g.identity() == 0);
    CHECK(g.isAbelian());
    for (int a = 0; a < 6; ++a)
        CHECK(g.inv(a) == (6 - a) % 6);
    CHECK(g.exponent() == 6);
}

TEST_CASE("dihedral groups") {
    GroupTable g = buildGroup("dihedral:4");
    CHECK(g.order() == 8);
    CHECK(!g.isAbelian());
    CHECK(g.exponent() == 4);
}

TEST_CASE("permutation groups") {
    CHECK(buildGroup("sym:3").order() == 6);
    CHECK(buildGroup("sym:5").order() == 120);
    CHECK(buildGroup("alt:4").order() == 12);
    CHECK(buildGroup("alt:5").order() == 60);
    CHECK(!buildGroup("alt:5").isAbelian());
    CHECK_THROWS_AS(buildGroup("sym:9"), Error);
}

TEST_CASE("psl2 orders follow q(q^2-1)/gcd(2,q-1)") {
    auto expect = [](int q) {
        std::int64_t v = static_cast<std::int64_t>(q) * (static_cast<std::int64_t>(q) * q - 1);
        return static_cast<int>(q % 2 == 0 ? v : v / 2);
    };
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
        GroupTable g = buildGroup("psl2:" + std::to_string(q));
        CHECK(g.order() == expect(q));
        CHECK(g.identity() == 0);
    }
    CHECK_THROWS_AS(buildGroup("psl2:6"), Error);
    CHECK_THROWS_AS(buildGroup("psl2:17"), Error);
}

TEST_CASE("orders beyond 512 validate through the sampled associativity path") {
    GroupTable g = buildGroup("zn:600");
    CHECK(g.order() == 600);
    CHECK(g.mul(599, 2) == 1);
}

TEST_CASE("conjugacy classes") {
    GroupTable zn = buildGroup("zn:5");
    ConjugacyData c1(zn);
    CHECK(c1.classCount() == 5);
    for (int i = 0; i < 5; ++i) CHECK(c1.classSize(i) == 1);

    GroupTable s3 = buildGroup("sym:3");
    ConjugacyData c2(s3);
    std::vector<std::int64_t> sizes = c2.classSizes();
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::int64_t>{1, 2, 3});

    GroupTable a5 = buildGroup("alt:5");
    ConjugacyData c3(a5);
    sizes = c3.classSizes();
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::int64_t>{1, 12, 12, 15, 20});
    CHECK(c3.classOf(a5.identity()) == 0);
    CHECK(c3.classSize(c3.classOf(a5.identity())) == 1);
}

TEST_CASE("conjugation permutes every class setwise") {
    for (const char* spec : {"sym:4", "dihedral:5"}) {
        GroupTable g = buildGroup(spec);
        ConjugacyData c(g);
        for (int gv = 0; gv < g.order(); ++gv)
            for (int x = 0; x < g.order(); ++x)
                CHECK(c.classOf(g.conj(gv, x)) == c.classOf(x));
    }
}

TEST_CASE("class constants satisfy the counting identity") {
    for (const char* spec : {"sym:3", "sym:4", "alt:5", "dihedral:6"}) {
        GroupTable g = buildGroup(spec);
        ConjugacyData c(g);
        const int r = c.classCount();
        for (int i = 0; i < r; ++i) {
            auto m = c.classConstantMatrix(i); // m[k*r + j] = a_ijk
            for (int j = 0; j < r; ++j) {
                std::int64_t total = 0;
                for (int k = 0; k < r; ++k) {
                    std::int64_t a = m[static_cast<std::size_t>(k) * r + j];
                    CHECK(a >= 0);
                    total += a * c.classSize(k);
                }
                CHECK(total == c.classSize(i) * c.classSize(j));
            }
        }
    }
}

TEST_CASE("cayley csv round trip is bit-exact") {
    for (const char* spec : {"zn:6", "dihedral:3", "sym:3", "psl2:7"}) {
        GroupTable g = buildGroup(spec);
        std::ostringstream first;
        writeCayleyCsv(g, first);
        std::istringstream in(first.str());
        GroupTable back = readCayleyCsv(in, "roundtrip");
        CHECK(back.order() == g.order());
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                CHECK(back.mul(a, b) == g.mul(a, b));
        std::ostringstream second;
        writeCayleyCsv(back, second);
        CHECK(first.str() == second.str());
    }
}

TEST_CASE("cayley csv via buildGroup and error paths") {
    {
        GroupTable g = buildGroup("zn:4");
        std::ofstream f("cayley_test.csv");
        writeCayleyCsv(g, f);
    }
    GroupTable g = buildGroup("cayley:cayley_test.csv");
    CHECK(g.order() == 4);

    std::istringstream badCell("order,2\n0,x\n1,0\n");
    CHECK_THROWS_WITH_AS(readCayleyCsv(badCell, "bad"), doctest::Contains("bad:2"), Error);

    std::istringstream notLatin("order,2\n0,0\n1,0\n");
    CHECK_THROWS_AS(readCayleyCsv(notLatin, "bad"), Error);

    // Valid table for Z2 but with identity at index 1.
    std::istringstream shifted("order,2\n1,0\n0,1\n");
    CHECK_THROWS_WITH_AS(readCayleyCsv(shifted, "bad"), doctest::Contains("identity"), Error);

    std::istringstream notAssoc("order,5\n0,1,2,3,4\n1,0,3,4,2\n2,4,0,1,3\n3,2,4,0,1\n4,3,1,2,0\n");
    CHECK_THROWS_AS(readCayleyCsv(notAssoc, "bad"), Error);
}

TEST_CASE("subgroup closure and derived subgroup") {
    GroupTable z12 = buildGroup("zn:12");
    CHECK(z12.subgroupClosure({2}) == std::vector<int>{0, 2, 4, 6, 8, 10});
    CHECK(z12.derivedSubgroup() == std::vector<int>{0});

    GroupTable s3 = buildGroup("sym:3");
    CHECK(s3.derivedSubgroup().size() == 3);

    GroupTable a5 = buildGroup("alt:5");
    CHECK(a5.derivedSubgroup().size() == 60); // perfect
}

TEST_CASE("unknown specs") {
    CHECK_THROWS_AS(buildGroup("nope:3"), Error);
    CHECK_THROWS_AS(buildGroup("zn:x"), Error);
    CHECK_THROWS_AS(buildGroup("zn"), Error);
}
