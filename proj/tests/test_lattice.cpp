#include "qtor/cartan_io.hpp"
#include "qtor/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>

using namespace qtor;

TEST_CASE("builtin Cartan matrices") {
    CartanData a2 = cartan_load("A2");
    CHECK(a2.a == std::vector<std::vector<int>>{{2, -1}, {-1, 2}});
    CHECK(a2.labels == std::vector<int>{1, 2});
    CartanData a1 = cartan_load("A1");
    CHECK(a1.a == std::vector<std::vector<int>>{{2}});
    CartanData d4 = cartan_load("D4");
    CHECK(d4.a[1][3] == -1); // fork: node 4 attaches to node 2
    CHECK(d4.a[1][2] == -1);
    CHECK(d4.a[2][3] == 0); // the two short legs are not adjacent
    CHECK(d4.a[0][3] == 0);
    for (const auto* name : {"E6", "E7", "E8"}) {
        CartanData e = cartan_load(name);
        int edges = 0;
        for (size_t i = 0; i < e.rank(); ++i)
            for (size_t j = i + 1; j < e.rank(); ++j)
                if (e.a[i][j] == -1) ++edges;
        CHECK(edges == int(e.rank()) - 1); // a tree
    }
    CHECK_THROWS_AS(cartan_load("B2"), validation_error);
    CHECK_THROWS_AS(cartan_load("D3"), validation_error);
    CHECK_THROWS_AS(cartan_load("E9"), validation_error);
}

TEST_CASE("matrix validation") {
    CHECK_THROWS_AS(cartan_from_matrix({{2, -1}, {0, 2}}), validation_error);
    CHECK_THROWS_AS(cartan_from_matrix({{1}}), validation_error);
    CHECK_THROWS_AS(cartan_from_matrix({{2, 1}, {1, 2}}), validation_error);
    CHECK_THROWS_AS(cartan_from_matrix({}), validation_error);
    // general -k off-diagonals are allowed
    CartanData gk = cartan_from_matrix({{2, -3}, {-3, 2}});
    CHECK(gk.a[0][1] == -3);
}

TEST_CASE("pairing") {
    CartanData a2 = cartan_load("A2");
    LatticeElt a1v = LatticeElt::simple(2, 0), a2v = LatticeElt::simple(2, 1);
    CHECK(pairing(a2, a1v, a1v) == 2);
    CHECK(pairing(a2, a1v, a2v) == -1);
    CHECK(pairing(a2, a1v + a2v, a1v + a2v) == 2);
    for (int t = 0; t < 50; ++t) {
        std::mt19937 rng{unsigned(t)};
        std::uniform_int_distribution<int> coeff(-4, 4);
        LatticeElt x({coeff(rng), coeff(rng)}), y({coeff(rng), coeff(rng)});
        CHECK(pairing(a2, x, y) == pairing(a2, y, x));
    }
    CHECK_THROWS_AS(pairing(a2, LatticeElt({1}), a1v), usage_error);
}

TEST_CASE("highest roots and the affine extension") {
    CHECK(highest_root("A2") == LatticeElt({1, 1}));
    CHECK(highest_root("A1") == LatticeElt({1}));
    CHECK(highest_root("D4") == LatticeElt({1, 2, 1, 1}));
    for (const auto* name : {"A1", "A3", "D4", "D5", "E6", "E7", "E8"}) {
        CartanData c = cartan_load(name);
        LatticeElt theta = highest_root(name);
        CHECK(pairing(c, theta, theta) == 2);
        CartanData aff = affine_extend(c, theta);
        CHECK(aff.rank() == c.rank() + 1);
        CHECK(aff.labels.front() == 0);
        CHECK(aff.a[0][0] == 2);
    }
    // A2 affine: alpha_0 pairs -1 with both nodes
    CartanData aff = affine_extend(cartan_load("A2"), highest_root("A2"));
    CHECK(aff.a[0][1] == -1);
    CHECK(aff.a[0][2] == -1);
    // A1 affine: the -2 entry
    CartanData aff1 = affine_extend(cartan_load("A1"), highest_root("A1"));
    CHECK(aff1.a[0][1] == -2);
}

TEST_CASE("cocycle on simple roots") {
    CartanData a2 = cartan_load("A2");
    LatticeElt a1v = LatticeElt::simple(2, 0), a2v = LatticeElt::simple(2, 1);
    CHECK(cocycle(a2, a1v, a2v) * cocycle(a2, a2v, a1v) == -1);
    CHECK(cocycle(a2, a1v, a1v) == 1);
    CHECK(cocycle(a2, a2v, a2v) == 1);
    // bimultiplicative expansion: eps(a1+a2, a1) = eps(a1,a1) eps(a2,a1) = -1
    CHECK(cocycle(a2, a1v + a2v, a1v) == -1);
}

TEST_CASE("cocycle bimultiplicativity and commutator, random pairs") {
    CartanData a3 = cartan_load("A3");
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-5, 5);
    auto rnd = [&] { return LatticeElt({coeff(rng), coeff(rng), coeff(rng)}); };
    for (int t = 0; t < 1000; ++t) {
        LatticeElt a = rnd(), b = rnd(), g = rnd();
        CHECK(cocycle(a3, a + b, g) == cocycle(a3, a, g) * cocycle(a3, b, g));
        CHECK(cocycle(a3, g, a + b) == cocycle(a3, g, a) * cocycle(a3, g, b));
        int expected = pairing(a3, a, b) % 2 == 0 ? 1 : -1;
        CHECK(cocycle(a3, a, b) * cocycle(a3, b, a) == expected);
    }
}

TEST_CASE("JSON matrix loading") {
    const std::string good = "/tmp/qtor_test_cartan_good.json";
    {
        std::ofstream f(good);
        f << R"({"matrix": [[2,-1],[-1,2]]})";
    }
    CartanData c = cartan_from_json_file(good);
    CHECK(c.a == cartan_load("A2").a);

    const std::string bad = "/tmp/qtor_test_cartan_bad.json";
    {
        std::ofstream f(bad);
        f << R"({"matrix": [[2,-1],[0,2]]})";
    }
    CHECK_THROWS_AS(cartan_from_json_file(bad), validation_error);
    CHECK_THROWS_AS(cartan_from_json_file("/tmp/qtor_no_such_file.json"), validation_error);
    const std::string garbled = "/tmp/qtor_test_cartan_garbled.json";
    {
        std::ofstream f(garbled);
        f << "not json";
    }
    CHECK_THROWS_AS(cartan_from_json_file(garbled), validation_error);
}

TEST_CASE("lattice element rendering") {
    CHECK(LatticeElt({0, 0}).str() == "0");
    CHECK(LatticeElt({1, 0}).str() == "a1");
    CHECK(LatticeElt({1, 1}).str() == "a1+a2");
    CHECK(LatticeElt({-1, 2}).str() == "-a1+2a2");
}
