#include <catch2/catch_amalgamated.hpp>

#include <k3lat/cli.hpp>

#include <cstdio>
#include <fstream>

using namespace k3lat;

TEST_CASE("pn subcommand json") {
    auto r = run({"pn", "--n", "7", "--json"});
    CHECK(r.exit_code == 0);
    CHECK(r.text == "{\"count\":2,\"entries\":[[1,-6],[2,-3]],\"n\":7}\n");
}

TEST_CASE("windex subcommand") {
    auto r6 = run({"windex", "--n", "6"});
    CHECK(r6.exit_code == 0);
    CHECK(r6.text == "1\n");
    auto r7 = run({"windex", "--n", "7", "--json"});
    CHECK(r7.exit_code == 0);
    CHECK(nlohmann::json::parse(r7.text)["index"] == 2);
}

TEST_CASE("residual subcommand") {
    auto r = run({"residual", "--n", "7", "--json"});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.text);
    CHECK(j["residual_units"] == nlohmann::json::array({1, 5, 7, 11}));
}

TEST_CASE("count-nonbirational subcommand") {
    auto r = run({"count-nonbirational", "--n", "211", "--json"});
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.text)["count"] == 8);
}

TEST_CASE("example7 subcommand passes") {
    auto r = run({"example7"});
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("[FAIL]") == std::string::npos);
    CHECK(r.text.find("[PASS]") != std::string::npos);
}

TEST_CASE("chern subcommand") {
    auto r = run({"chern", "--to-character", "2"});
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("ch2") != std::string::npos);
}

TEST_CASE("verify subcommand") {
    CHECK(run({"verify", "--lemma", "sigma-linear", "--i", "4"}).exit_code == 0);
    CHECK(run({"verify", "--lemma", "twist", "--i", "5"}).exit_code == 0);
    CHECK(run({"verify", "--lemma", "nonsense", "--i", "4"}).exit_code == 2);
}

TEST_CASE("ext-order subcommand") {
    auto r = run({"ext-order", "--n", "3", "--i", "2", "--json"});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.text);
    CHECK(j["order"] == 4);
    CHECK(j["method"] == "formula");
}

TEST_CASE("mukai-middle subcommand") {
    auto r = run({"mukai-middle", "--n", "2", "--gens", "16", "--seed", "1", "--json"});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.text);
    CHECK(j["order"] == 2);
    CHECK(j["stabilized"] == true);
}

TEST_CASE("in-w subcommand") {
    // Reflection in delta on Hilb(2): in W.
    std::string path = "cli_test_matrix.txt";
    {
        auto h2 = make_hilbert(2);
        IntVec delta(23);
        delta[22] = 1;
        auto m = reflection(make_vec(h2, delta)).matrix;
        std::ofstream f(path);
        f << "23 23\n";
        for (std::size_t i = 0; i < 23; ++i) {
            for (std::size_t j = 0; j < 23; ++j) f << m(i, j) << " ";
            f << "\n";
        }
    }
    auto r = run({"in-w", "--lattice", "hilb:2", "--matrix", path, "--json"});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.text);
    CHECK(j["in_w"] == true);
    std::remove(path.c_str());

    auto missing = run({"in-w", "--lattice", "hilb:2", "--matrix", "no_such_file.txt"});
    CHECK(missing.exit_code == 1);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"frobnicate"}).exit_code == 2);
    CHECK(run({}).exit_code == 2);
    CHECK(run({"pn"}).exit_code == 2);  // missing --n
}

TEST_CASE("json output is stable across runs") {
    auto a = run({"pn", "--n", "31", "--json"});
    auto b = run({"pn", "--n", "31", "--json"});
    CHECK(a.text == b.text);
    auto m1 = run({"mukai-middle", "--n", "2", "--seed", "5", "--json"});
    auto m2 = run({"mukai-middle", "--n", "2", "--seed", "5", "--json"});
    CHECK(m1.text == m2.text);
}

TEST_CASE("mukai vector shorthand and json round trip") {
    auto v = parse_mukai_shorthand("(2,0,-3)");
    CHECK(v.r == 2);
    CHECK(v.s == -3);
    CHECK(v.c.is_zero());
    auto j = mukai_vector_to_json(v);
    auto w = mukai_vector_from_json(j);
    CHECK(mukai_pairing(v, w) == 12);
    CHECK_THROWS_AS(parse_mukai_shorthand("(2,1,-3)"), std::invalid_argument);
}

TEST_CASE("lattice json round trip") {
    auto h = make_hilbert(4);
    auto j = lattice_to_json(*h);
    CHECK(j["rank"] == 23);
    auto back = lattice_from_json(j);
    CHECK(back->gram == h->gram);
    CHECK(back->label == h->label);

    auto d = discriminant_group(*h);
    auto dj = disc_group_to_json(d);
    CHECK(dj["orders"] == nlohmann::json::array({6}));
    CHECK(dj["q"][0] == rat_to_string(d.q_values[0]));
}
