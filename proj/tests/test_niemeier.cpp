#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <map>
#include <thread>

#include <json.hpp>
#include <leechkit/niemeier.hpp>

using namespace leechkit;

namespace {

size_t root_count(const Lattice& l) { return vectors_of_norm(l, Int(2)).size(); }

long worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<long>(hw) : 4;
}

}  // namespace

TEST_CASE("embedded table agrees with the shipped data file") {
    std::ifstream in(std::string(LEECHKIT_DATA_DIR) + "/niemeier_table.json");
    REQUIRE(in.good());
    nlohmann::json doc = nlohmann::json::parse(in);
    REQUIRE(doc.at("version") == 1);
    const auto& rows = doc.at("rows");
    const auto& table = niemeier_table();
    REQUIRE(rows.size() == table.size());
    for (size_t i = 0; i < table.size(); ++i) {
        INFO(table[i].name);
        const auto& r = rows[i];
        CHECK(r.at("name") == table[i].name);
        CHECK(r.at("group") == table[i].group);
        CHECK(r.at("coxeter") == table[i].coxeter);
        CHECK(r.at("glue").get<std::vector<std::string>>() == table[i].glue);
        std::vector<std::pair<char, long>> dyn;
        for (const auto& c : r.at("dynkin"))
            dyn.emplace_back(c.at(0).get<std::string>().at(0), c.at(1).get<long>());
        CHECK(dyn == table[i].dynkin);
    }
}

TEST_CASE("bracketed glue words expand to digit words") {
    using Words = std::vector<std::vector<long>>;
    CHECK(glue_expand_word("[5]") == Words{{5}});
    CHECK(glue_expand_word("[240]") == Words{{2, 4, 0}});
    CHECK(glue_expand_word("[(122)]") == Words{{1, 2, 2}, {2, 2, 1}, {2, 1, 2}});
    CHECK(glue_expand_word("[1(012)]") == Words{{1, 0, 1, 2}, {1, 1, 2, 0}, {1, 2, 0, 1}});
    Words even = glue_expand_word("[even perm. of {0,1,2,3}]");
    REQUIRE(even.size() == 12);
    CHECK(even.front() == std::vector<long>{0, 1, 2, 3});
    for (const auto& w : even) {
        long inv = 0;
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j)
                if (w[i] > w[j]) ++inv;
        CHECK(inv % 2 == 0);
    }
    CHECK_THROWS(glue_expand_word("123"));
    CHECK_THROWS(glue_expand_word("[1x]"));
}

TEST_CASE("glue generators are validated against digit ranges") {
    NiemeierRow bad{"bad", {{'A', 2}}, "", 0, {"[3]"}};
    CHECK_THROWS(glue_generators(bad));
    NiemeierRow mismatch{"bad", {{'A', 2}, {'A', 2}}, "", 0, {"[1]"}};
    CHECK_THROWS(glue_generators(mismatch));
}

TEST_CASE("glue groups close to the square root of the discriminant product") {
    std::map<std::string, size_t> orders = {{"N1", 2},   {"N4", 5},   {"N5", 4},
                                            {"N9", 8},   {"N10", 13}, {"N13", 20},
                                            {"N14", 16}, {"N15", 27}, {"N19", 64},
                                            {"N22", 729}, {"N23", 4096}};
    for (const auto& [name, ord] : orders) {
        INFO(name);
        auto code = glue_closure(niemeier_row(name));
        CHECK(code.size() == ord);
        CHECK(code.front() == std::vector<long>(code.front().size(), 0));
    }
    // a code of the wrong order must be refused
    NiemeierRow bad{"bad", {{'A', 2}, {'A', 2}}, "", 0, {"[10]", "[01]"}};
    CHECK_THROWS(glue_closure(bad));
}

TEST_CASE("every row builds an even unimodular lattice of signature (0,24)") {
    for (const NiemeierRow& row : niemeier_table()) {
        INFO(row.name);
        Lattice l = build_niemeier(row);
        CHECK(l.rank() == 24);
        CHECK(l.det() == 1);
        CHECK(l.is_even());
        SignCounts s = l.signature();
        CHECK(s.pos == 0);
        CHECK(s.neg == 24);
        CHECK(root_count(l) == static_cast<size_t>(24 * row.coxeter));
    }
}

TEST_CASE("isotropic quotients of the Lorentzian lattice") {
    Lattice pi = lorentzian_even_26();

    Lattice lam = leech_lattice();
    CHECK(lam.rank() == 24);
    CHECK(lam.det() == 1);
    CHECK(lam.is_even());
    CHECK(vectors_up_to(lam, Int(3)).empty());

    // a different null vector leaves a full A_8^3 root system behind
    Lattice hole = quotient_by_isotropic(pi, a8_hole_null_vector(), "A8-hole");
    CHECK(hole.rank() == 24);
    CHECK(hole.det() == 1);
    CHECK(hole.is_even());
    CHECK(root_count(hole) == 216);

    IntMat notin(26, 1);
    notin(0, 0) = 1;
    CHECK_THROWS(quotient_by_isotropic(pi, notin));
    IntMat anisotropic(26, 1);
    anisotropic(0, 0) = 2;
    CHECK_THROWS(quotient_by_isotropic(pi, anisotropic));
    IntMat imprimitive = triangular_null_vector();
    for (long i = 0; i < 26; ++i) imprimitive(i, 0) *= 2;
    CHECK_THROWS(quotient_by_isotropic(pi, imprimitive));
}

TEST_CASE("re-glued A_1^24 frame reproduces its row lattice") {
    HolyFrame fr = holy_frame(niemeier_row("N23"));
    REQUIRE(fr.code.size() == 4096);
    CHECK(same_sublattice(holy_niemeier(fr), build_niemeier("N23")));
}

TEST_CASE("frame re-gluing gives the rootless lattice for either hole") {
    long threads = worker_count();
    for (const char* name : {"N22", "N23"}) {
        INFO(name);
        HolyFrame fr = holy_frame(niemeier_row(name));
        Lattice hl = holy_leech(fr);
        CHECK(hl.rank() == 24);
        CHECK(hl.det() == 1);
        CHECK(hl.is_even());
        CHECK(vectors_up_to(hl, Int(3)).empty());
        CHECK(theta_shells(hl, Int(4), threads)[4] == 196560);
    }
}

TEST_CASE("row lattice and rootless lattice share the frame") {
    HolyFrame fr = holy_frame(niemeier_row("N23"));
    Lattice hn = holy_niemeier(fr);
    Lattice hl = holy_leech(fr);
    REQUIRE(hn.ambient.has_value());
    REQUIRE(hl.ambient.has_value());
    CHECK(hn.ambient->gram == hl.ambient->gram);
    Lattice both = ambient_intersection(hn, hl);
    REQUIRE(both.rank() == 24);
    Int in_row = index_in(hn, both);
    Int in_rootless = index_in(hl, both);
    CHECK(in_row == in_rootless);  // both overlattices are unimodular
    CHECK(in_row == 2);
}

TEST_CASE("frames demand a full A_n^m root system") {
    CHECK_THROWS(holy_frame(niemeier_row("N1")));
    CHECK_THROWS(holy_frame(niemeier_row("N13")));
    CHECK_THROWS(holy_frame(niemeier_row("Lambda")));
}
