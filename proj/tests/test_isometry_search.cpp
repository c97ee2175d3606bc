#include <catch2/catch_amalgamated.hpp>
#include <leechkit/catalog.hpp>
#include <leechkit/group_action.hpp>
#include <leechkit/isometry_search.hpp>
#include <leechkit/niemeier.hpp>

using namespace leechkit;

namespace {

void check_witness(const Lattice& a, const Lattice& b, const IsoResult& r) {
    REQUIRE(r.status == IsoStatus::isometric);
    REQUIRE(r.map.has_value());
    CHECK(r.map->transposed() * b.gram * *r.map == a.gram);
    CHECK(is_unimodular(*r.map));
}

Lattice twisted(const Lattice& l, const IntMat& u) {
    REQUIRE(is_unimodular(u));
    return lattice_from_gram(l.label + ".twist", u.transposed() * l.gram * u);
}

}  // namespace

TEST_CASE("a lattice is isometric to itself") {
    Lattice e8 = root_E(8);
    IsoResult r = is_isometric_definite(e8, e8);
    check_witness(e8, e8, r);

    Lattice empty = lattice_from_gram("0", IntMat(0, 0));
    CHECK(is_isometric_definite(empty, empty).yes());
}

TEST_CASE("a change of basis is recognized") {
    IntMat u = IntMat::identity(3);
    u(0, 1) = 2;
    u(1, 2) = -1;
    Lattice t1 = t11_one();
    Lattice other = twisted(t1, u);
    IsoResult r = is_isometric_definite(t1, other);
    check_witness(t1, other, r);

    // the witness transports vectors norm for norm
    for (const auto& v : vectors_of_norm(t1, Int(2))) {
        IntMat x(3, 1);
        for (long i = 0; i < 3; ++i) x(i, 0) = v[static_cast<size_t>(i)];
        IntMat y = *r.map * x;
        CHECK((y.transposed() * other.gram * y)(0, 0) == 2);
    }
}

TEST_CASE("invariants separate obvious non-pairs") {
    // signature
    CHECK(is_isometric_definite(root_A(2, +1), root_A(2, -1)).status == IsoStatus::distinct);
    // determinant
    CHECK(is_isometric_definite(root_A(2, +1), rank_one(Int(3))).status == IsoStatus::distinct);
    // minimum: the two ternary forms of determinant 242
    Lattice t1 = t11_one(), t2 = t11_two();
    CHECK(t1.det() == 242);
    CHECK(t2.det() == 242);
    CHECK(minimum_norm(t1) == 2);
    CHECK(minimum_norm(t2) == 6);
    IsoResult r = is_isometric_definite(t1, t2);
    CHECK(r.status == IsoStatus::distinct);
    CHECK(r.nodes == 0);  // rejected before any search
}

TEST_CASE("neighbor profiles separate lattices with equal theta openings") {
    // same rank, determinant, minimum, and root count; different root systems
    Lattice a = direct_sum(root_E(8), root_E(8));
    Lattice b = d16_plus();
    CHECK(count_roots(a) == 480);
    CHECK(count_roots(b) == 480);
    IsoResult r = is_isometric_definite(a, b);
    CHECK(r.status == IsoStatus::distinct);
    CHECK(r.nodes == 0);
}

TEST_CASE("the rotation co-invariant lattice is the printed one") {
    NiemeierRow row = niemeier_row("N23");
    HolyFrame fr = holy_frame(row);
    Lattice n23 = build_niemeier(row);
    Permutation chi = permutation_from_cycles(
        "(0)(15 7 14 5 10 20 17 11 22 21 19)(∞)(3 6 12 1 2 4 8 16 9 18 13)",
        projective_labels(23));
    Lattice s = coinvariant_lattice(n23, {copy_permutation_isometry(n23, fr, chi)}, "S");
    Lattice printed = s11_lattice();
    CHECK(genus_equal(s, printed));
    IsoResult r = is_isometric_definite(s, printed);
    check_witness(s, printed, r);
    CHECK(theta_shells(s, Int(8)) == theta_shells(printed, Int(8)));
}

TEST_CASE("the node cap yields unknown rather than a verdict") {
    Lattice e8 = root_E(8);
    IsoResult r = is_isometric_definite(e8, e8, 1);
    CHECK(r.status == IsoStatus::unknown);
    CHECK(!r.map.has_value());
}

TEST_CASE("indefinite input is rejected") {
    CHECK_THROWS(is_isometric_definite(hyperbolic_plane(), hyperbolic_plane()));
}
