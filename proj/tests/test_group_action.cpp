#include <catch2/catch_amalgamated.hpp>
#include <leechkit/catalog.hpp>
#include <leechkit/group_action.hpp>

using namespace leechkit;

namespace {

const char* kOrder11Cycles = "(0)(15 7 14 5 10 20 17 11 22 21 19)(∞)(3 6 12 1 2 4 8 16 9 18 13)";
const char* kAlpha = "(15 7 14 5 10 20 17 11 22 21 19)(3 6 12 1 2 4 8 16 9 18 13)";
const char* kBeta = "(14 17 11 19 22)(20 10 7 5 21)(18 4 2 6 1)(8 16 13 9 12)";
const char* kGamma = "(2 4)(5 10)(6 18)(8 12)(9 16)(11 17)(14 19)(20 21)";
// kGamma conjugated by the swap of the two eleven point orbits; this is the
// involution that actually stabilizes the glue code (see mirrored_involution)
const char* kGammaMirrored = "(1 2)(4 18)(7 21)(8 16)(10 20)(11 22)(12 13)(14 17)";

std::vector<std::string> numeric_labels(long n) {
    std::vector<std::string> out;
    for (long i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

const HolyFrame& segment_frame() {
    static const HolyFrame fr = holy_frame(niemeier_row("N23"));
    return fr;
}

const Lattice& segment_row_lattice() {
    static const Lattice l = build_niemeier(niemeier_row("N23"));
    return l;
}

const Lattice& segment_rootless() {
    static const Lattice l = holy_leech(segment_frame());
    return l;
}

const HolyFrame& triangle_frame() {
    static const HolyFrame fr = holy_frame(niemeier_row("N22"));
    return fr;
}

const Lattice& triangle_row_lattice() {
    static const Lattice l = build_niemeier(niemeier_row("N22"));
    return l;
}

const Lattice& triangle_rootless() {
    static const Lattice l = holy_leech(triangle_frame());
    return l;
}

Permutation order11_perm() {
    return permutation_from_cycles(kOrder11Cycles, projective_labels(23));
}

// The involution exchanging the two eleven point orbits of a, pairing the
// unique b-fixed point of each orbit and extending a-equivariantly.  This is
// the only nontrivial permutation commuting with both a and b.
Permutation orbit_swap(const Permutation& a, const Permutation& b) {
    std::vector<long> anchor;
    for (long i = 0; i < a.degree(); ++i)
        if (b.img[static_cast<size_t>(i)] == i && a.img[static_cast<size_t>(i)] != i)
            anchor.push_back(i);
    REQUIRE(anchor.size() == 2);
    Permutation m = identity_permutation(a.degree());
    long x = anchor[0], y = anchor[1];
    do {
        m.img[static_cast<size_t>(x)] = y;
        m.img[static_cast<size_t>(y)] = x;
        x = a.img[static_cast<size_t>(x)];
        y = a.img[static_cast<size_t>(y)];
    } while (x != anchor[0]);
    return m;
}

// kGamma does not stabilize the glue code of the twenty four segment frame,
// only its mirror image under the orbit swap does; conjugating moves it into
// the stabilizer while keeping kAlpha and kBeta fixed.
Permutation mirrored_involution() {
    auto labels = projective_labels(23);
    Permutation a = permutation_from_cycles(kAlpha, labels);
    Permutation b = permutation_from_cycles(kBeta, labels);
    Permutation m = orbit_swap(a, b);
    return compose(m, compose(permutation_from_cycles(kGamma, labels), m));
}

Permutation triangle_cycle() {
    return permutation_from_cycles("(1 2 3 4 5 6 7 8 9 10 11)", numeric_labels(12));
}

RatMat frame_column(const HolyFrame& fr, long col) {
    RatMat out(fr.f.rows, 1);
    for (long i = 0; i < fr.f.rows; ++i) out(i, 0) = fr.f(i, col);
    return out;
}

RatMat basis_column(const Lattice& l, long col) {
    RatMat out(l.ambient->basis.rows, 1);
    for (long i = 0; i < out.rows; ++i) out(i, 0) = l.ambient->basis(i, col);
    return out;
}

}  // namespace

TEST_CASE("cycle strings parse over labeled points") {
    auto labels = projective_labels(23);
    Permutation chi = permutation_from_cycles(kOrder11Cycles, labels);
    CHECK(chi.degree() == 24);
    CHECK(permutation_order(chi) == 11);
    CHECK(orbit_count(chi) == 4);

    Permutation beta = permutation_from_cycles(kBeta, labels);
    CHECK(permutation_order(beta) == 5);
    CHECK(orbit_count(beta) == 8);

    Permutation gamma = permutation_from_cycles(kGamma, labels);
    CHECK(permutation_order(gamma) == 2);
    CHECK(orbit_count(gamma) == 16);

    CHECK(permutation_from_cycles("(∞)", labels).is_identity());
    CHECK(permutation_from_cycles("", labels).is_identity());
    CHECK_THROWS(permutation_from_cycles("(23)", labels));
    CHECK_THROWS(permutation_from_cycles("(0 1)(1 2)", labels));
    CHECK_THROWS(permutation_from_cycles("(0 1", labels));
}

TEST_CASE("copy permutations become isometries when the code allows") {
    const Lattice& n23 = segment_row_lattice();
    const HolyFrame& fr = segment_frame();

    Isometry chi = copy_permutation_isometry(n23, fr, order11_perm());
    CHECK(chi.kind == IsometryKind::ComponentPermutation);
    CHECK(chi.m.transposed() * n23.gram * chi.m == n23.gram);
    CHECK(isometry_order(chi) == 11);

    Isometry id = copy_permutation_isometry(n23, fr, identity_permutation(24));
    CHECK(id.m == IntMat::identity(24));

    // a transposition of two copies is odd, hence not a code automorphism
    auto swap2 = permutation_from_cycles("(∞ 0)", projective_labels(23));
    CHECK_THROWS_WITH(copy_permutation_isometry(n23, fr, swap2),
                      Catch::Matchers::ContainsSubstring("basis vector"));

    // the same permutation also preserves the rootless lattice
    Isometry chi_rootless = copy_permutation_isometry(segment_rootless(), fr, order11_perm());
    CHECK(isometry_order(chi_rootless) == 11);
}

TEST_CASE("glue translations act by rotating the copies") {
    HolyFrame fr = holy_frame(niemeier_row("N10"));
    Lattice leech = holy_leech(fr);

    Isometry id = glue_translation_isometry(leech, fr, {0, 0});
    CHECK(id.m == IntMat::identity(24));

    Isometry chi = glue_translation_isometry(leech, fr, {1, 5});
    CHECK(chi.kind == IsometryKind::GlueTranslation);
    CHECK(isometry_order(chi) == 13);

    // (1,0) is not a code word, so the h-vectors have no consistent image
    CHECK_THROWS(glue_translation_isometry(leech, fr, {1, 0}));

    Lattice fixed = invariant_lattice(leech, {chi});
    CHECK(fixed.rank() == 0);
    Lattice co = coinvariant_lattice(leech, {chi});
    CHECK(same_sublattice(co, leech));
    CHECK(leech_couple_check(leech, {chi}).ok());
}

TEST_CASE("a glue translation of order three leaves fixed vectors") {
    const HolyFrame& fr = triangle_frame();
    const Lattice& leech = triangle_rootless();
    std::vector<long> word = fr.code[1];
    Isometry g = glue_translation_isometry(leech, fr, word);
    CHECK(isometry_order(g) == 3);
    Lattice fixed = invariant_lattice(leech, {g});
    CHECK(fixed.rank() > 0);
    LeechCoupleReport rep = leech_couple_check(leech, {g});
    CHECK(rep.negative_definite);
    CHECK(rep.rootless);
    CHECK_FALSE(rep.coinvariant_is_everything);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("order eleven action on the triangle frame") {
    const Lattice& n22 = triangle_row_lattice();
    const HolyFrame& fr = triangle_frame();
    Permutation p = triangle_cycle();
    Isometry chi = copy_permutation_isometry(n22, fr, p);
    CHECK(isometry_order(chi) == 11);

    Lattice fixed = invariant_lattice(n22, {chi});
    REQUIRE(fixed.rank() == 4);

    // both simple roots of the pinned copy and the two orbit sums are fixed
    RatMat f10 = frame_column(fr, fr.fcol(0, 1));
    RatMat f20 = frame_column(fr, fr.fcol(0, 2));
    RatMat s1(fr.f.rows, 1), s2(fr.f.rows, 1);
    for (long r = 1; r < 12; ++r)
        for (long i = 0; i < fr.f.rows; ++i) {
            s1(i, 0) += fr.f(i, fr.fcol(r, 1));
            s2(i, 0) += fr.f(i, fr.fcol(r, 2));
        }
    CHECK(member_coords(fixed, f10).has_value());
    CHECK(member_coords(fixed, f20).has_value());
    CHECK(member_coords(fixed, s1).has_value());
    CHECK(member_coords(fixed, s2).has_value());

    Lattice s = coinvariant_lattice(n22, {chi}, "S");
    REQUIRE(s.rank() == 20);
    CHECK(s.det() == 121);
    CHECK(minimum_norm(s) == 4);
    CHECK(genus_equal(s, s11_lattice()));

    // the co-invariant lattice lands inside the rootless lattice and agrees
    // with the co-invariant lattice computed there
    const Lattice& leech = triangle_rootless();
    for (long j = 0; j < s.rank(); ++j)
        CHECK(member_coords(leech, basis_column(s, j)).has_value());
    Isometry chi_leech = copy_permutation_isometry(leech, fr, p);
    Lattice s_leech = coinvariant_lattice(leech, {chi_leech});
    CHECK(same_sublattice(s, s_leech));
}

TEST_CASE("order eleven action on the segment frame") {
    const Lattice& n23 = segment_row_lattice();
    const HolyFrame& fr = segment_frame();
    Isometry chi = copy_permutation_isometry(n23, fr, order11_perm());

    Lattice s = coinvariant_lattice(n23, {chi}, "S");
    REQUIRE(s.rank() == 20);
    CHECK(s.det() == 121);
    CHECK(minimum_norm(s) == 4);
    CHECK(genus_equal(s, s11_lattice()));

    // differences v - chi(v) span the co-invariant lattice rationally
    IntMat diff = IntMat::identity(24);
    for (long i = 0; i < 24; ++i)
        for (long j = 0; j < 24; ++j) diff(i, j) -= chi.m(i, j);
    CHECK(column_lattice_basis(diff).cols == 20);
    for (long j = 0; j < 24; ++j) {
        RatMat col(fr.f.rows, 1);
        for (long i = 0; i < fr.f.rows; ++i) {
            Rat v = 0;
            for (long a = 0; a < 24; ++a) v += n23.ambient->basis(i, a) * Rat(diff(a, j));
            col(i, 0) = v;
        }
        CHECK(member_coords(s, col).has_value());
    }

    // the action restricted to S fixes its discriminant group pointwise
    Isometry on_s = restrict_isometry(n23, chi, s);
    CHECK(isometry_order(on_s) == 11);
    DiscriminantGroup dg = discriminant_group(s);
    CHECK(trivial_discriminant_action(s, dg, on_s));
    CHECK(leech_couple_check(s, {on_s}).ok());

    // same co-invariant lattice inside the rootless lattice
    Isometry chi_rootless = copy_permutation_isometry(segment_rootless(), fr, order11_perm());
    Lattice s_rootless = coinvariant_lattice(segment_rootless(), {chi_rootless});
    CHECK(same_sublattice(s, s_rootless));
}

TEST_CASE("fixed rank counts the copy orbits") {
    const Lattice& n23 = segment_row_lattice();
    const HolyFrame& fr = segment_frame();
    auto labels = projective_labels(23);
    for (const char* text : {kAlpha, kBeta, kGammaMirrored, kOrder11Cycles}) {
        Permutation p = permutation_from_cycles(text, labels);
        Isometry g = copy_permutation_isometry(n23, fr, p);
        CHECK(invariant_lattice(n23, {g}).rank() == orbit_count(p));
    }
    // one fixed rank per simple root of each copy orbit
    Permutation p = triangle_cycle();
    Isometry g = copy_permutation_isometry(triangle_row_lattice(), triangle_frame(), p);
    CHECK(invariant_lattice(triangle_row_lattice(), {g}).rank() == 2 * orbit_count(p));
}

TEST_CASE("the three printed generators close to the projective group") {
    const Lattice& n23 = segment_row_lattice();
    const HolyFrame& fr = segment_frame();
    auto labels = projective_labels(23);
    Permutation pa = permutation_from_cycles(kAlpha, labels);
    Permutation pb = permutation_from_cycles(kBeta, labels);

    // the involution as printed stabilizes only the mirror image of the
    // glue code, so it does not act on this lattice
    Permutation pg = permutation_from_cycles(kGamma, labels);
    CHECK_THROWS_WITH(copy_permutation_isometry(n23, fr, pg),
                      Catch::Matchers::ContainsSubstring("not in the lattice"));

    // the orbit swap commutes with the other two generators, so conjugating
    // changes nothing but the reading of the labels
    Permutation m = orbit_swap(pa, pb);
    CHECK(compose(m, m).is_identity());
    CHECK(compose(m, pa).img == compose(pa, m).img);
    CHECK(compose(m, pb).img == compose(pb, m).img);
    Permutation pc = mirrored_involution();
    CHECK(pc.img == permutation_from_cycles(kGammaMirrored, labels).img);
    CHECK(permutation_order(pc) == 2);

    Isometry a = copy_permutation_isometry(n23, fr, pa);
    Isometry b = copy_permutation_isometry(n23, fr, pb);
    Isometry c = copy_permutation_isometry(n23, fr, pc);

    std::vector<IntMat> elements = group_closure({a, b, c});
    CHECK(elements.size() == 660);
    CHECK(elements.front() == IntMat::identity(24));
    CHECK_THROWS(group_closure({a, b, c}, 100));

    Isometry id{IntMat::identity(24), IsometryKind::Diagonal};
    CHECK(group_closure({id}).size() == 1);

    std::map<long, std::set<long>> table = coinvariant_rank_table(n23, elements);
    std::map<long, std::set<long>> expected{{1, {0}},  {2, {8}},  {3, {12}},
                                            {5, {16}}, {6, {16}}, {11, {20}}};
    CHECK(table == expected);
}

TEST_CASE("an order twenty three shift fixes only a plane") {
    const Lattice& n23 = segment_row_lattice();
    const HolyFrame& fr = segment_frame();
    std::string cycle = "(0";
    for (long i = 1; i < 23; ++i) cycle += " " + std::to_string(i);
    cycle += ")";
    Permutation p = permutation_from_cycles(cycle, projective_labels(23));
    Isometry g = copy_permutation_isometry(n23, fr, p);
    CHECK(isometry_order(g) == 23);
    CHECK(invariant_lattice(n23, {g}).rank() == 2);
    Lattice s = coinvariant_lattice(n23, {g});
    CHECK(s.rank() == 22);
    SignCounts sig = s.signature();
    CHECK(sig.pos == 0);
    CHECK(sig.zero == 0);
}

TEST_CASE("induced maps on discriminant groups") {
    // unimodular target: the discriminant group is trivial
    const Lattice& n23 = segment_row_lattice();
    Isometry chi = copy_permutation_isometry(n23, segment_frame(), order11_perm());
    DiscriminantGroup trivial = discriminant_group(n23);
    CHECK(trivial.kept.empty());
    CHECK(trivial_discriminant_action(n23, trivial, chi));

    // negation fixes the two-torsion class of a (-2) line
    Lattice line = rank_one(Int(-2));
    IntMat neg(1, 1);
    neg(0, 0) = -1;
    Isometry flip{neg, IsometryKind::Diagonal};
    DiscriminantGroup two = discriminant_group(line);
    CHECK(trivial_discriminant_action(line, two, flip));

    // but moves the order-three classes of a triangle lattice
    Lattice a2 = root_A(2);
    IntMat neg2 = IntMat::identity(2);
    neg2(0, 0) = -1;
    neg2(1, 1) = -1;
    Isometry flip2{neg2, IsometryKind::Diagonal};
    DiscriminantGroup three = discriminant_group(a2);
    CHECK_FALSE(trivial_discriminant_action(a2, three, flip2));
}

TEST_CASE("couples that fail the screen") {
    LeechCoupleReport rep = leech_couple_check(root_A(2), {});
    CHECK(rep.negative_definite);
    CHECK_FALSE(rep.rootless);
    CHECK_FALSE(rep.coinvariant_is_everything);
    CHECK_FALSE(rep.ok());

    LeechCoupleReport pos = leech_couple_check(root_A(2, +1), {});
    CHECK_FALSE(pos.negative_definite);
    CHECK_FALSE(pos.ok());
}
