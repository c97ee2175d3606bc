#include <catch2/catch_amalgamated.hpp>
#include <leechkit/catalog.hpp>
#include <leechkit/niemeier.hpp>
#include <leechkit/nikulin.hpp>

using namespace leechkit;
using Catch::Matchers::ContainsSubstring;

namespace {

long mod8_sig(const Lattice& l) {
    SignCounts s = l.signature();
    return ((s.pos - s.neg) % 8 + 8) % 8;
}

}  // namespace

TEST_CASE("gauss sum signatures match lattice signatures") {
    CHECK(milgram_signature(FiniteQuadraticForm{}) == 0);
    CHECK(milgram_signature(discriminant_group(rank_one(Int(-2))).form) == 7);
    CHECK(milgram_signature(discriminant_group(s11_lattice()).form) == 4);

    for (const char* name : {"U", "E8", "E8+", "D16plus", "K3two", "Mukai", "M11", "S11",
                             "T1_11", "T2_11", "TX", "A2", "D4", "E6", "E7"}) {
        Lattice l = catalog_lattice(name);
        INFO(name);
        CHECK(milgram_signature(discriminant_group(l).form) == mod8_sig(l));
    }
    for (const NiemeierRow& row : niemeier_table()) {
        Lattice l = build_niemeier(row);
        INFO(row.name);
        CHECK(l.is_unimodular());
        CHECK(milgram_signature(discriminant_group(l).form) == mod8_sig(l));
    }
}

TEST_CASE("even lattice existence predicate") {
    FiniteQuadraticForm neg_s11 = discriminant_group(s11_lattice()).form.negated();
    CHECK(exists_even_lattice(0, 4, neg_s11));
    CHECK_FALSE(exists_even_lattice(0, 1, neg_s11));  // rank below generator count
    CHECK_FALSE(exists_even_lattice(0, 3, neg_s11));  // signature off mod 8

    FiniteQuadraticForm two = discriminant_group(rank_one(Int(-2))).form;
    CHECK_FALSE(exists_even_lattice(1, 0, two));
    CHECK(exists_even_lattice(0, 1, two));
    CHECK(exists_even_lattice(0, 0, FiniteQuadraticForm{}));
    CHECK_FALSE(exists_even_lattice(-1, 7, FiniteQuadraticForm{}));

    GenusSymbol g = genus_symbol(0, 4, neg_s11);
    CHECK(g.form.group_order() == 121);
    CHECK_THROWS_WITH(genus_symbol(0, 3, neg_s11), ContainsSubstring("no even lattice"));
}

TEST_CASE("primitive embedding criterion") {
    EmbeddingCheck s11 = primitive_embedding_exists(s11_lattice(), 0, 24);
    CHECK(s11.exists);
    CHECK(s11.t_plus == 0);
    CHECK(s11.t_minus == 4);
    CHECK(s11.complement_form.group_order() == 121);

    // a rank-22 negative definite lattice cannot fit in signature (3,20)
    Lattice e8m = root_E(8);
    Lattice m = m11_block();
    Lattice big = direct_sum(direct_sum(e8m, e8m),
                             direct_sum(direct_sum(m, m), direct_sum(m, m)));
    REQUIRE(big.rank() == 22);
    EmbeddingCheck no = primitive_embedding_exists(big, 3, 20);
    CHECK_FALSE(no.exists);
    CHECK(no.t_minus < 0);

    EmbeddingCheck u = primitive_embedding_exists(hyperbolic_plane(), 1, 1);
    CHECK(u.exists);
    CHECK(u.t_plus == 0);
    CHECK(u.t_minus == 0);
    CHECK(u.complement_form.ngens() == 0);
}

TEST_CASE("square-two overlattice extends isometries") {
    // no generators: just the unimodular overlattice and the embedding
    MukaiExtension triv = extend_to_mukai({});
    CHECK(triv.big.is_unimodular());
    CHECK(triv.big.is_even());
    CHECK(triv.coinvariant_rank == 0);
    CHECK(triv.embedding.transposed() * triv.big.gram * triv.embedding == triv.small.gram);

    long n = triv.small.rank();

    // negation of the (-2) summand acts trivially on the discriminant group,
    // so it extends; both co-invariant lattices are the same (-2) line
    IntMat neg(n, n);
    for (long i = 0; i < n; ++i) neg(i, i) = 1;
    neg(n - 1, n - 1) = -1;
    MukaiExtension ext = extend_to_mukai({Isometry{neg, IsometryKind::Composite}});
    CHECK(ext.coinvariant_rank == 1);
    CHECK(ext.extended.size() == 1);
    IntMat em = ext.extended[0].m;
    CHECK(em.transposed() * ext.big.gram * em == ext.big.gram);

    // swapping the two E8(-1) summands extends with co-invariant rank 8
    IntMat swp(n, n);
    for (long i = 0; i < 6; ++i) swp(i, i) = 1;
    for (long i = 0; i < 8; ++i) {
        swp(6 + i, 14 + i) = 1;
        swp(14 + i, 6 + i) = 1;
    }
    swp(22, 22) = 1;
    MukaiExtension sw = extend_to_mukai({Isometry{swp, IsometryKind::Composite}});
    CHECK(sw.coinvariant_rank == 8);

    // gluing along a norm -2 vector of divisor 1 cannot produce a lattice
    IntMat root(n, 1);
    root(6, 0) = 1;  // a root inside the first E8(-1) block
    CHECK_THROWS_WITH(extend_to_mukai({}, root), ContainsSubstring("non-integral"));

    IntMat odd(n, 1);
    odd(0, 0) = 1;  // isotropic vector of a hyperbolic summand
    CHECK_THROWS_WITH(extend_to_mukai({}, odd), ContainsSubstring("norm -2"));
}

TEST_CASE("ternary genus of determinant 242") {
    FiniteQuadraticForm q = discriminant_group(t11_one()).form;
    std::vector<Lattice> classes = enumerate_ternary_genus(Int(242), q);
    REQUIRE(classes.size() == 2);
    for (const Lattice& l : classes) {
        CHECK(l.is_even());
        CHECK(l.det() == 242);
        CHECK(genus_equal(l, t11_one()));
        CHECK(genus_equal(l, t11_two()));
    }
    // the two classes are the two fixed ternary forms, in some order
    bool straight = is_isometric_definite(classes[0], t11_one()).yes() &&
                    is_isometric_definite(classes[1], t11_two()).yes();
    bool crossed = is_isometric_definite(classes[0], t11_two()).yes() &&
                   is_isometric_definite(classes[1], t11_one()).yes();
    CHECK((straight || crossed));
    CHECK(is_isometric_definite(classes[0], classes[1]).status == IsoStatus::distinct);
}

TEST_CASE("ternary enumeration agrees with a box scan oracle") {
    IntMat a3(3, 3);
    a3(0, 0) = a3(1, 1) = a3(2, 2) = 2;
    a3(0, 1) = a3(1, 0) = 1;
    a3(1, 2) = a3(2, 1) = 1;
    Lattice seed = lattice_from_gram("A3+", a3);
    REQUIRE(seed.det() == 4);
    FiniteQuadraticForm q = discriminant_group(seed).form;

    std::vector<Lattice> fast = enumerate_ternary_genus(Int(4), q);

    // oracle: scan a coefficient box far beyond the reduction bounds and
    // classify everything with matching determinant and discriminant form
    std::vector<Lattice> classes;
    for (int a = 2; a <= 8; a += 2)
        for (int b = 2; b <= 8; b += 2)
            for (int c = 2; c <= 8; c += 2)
                for (int d = -3; d <= 3; ++d)
                    for (int e = -3; e <= 3; ++e)
                        for (int f = -3; f <= 3; ++f) {
                            IntMat g(3, 3);
                            g(0, 0) = a;
                            g(1, 1) = b;
                            g(2, 2) = c;
                            g(0, 1) = g(1, 0) = d;
                            g(0, 2) = g(2, 0) = e;
                            g(1, 2) = g(2, 1) = f;
                            if (a * b - d * d <= 0 || det_int(g) != 4) continue;
                            Lattice cand = lattice_from_gram("box", g);
                            if (!fqf_isomorphism(q, discriminant_group(cand).form)) continue;
                            bool fresh = true;
                            for (const Lattice& kept : classes)
                                if (is_isometric_definite(cand, kept).yes()) {
                                    fresh = false;
                                    break;
                                }
                            if (fresh) classes.push_back(std::move(cand));
                        }
    REQUIRE(classes.size() == fast.size());
    for (const Lattice& l : fast) {
        bool matched = false;
        for (const Lattice& o : classes)
            if (is_isometric_definite(l, o).yes()) {
                matched = true;
                break;
            }
        CHECK(matched);
    }

    CHECK(enumerate_ternary_genus(Int(1), FiniteQuadraticForm{}).empty());
}

TEST_CASE("divisors through the order-121 glue") {
    Lattice s11 = s11_lattice();
    Lattice t1 = t11_one();
    Lattice t2 = t11_two();

    CHECK(glue_divisor(t1, {1, 0, 0}, s11, Int(2)) == 1);  // norm 2 vector
    CHECK(glue_divisor(t1, {0, 0, 1}, s11, Int(2)) == 2);  // norm 22 vector
    CHECK(glue_divisor(t2, {1, 0, 0}, s11, Int(2)) == 2);  // norm 6 vector

    // every divisor divides the exponent of the discriminant group
    DiscriminantGroup dt = discriminant_group(t1);
    Int expo = 1;
    for (const Int& d : dt.form.orders) expo = lcm(expo, d);
    for (auto f : {std::vector<Int>{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 2}})
        CHECK(expo % glue_divisor(t1, f, s11, Int(2)) == 0);

    CHECK_THROWS_WITH(glue_divisor(t1, {1, 0, 0}, s11, Int(3)),
                      ContainsSubstring("do not glue"));
    // -1 is not a square mod 11, so the 121-torsion of T1 is not
    // anti-isometric to itself
    CHECK_THROWS_WITH(glue_divisor(t1, {1, 0, 0}, t1, Int(4)),
                      ContainsSubstring("anti-isometric"));
}

TEST_CASE("binary reduction") {
    IntMat g(2, 2);
    g(0, 0) = 10;
    g(0, 1) = g(1, 0) = 7;
    g(1, 1) = 6;
    IntMat r = reduced_binary_form(g);
    CHECK(r(0, 0) == 2);
    CHECK(r(0, 1) == 1);
    CHECK(r(1, 1) == 6);
    CHECK(det_int(r) == det_int(g));

    IntMat tx = tx_block().gram;
    IntMat rt = reduced_binary_form(tx);
    CHECK(rt(0, 0) == 22);
    CHECK(rt(0, 1) == 11);
    CHECK(rt(1, 1) == 22);

    IntMat bad(2, 2);
    bad(0, 0) = 2;
    bad(0, 1) = bad(1, 0) = 3;
    bad(1, 1) = 2;
    CHECK_THROWS_WITH(reduced_binary_form(bad), ContainsSubstring("positive definite"));
}

TEST_CASE("rank 21 ambient picture and the transcendental complement") {
    NsReport r = ns_and_transcendental_check();
    CHECK(r.no_nontrivial_overlattices);
    CHECK(r.ns_genus_matches);
    // the rank 20 definite blocks differ: one has minimum 4, the other has roots
    CHECK(r.definite_parts == IsoStatus::distinct);
    CHECK(r.transcendental_det == 363);
    CHECK(r.transcendental_matches);
    CHECK(r.transcendental_reduced(0, 0) == 22);
    CHECK(r.transcendental_reduced(0, 1) == 11);
    CHECK(r.transcendental_reduced(1, 1) == 22);
}
