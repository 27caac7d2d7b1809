#include <catch2/catch_amalgamated.hpp>

#include "gpl/form.hpp"
#include "gpl/quotient.hpp"
#include "test_util.hpp"

using namespace gpl;

namespace {

Quotient random_quotient(int ambient, int num_gens, int den_gens) {
    Mat num_vecs = testutil::random_mat(ambient, num_gens);
    Subspace num = Subspace::span(num_vecs);
    // denominators are random combinations of numerator vectors
    Mat combo = testutil::random_mat(num_vecs.cols(), den_gens);
    Subspace den = Subspace::span(num_vecs * combo);
    return Quotient(num, den);
}

} // namespace

TEST_CASE("quotient construction checks containment") {
    Subspace num = Subspace::span(Mat::from_dense({{Scalar(1)}, {Scalar(0)}, {Scalar(0)}}));
    Subspace den = Subspace::span(Mat::from_dense({{Scalar(0)}, {Scalar(1)}, {Scalar(0)}}));
    CHECK_THROWS_AS(Quotient(num, den), Error);
    try {
        Quotient q(num, den);
        (void)q;
    } catch (const Error& e) {
        CHECK(e.code() == std::string(err::IllFormedQuotient));
    }
}

TEST_CASE("quotient dimension and reduction properties") {
    for (int trial = 0; trial < 25; ++trial) {
        Quotient q = random_quotient(7, 4, 2);
        CHECK(q.dim() == q.num().dim() - q.den().dim());

        // reduce vanishes exactly on den
        for (int j = 0; j < q.den().dim(); ++j)
            CHECK(q.is_zero_class(q.den().basis().get_col(j)));

        // reduce is linear and lift is a section
        Vec u = q.num().from_coordinates(testutil::random_vec(q.num().dim()));
        Vec w = q.num().from_coordinates(testutil::random_vec(q.num().dim()));
        CHECK(q.reduce(u + w) == q.reduce(u) + q.reduce(w));
        CHECK(q.reduce(q.lift(q.reduce(u))) == q.reduce(u));

        // congruent vectors reduce identically
        if (q.den().dim() > 0) {
            Vec shift = q.den().from_coordinates(testutil::random_vec(q.den().dim()));
            CHECK(q.reduce(u + shift) == q.reduce(u));
        }

        // vectors outside num are rejected
        if (q.num().dim() < 7) {
            for (int k = 0; k < 7; ++k) {
                Vec e = zero_vec(7);
                e[static_cast<size_t>(k)] = Scalar(1);
                if (!q.num().contains(e)) {
                    CHECK_THROWS_AS(q.reduce(e), Error);
                    break;
                }
            }
        }
    }
}

TEST_CASE("induced map well-definedness and failure witnesses") {
    // V = Q^4, num = span{e0,e1,e2}, den = span{e0}.
    Mat num_vecs(4, 3);
    num_vecs.set(0, 0, Scalar(1));
    num_vecs.set(1, 1, Scalar(1));
    num_vecs.set(2, 2, Scalar(1));
    Mat den_vecs(4, 1);
    den_vecs.set(0, 0, Scalar(1));
    Quotient q(Subspace::span(num_vecs), Subspace::span(den_vecs));

    // A maps e0 -> e0, e1 -> e2, e2 -> e1: descends, is an involution.
    Mat good(4, 4);
    good.set(0, 0, Scalar(1));
    good.set(2, 1, Scalar(1));
    good.set(1, 2, Scalar(1));
    good.set(3, 3, Scalar(1));
    auto ind = induced_map(good, q, q);
    REQUIRE(ind.well_defined);
    CHECK(ind.injective);
    CHECK(ind.surjective);
    CHECK(ind.matrix * ind.matrix == Mat::identity(q.dim()));

    // B maps e0 -> e1: sends den outside den, not well defined.
    Mat bad(4, 4);
    bad.set(1, 0, Scalar(1));
    bad.set(1, 1, Scalar(1));
    bad.set(2, 2, Scalar(1));
    auto nope = induced_map(bad, q, q);
    CHECK(!nope.well_defined);
    CHECK(!nope.obstruction.empty());

    // C maps e1 -> e3 (outside num): also not well defined.
    Mat off(4, 4);
    off.set(0, 0, Scalar(1));
    off.set(3, 1, Scalar(1));
    off.set(2, 2, Scalar(1));
    auto nope2 = induced_map(off, q, q);
    CHECK(!nope2.well_defined);
}

TEST_CASE("induced form: gram, hermiticity, radical") {
    // Ambient form u^H G v on Q^3 with G hermitian; num = full, den = 0.
    Mat g = Mat::from_dense({{Scalar(1), Scalar::i(), Scalar(0)},
                             {-Scalar::i(), Scalar(2), Scalar(0)},
                             {Scalar(0), Scalar(0), Scalar(0)}});
    REQUIRE(is_hermitian(g));
    Quotient q(Subspace::full(3), Subspace::zero(3));
    auto f = induced_form(g, q);
    REQUIRE(f.well_defined);
    CHECK(f.hermitian);
    CHECK(f.radical_dim == 1); // e2 direction
    CHECK(f.gram.at(0, 1) == Scalar::i());

    // Quotient by the radical: the induced form becomes nondegenerate.
    Mat rad(3, 1);
    rad.set(2, 0, Scalar(1));
    Quotient qq(Subspace::full(3), Subspace::span(rad));
    auto f2 = induced_form(g, qq);
    REQUIRE(f2.well_defined);
    CHECK(f2.nondegenerate());

    // Quotient by a non-isotropic direction: obstruction reported.
    Mat bad(3, 1);
    bad.set(0, 0, Scalar(1));
    Quotient qb(Subspace::full(3), Subspace::span(bad));
    auto f3 = induced_form(g, qb);
    CHECK(!f3.well_defined);
    CHECK(!f3.obstruction.empty());
}
