#include <catch2/catch_amalgamated.hpp>

#include "gpl/json_io.hpp"
#include "gpl/matrix.hpp"
#include "test_util.hpp"

using namespace gpl;

TEST_CASE("matrix basic algebra") {
    Mat a = testutil::random_mat(5, 4, true);
    Mat b = testutil::random_mat(5, 4, true);
    Mat c = testutil::random_mat(4, 3, true);

    CHECK((a + b) - b == a);
    CHECK(a * Mat::identity(4) == a);
    CHECK(Mat::identity(5) * a == a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * c).transpose() == c.transpose() * a.transpose());
    CHECK((a * c).conj_transpose() == c.conj_transpose() * a.conj_transpose());
    CHECK(a.conj_transpose().conj_transpose() == a);
}

TEST_CASE("apply agrees with column combination") {
    Mat a = testutil::random_mat(6, 5, true);
    Vec x = testutil::random_vec(5);
    Vec y = zero_vec(6);
    for (int j = 0; j < 5; ++j) y = y + x[static_cast<size_t>(j)] * a.get_col(j);
    CHECK(a.apply(x) == y);
}

TEST_CASE("no explicit zeros are stored") {
    Mat a(3, 3);
    a.set(1, 1, Scalar(7));
    a.set(1, 1, Scalar(0));
    a.add_at(2, 2, Scalar(3));
    a.add_at(2, 2, Scalar(-3));
    CHECK(a.nnz() == 0);
    CHECK(a.is_zero());
}

TEST_CASE("hcat, vcat and row/column selection") {
    Mat a = testutil::random_mat(4, 2);
    Mat b = testutil::random_mat(4, 3);
    Mat h = Mat::hcat(a, b);
    CHECK(h.cols() == 5);
    CHECK(h.at(2, 0) == a.at(2, 0));
    CHECK(h.at(2, 4) == b.at(2, 2));

    Mat v = Mat::vcat(a, Mat::identity(2));
    CHECK(v.rows() == 6);
    CHECK(v.at(4, 0) == Scalar(1));
    CHECK(v.select_rows(4, 6) == Mat::identity(2));
    CHECK(v.select_rows(0, 4) == a);

    Mat s = h.select_cols({0, 1});
    CHECK(s == a);
}

TEST_CASE("json round trip is exact") {
    Mat a = testutil::random_mat(7, 6, true);
    Json j = to_json(a);
    CHECK(j.at("rows") == 7);
    CHECK(j.at("cols") == 6);
    Mat back = mat_from_json(j);
    CHECK(back == a);
}

TEST_CASE("json rejects malformed input") {
    Json j{{"rows", 2}, {"cols", 2}, {"entries", Json::array()}};
    j["entries"].push_back(Json::array({0, 0, "1/2", "0"}));
    j["entries"].push_back(Json::array({0, 0, "1/3", "0"}));
    CHECK_THROWS_AS(mat_from_json(j), Error); // duplicate entry

    Json k{{"rows", 1}, {"cols", 1}, {"entries", Json::array({Json::array({0, 5, "1", "0"})})}};
    CHECK_THROWS_AS(mat_from_json(k), Error); // index out of range

    Json m{{"rows", 1}, {"cols", 1}};
    CHECK_THROWS_AS(mat_from_json(m), Error); // missing entries
}

TEST_CASE("dimension mismatches throw") {
    Mat a(2, 3), b(3, 3);
    CHECK_THROWS_AS(a + b, Error);
    CHECK_THROWS_AS(b * b + a, Error);
    CHECK_THROWS_AS(a.apply(zero_vec(2)), Error);
    CHECK_THROWS_AS(Mat::hcat(a, Mat(3, 1)), Error);
    CHECK_THROWS_AS(Mat::vcat(a, Mat(1, 2)), Error);
}
