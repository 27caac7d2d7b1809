#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "gpl/scalar.hpp"

namespace gpl {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(int n) { return Vec(static_cast<size_t>(n)); }

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline Vec operator+(Vec a, const Vec& b) {
    require(a.size() == b.size(), err::DimensionMismatch, "vector sizes differ");
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vec operator-(Vec a, const Vec& b) {
    require(a.size() == b.size(), err::DimensionMismatch, "vector sizes differ");
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vec operator*(const Scalar& s, Vec v) {
    for (auto& x : v) x *= s;
    return v;
}

// Sparse matrix over Q(i), column major. Columns are ordered maps row -> value
// with no explicit zeros; this keeps elimination and assembly simple and
// deterministic. Dense work below the small-dimension threshold goes through
// the same interface.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(cols)) {
        require(rows >= 0 && cols >= 0, err::DimensionMismatch, "negative matrix dimension");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int j = 0; j < n; ++j) m.data_[j][j] = Scalar(1);
        return m;
    }

    static Mat diag(const Vec& d) {
        Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t j = 0; j < d.size(); ++j)
            if (!d[j].is_zero()) m.data_[j][static_cast<int>(j)] = d[j];
        return m;
    }

    static Mat from_dense(const std::vector<Vec>& rows) {
        int r = static_cast<int>(rows.size());
        int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
        Mat m(r, c);
        for (int i = 0; i < r; ++i) {
            require(static_cast<int>(rows[i].size()) == c, err::DimensionMismatch,
                    "ragged dense matrix");
            for (int j = 0; j < c; ++j)
                if (!rows[i][j].is_zero()) m.data_[j][i] = rows[i][j];
        }
        return m;
    }

    static Mat from_columns(int rows, const std::vector<Vec>& cols) {
        Mat m(rows, static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j) m.set_col(static_cast<int>(j), cols[j]);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const std::map<int, Scalar>& col(int j) const { return data_[static_cast<size_t>(j)]; }

    Scalar at(int r, int c) const {
        auto& col = data_[static_cast<size_t>(c)];
        auto it = col.find(r);
        return it == col.end() ? Scalar() : it->second;
    }

    void set(int r, int c, const Scalar& v) {
        require(r >= 0 && r < rows_ && c >= 0 && c < cols_, err::DimensionMismatch,
                "matrix index out of range");
        if (v.is_zero())
            data_[static_cast<size_t>(c)].erase(r);
        else
            data_[static_cast<size_t>(c)][r] = v;
    }

    void add_at(int r, int c, const Scalar& v) {
        if (v.is_zero()) return;
        require(r >= 0 && r < rows_ && c >= 0 && c < cols_, err::DimensionMismatch,
                "matrix index out of range");
        auto& cell = data_[static_cast<size_t>(c)][r];
        cell += v;
        if (cell.is_zero()) data_[static_cast<size_t>(c)].erase(r);
    }

    Vec get_col(int j) const {
        Vec v = zero_vec(rows_);
        for (const auto& [r, x] : data_[static_cast<size_t>(j)]) v[static_cast<size_t>(r)] = x;
        return v;
    }

    void set_col(int j, const Vec& v) {
        require(static_cast<int>(v.size()) == rows_, err::DimensionMismatch, "column size");
        auto& col = data_[static_cast<size_t>(j)];
        col.clear();
        for (int r = 0; r < rows_; ++r)
            if (!v[static_cast<size_t>(r)].is_zero()) col[r] = v[static_cast<size_t>(r)];
    }

    int nnz() const {
        int n = 0;
        for (const auto& c : data_) n += static_cast<int>(c.size());
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    Vec apply(const Vec& v) const {
        require(static_cast<int>(v.size()) == cols_, err::DimensionMismatch,
                "matrix-vector size mismatch");
        Vec out = zero_vec(rows_);
        for (int j = 0; j < cols_; ++j) {
            const Scalar& x = v[static_cast<size_t>(j)];
            if (x.is_zero()) continue;
            for (const auto& [r, a] : data_[static_cast<size_t>(j)])
                out[static_cast<size_t>(r)] += a * x;
        }
        return out;
    }

    Mat operator*(const Mat& b) const {
        require(cols_ == b.rows_, err::DimensionMismatch, "matrix product shapes");
        Mat out(rows_, b.cols_);
        for (int j = 0; j < b.cols_; ++j) {
            std::map<int, Scalar> acc;
            for (const auto& [k, x] : b.data_[static_cast<size_t>(j)])
                for (const auto& [r, a] : data_[static_cast<size_t>(k)]) {
                    auto& cell = acc[r];
                    cell += a * x;
                }
            auto& col = out.data_[static_cast<size_t>(j)];
            for (auto& [r, v] : acc)
                if (!v.is_zero()) col.emplace(r, std::move(v));
        }
        return out;
    }

    Mat operator+(const Mat& b) const { return combined(b, false); }
    Mat operator-(const Mat& b) const { return combined(b, true); }

    Mat operator*(const Scalar& s) const {
        Mat out(rows_, cols_);
        if (s.is_zero()) return out;
        for (int j = 0; j < cols_; ++j)
            for (const auto& [r, a] : data_[static_cast<size_t>(j)])
                out.data_[static_cast<size_t>(j)][r] = a * s;
        return out;
    }

    friend Mat operator*(const Scalar& s, const Mat& m) { return m * s; }

    Mat operator-() const { return *this * Scalar(-1); }

    Mat transpose() const {
        Mat out(cols_, rows_);
        for (int j = 0; j < cols_; ++j)
            for (const auto& [r, a] : data_[static_cast<size_t>(j)]) out.data_[static_cast<size_t>(r)][j] = a;
        return out;
    }

    Mat conjugate() const {
        Mat out(rows_, cols_);
        for (int j = 0; j < cols_; ++j)
            for (const auto& [r, a] : data_[static_cast<size_t>(j)]) out.data_[static_cast<size_t>(j)][r] = a.conj();
        return out;
    }

    // Plain conjugate transpose; metric-aware adjoints live with the spaces
    // that own the weights.
    Mat conj_transpose() const { return transpose().conjugate(); }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    static Mat hcat(const Mat& a, const Mat& b) {
        require(a.rows_ == b.rows_, err::DimensionMismatch, "hcat row mismatch");
        Mat out(a.rows_, a.cols_ + b.cols_);
        for (int j = 0; j < a.cols_; ++j) out.data_[static_cast<size_t>(j)] = a.data_[static_cast<size_t>(j)];
        for (int j = 0; j < b.cols_; ++j)
            out.data_[static_cast<size_t>(a.cols_ + j)] = b.data_[static_cast<size_t>(j)];
        return out;
    }

    static Mat vcat(const Mat& a, const Mat& b) {
        require(a.cols_ == b.cols_, err::DimensionMismatch, "vcat col mismatch");
        Mat out(a.rows_ + b.rows_, a.cols_);
        for (int j = 0; j < a.cols_; ++j) {
            out.data_[static_cast<size_t>(j)] = a.data_[static_cast<size_t>(j)];
            for (const auto& [r, v] : b.data_[static_cast<size_t>(j)])
                out.data_[static_cast<size_t>(j)][a.rows_ + r] = v;
        }
        return out;
    }

    Mat select_rows(int begin, int end) const {
        require(0 <= begin && begin <= end && end <= rows_, err::DimensionMismatch,
                "row range out of bounds");
        Mat out(end - begin, cols_);
        for (int j = 0; j < cols_; ++j) {
            auto& col = data_[static_cast<size_t>(j)];
            for (auto it = col.lower_bound(begin); it != col.end() && it->first < end; ++it)
                out.data_[static_cast<size_t>(j)][it->first - begin] = it->second;
        }
        return out;
    }

    Mat select_cols(const std::vector<int>& idx) const {
        Mat out(rows_, static_cast<int>(idx.size()));
        for (size_t j = 0; j < idx.size(); ++j) {
            require(idx[j] >= 0 && idx[j] < cols_, err::DimensionMismatch, "column index");
            out.data_[j] = data_[static_cast<size_t>(idx[j])];
        }
        return out;
    }

    std::vector<Vec> to_dense_rows() const {
        std::vector<Vec> rows(static_cast<size_t>(rows_), zero_vec(cols_));
        for (int j = 0; j < cols_; ++j)
            for (const auto& [r, a] : data_[static_cast<size_t>(j)]) rows[static_cast<size_t>(r)][static_cast<size_t>(j)] = a;
        return rows;
    }

private:
    Mat combined(const Mat& b, bool subtract) const {
        require(rows_ == b.rows_ && cols_ == b.cols_, err::DimensionMismatch,
                "matrix sum shapes");
        Mat out = *this;
        for (int j = 0; j < cols_; ++j)
            for (const auto& [r, v] : b.data_[static_cast<size_t>(j)])
                out.add_at(r, j, subtract ? -v : v);
        return out;
    }

    int rows_, cols_;
    std::vector<std::map<int, Scalar>> data_;
};

inline Scalar dot_conj(const Vec& a, const Vec& b) {
    require(a.size() == b.size(), err::DimensionMismatch, "dot size mismatch");
    Scalar s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
    return s;
}

} // namespace gpl
