#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gg {

// Dense row-major matrix of doubles. The whole pipeline runs in double
// precision so that gradient checks can use tight tolerances.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
    }

    static Matrix zeros(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }
    void setZero() { fill(0.0); }

    void require_shape(int r, int c, const std::string& what) const {
        if (rows_ != r || cols_ != c)
            throw std::invalid_argument(what + ": expected " + std::to_string(r) + "x" + std::to_string(c) +
                                        ", got " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// A named view over a flat block of doubles; used for optimizer updates and
// checkpoint serialization (the manifest declares tensors in list order).
struct ParamRef {
    std::string name;
    double* data = nullptr;
    std::size_t size = 0;
};

inline ParamRef param_ref(const std::string& name, Matrix& m) { return {name, m.data(), m.size()}; }
inline ParamRef param_ref(const std::string& name, std::vector<double>& v) { return {name, v.data(), v.size()}; }

}  // namespace gg
