#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tempground {

/// Dense row-major matrix of 32-bit floats. Row i is one frame.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, float fill = 0.0f)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<float> data);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    std::span<const float> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<float> row(std::size_t i) noexcept {
        return {data_.data() + i * cols_, cols_};
    }

    float operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    float& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

    std::span<const float> values() const noexcept { return data_; }
    std::span<float> values() noexcept { return data_; }

    bool all_finite() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<float> data_;
};

} // namespace tempground
