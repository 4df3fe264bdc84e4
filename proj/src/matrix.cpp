#include "tempground/matrix.hpp"

#include "tempground/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tempground {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw InvalidInput("matrix data size does not match its shape");
    }
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
}

} // namespace tempground
