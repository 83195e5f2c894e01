#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcard {

/// Dense N x C x H x W shape. Vectors and matrices are stored with trailing
/// dims of 1 and a logical rank for serialization.
struct Shape {
    std::array<int64_t, 4> d{1, 1, 1, 1};  // n, c, h, w
    int rank = 4;

    static Shape nchw(int64_t n, int64_t c, int64_t h, int64_t w) {
        return Shape{{n, c, h, w}, 4};
    }
    static Shape mat(int64_t rows, int64_t cols) { return Shape{{rows, cols, 1, 1}, 2}; }
    static Shape vec(int64_t len) { return Shape{{len, 1, 1, 1}, 1}; }
    static Shape scalar() { return Shape{{1, 1, 1, 1}, 0}; }

    int64_t n() const { return d[0]; }
    int64_t c() const { return d[1]; }
    int64_t h() const { return d[2]; }
    int64_t w() const { return d[3]; }
    int64_t numel() const { return d[0] * d[1] * d[2] * d[3]; }

    bool same_dims(const Shape& o) const { return d == o.d; }
    bool operator==(const Shape& o) const { return d == o.d && rank == o.rank; }

    std::string str() const {
        return std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" +
               std::to_string(d[2]) + "x" + std::to_string(d[3]);
    }
};

/// Plain dense tensor value. The autodiff graph wraps these in nodes; this
/// type itself carries no gradient.
template <typename T>
struct Tensor {
    Shape shape;
    std::vector<T> data;

    Tensor() = default;
    explicit Tensor(Shape s) : shape(s), data(static_cast<size_t>(s.numel()), T(0)) {}
    Tensor(Shape s, std::vector<T> values) : shape(s), data(std::move(values)) {
        if (static_cast<int64_t>(data.size()) != shape.numel())
            throw std::invalid_argument("tensor data length " + std::to_string(data.size()) +
                                        " does not match shape " + shape.str());
    }

    int64_t numel() const { return shape.numel(); }
    bool empty() const { return data.empty(); }

    T& at(int64_t n, int64_t c, int64_t y, int64_t x) {
        return data[((n * shape.d[1] + c) * shape.d[2] + y) * shape.d[3] + x];
    }
    const T& at(int64_t n, int64_t c, int64_t y, int64_t x) const {
        return data[((n * shape.d[1] + c) * shape.d[2] + y) * shape.d[3] + x];
    }

    void fill(T v) { std::fill(data.begin(), data.end(), v); }

    bool all_finite() const {
        for (T v : data)
            if (!std::isfinite(static_cast<double>(v))) return false;
        return true;
    }
};

template <typename T>
Tensor<T> tensor_like(const Tensor<T>& t) {
    return Tensor<T>(t.shape);
}

template <typename T>
void check_finite(const Tensor<T>& t, const char* where) {
    if (!t.all_finite())
        throw std::runtime_error(std::string("non-finite value in ") + where);
}

}  // namespace dcard
