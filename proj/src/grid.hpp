// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace peakshave {

// Dense row-major matrix indexed (converter, interval).
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<T>& data() const { return data_; }

  bool same_shape(std::size_t rows, std::size_t cols) const {
    return rows_ == rows && cols_ == cols;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
void require_shape(const Grid<T>& g, std::size_t rows, std::size_t cols,
                   const char* what) {
  if (!g.same_shape(rows, cols)) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(rows) + "x" +
                                std::to_string(cols) + " matrix, got " +
                                std::to_string(g.rows()) + "x" +
                                std::to_string(g.cols()));
  }
}

}  // namespace peakshave
