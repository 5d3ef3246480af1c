#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace powres {

/// A coefficient field: the rationals (characteristic 0) or F_p.
struct Field {
  int characteristic = 0;

  static Field rationals() { return Field{0}; }
  static Field prime(int p);

  std::string name() const;
  bool operator==(const Field&) const = default;
};

/// Parses a list such as "q,2,3,5" ("q" or "0" for the rationals).
std::vector<Field> parse_fields(std::string_view text);

/// Dense integer matrix in row-major order.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Rank over `field`. Over the rationals this is fraction-free Gaussian
/// elimination on big integers, so the result is exact for any entries.
std::size_t rank(const IntMatrix& m, Field field);

}  // namespace powres
