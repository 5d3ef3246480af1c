#include "powres/linalg.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <utility>

namespace powres {

Field Field::prime(int p) {
  if (p < 2) throw std::invalid_argument("field characteristic must be a prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument(std::to_string(p) + " is not prime");
  return Field{p};
}

std::string Field::name() const { return characteristic == 0 ? "Q" : "F" + std::to_string(characteristic); }

std::vector<Field> parse_fields(std::string_view text) {
  std::vector<Field> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string token(text.substr(pos, comma - pos));
    while (!token.empty() && token.back() == ' ') token.pop_back();
    while (!token.empty() && token.front() == ' ') token.erase(token.begin());
    if (token.empty()) throw std::invalid_argument("empty entry in field list");
    if (token == "q" || token == "Q" || token == "0") {
      out.push_back(Field::rationals());
    } else {
      std::size_t used = 0;
      int p = 0;
      try {
        p = std::stoi(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw std::invalid_argument("unknown field '" + token + "'");
      out.push_back(Field::prime(p));
    }
    pos = comma + 1;
  }
  return out;
}

namespace {

std::size_t rank_rational(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<long>(m(i, j));

  // Bareiss: after step k every entry is a (k+1)-minor, so divisions are exact.
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = a[r][col] * a[i][j] - a[i][col] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
  }
  return r;
}

std::size_t rank_mod_p(const IntMatrix& m, std::int64_t p) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((m(i, j) % p) + p) % p;

  auto inverse = [p](std::int64_t x) {
    std::int64_t result = 1, base = x, e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  };

  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    const std::int64_t inv = inverse(a[r][col]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      const std::int64_t factor = a[i][col] * inv % p;
      for (std::size_t j = col; j < cols; ++j) a[i][j] = ((a[i][j] - factor * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const IntMatrix& m, Field field) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (field.characteristic == 0) return rank_rational(m);
  return rank_mod_p(m, field.characteristic);
}

}  // namespace powres
