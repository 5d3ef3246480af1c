#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace powres {

/// Names of the ring variables x_1..x_n, in ring order.
struct Ring {
  std::vector<std::string> names;

  std::size_t size() const noexcept { return names.size(); }
  bool operator==(const Ring&) const = default;
};

/// A monomial in n variables, stored as its exponent vector.
class Monomial {
 public:
  Monomial() = default;
  /// The constant monomial 1 in `num_vars` variables.
  explicit Monomial(std::size_t num_vars) : exponents_(num_vars, 0) {}
  explicit Monomial(std::vector<int> exponents);

  std::size_t num_vars() const noexcept { return exponents_.size(); }
  std::span<const int> exponents() const noexcept { return exponents_; }
  int operator[](std::size_t i) const { return exponents_[i]; }

  int degree() const;
  bool is_one() const;
  bool is_square_free() const;
  bool divides(const Monomial& other) const;

  /// Exact quotient `*this / divisor`; throws if `divisor` does not divide.
  Monomial divided_by(const Monomial& divisor) const;
  Monomial pow(int k) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<int> exponents_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Renders `m` with the ring's variable names, e.g. "x^2*y"; "1" for the unit.
std::string format_monomial(const Ring& ring, const Monomial& m);

/// A monomial ideal with an ordered minimal generating set m_0..m_q.
class MonomialIdeal {
 public:
  /// Validates that the generators are pairwise distinct and non-dividing.
  MonomialIdeal(Ring ring, std::vector<Monomial> generators);

  /// Skips the minimality checks; used for deliberately degenerate inputs.
  static MonomialIdeal unchecked(Ring ring, std::vector<Monomial> generators);

  const Ring& ring() const noexcept { return ring_; }
  std::span<const Monomial> generators() const noexcept { return generators_; }
  const Monomial& generator(std::size_t i) const { return generators_[i]; }
  std::size_t size() const noexcept { return generators_.size(); }
  /// q, where the generators are m_0..m_q.
  int q() const noexcept { return static_cast<int>(generators_.size()) - 1; }
  bool is_square_free() const;

  std::string to_string() const;

 private:
  MonomialIdeal() = default;
  Ring ring_;
  std::vector<Monomial> generators_;
};

/// Parses the ideal text format: generators separated by commas or newlines,
/// each a `*`-separated product of `name` or `name^k`. An optional header
/// line `vars: x,y,z` fixes the variable order; otherwise variables are
/// ordered by first appearance. `#` starts a comment.
MonomialIdeal parse_ideal(std::string_view text);

/// Parses a single product such as "x^2*y" over a fixed ring ("1" allowed).
Monomial parse_monomial(const Ring& ring, std::string_view text);

/// A composition (a_0..a_q) of r = sum of entries; an element of N_r.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<int> entries);

  static ExponentVector unit(std::size_t length, std::size_t i);

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::span<const int> entries() const noexcept { return entries_; }
  int degree() const;

  /// supp(a) = { j > 0 : a_j != 0 } as a bit mask over 1..q (bit j).
  std::uint32_t support_mask() const;

  /// Entrywise a + delta * f_i; throws if an entry would become negative.
  ExponentVector shifted(std::size_t i, int delta) const;
  ExponentVector moved(std::size_t from, std::size_t to) const { return shifted(from, -1).shifted(to, 1); }

  friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend std::strong_ordering operator<=>(const ExponentVector&, const ExponentVector&) = default;

  std::string to_string() const;

 private:
  std::vector<int> entries_;
};

/// Canonical order on N_r: reverse lexicographic, so (r,0,..,0) comes first.
struct CanonicalOrder {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const { return a > b; }
};

/// All compositions of r into q+1 parts, in canonical order.
std::vector<ExponentVector> enumerate_Nr(int q, int r);

/// Position of `a` inside `enumerate_Nr(q, r)`; `nullopt` if absent.
std::optional<std::size_t> canonical_rank(std::span<const ExponentVector> nr, const ExponentVector& a);

/// m^a = m_0^{a_0} ... m_q^{a_q}.
Monomial power_generator(std::span<const Monomial> generators, const ExponentVector& a);
Monomial power_generator(const MonomialIdeal& ideal, const ExponentVector& a);

struct InjectivityResult {
  bool injective = true;
  std::optional<std::pair<ExponentVector, ExponentVector>> witness;
};

/// Checks that a -> m^a is injective on N_r.
InjectivityResult check_power_injectivity(const MonomialIdeal& ideal, int r);

/// Binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace powres
