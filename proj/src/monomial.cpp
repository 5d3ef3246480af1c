#include "powres/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "powres/errors.hpp"

namespace powres {

namespace {

int checked_add(int a, int b) {
  int out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("monomial exponent overflow");
  return out;
}

int checked_mul(int a, int b) {
  int out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("monomial exponent overflow");
  return out;
}

void require_same_ring(const Monomial& a, const Monomial& b) {
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("monomials from different rings");
}

}  // namespace

Monomial::Monomial(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_)
    if (e < 0) throw std::invalid_argument("negative exponent in monomial");
}

int Monomial::degree() const {
  int d = 0;
  for (int e : exponents_) d = checked_add(d, e);
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](int e) { return e == 0; });
}

bool Monomial::is_square_free() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](int e) { return e <= 1; });
}

bool Monomial::divides(const Monomial& other) const {
  require_same_ring(*this, other);
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    if (exponents_[i] > other.exponents_[i]) return false;
  return true;
}

Monomial Monomial::divided_by(const Monomial& divisor) const {
  if (!divisor.divides(*this)) throw std::invalid_argument("inexact monomial division");
  std::vector<int> out(exponents_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = exponents_[i] - divisor.exponents_[i];
  return Monomial(std::move(out));
}

Monomial Monomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  std::vector<int> out(exponents_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_mul(exponents_[i], k);
  return Monomial(std::move(out));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  require_same_ring(a, b);
  std::vector<int> out(a.num_vars());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_add(a.exponents_[i], b.exponents_[i]);
  return Monomial(std::move(out));
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  require_same_ring(a, b);
  std::vector<int> out(a.num_vars());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(a.exponents_[i], b.exponents_[i]);
  return Monomial(std::move(out));
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  require_same_ring(a, b);
  std::vector<int> out(a.num_vars());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(a.exponents_[i], b.exponents_[i]);
  return Monomial(std::move(out));
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int e : m.exponents()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string format_monomial(const Ring& ring, const Monomial& m) {
  if (m.num_vars() != ring.size()) throw std::invalid_argument("monomial does not belong to ring");
  std::string out;
  for (std::size_t i = 0; i < m.num_vars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.names[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// MonomialIdeal

MonomialIdeal::MonomialIdeal(Ring ring, std::vector<Monomial> generators)
    : ring_(std::move(ring)), generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("an ideal needs at least one generator");
  for (const auto& g : generators_)
    if (g.num_vars() != ring_.size()) throw std::invalid_argument("generator does not belong to ring");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      if (i == j) continue;
      if (generators_[i] == generators_[j])
        throw DomainError("duplicate generator " + format_monomial(ring_, generators_[i]));
      if (generators_[i].divides(generators_[j]))
        throw DomainError("generating set is not minimal: " + format_monomial(ring_, generators_[i]) +
                          " divides " + format_monomial(ring_, generators_[j]));
    }
  }
}

MonomialIdeal MonomialIdeal::unchecked(Ring ring, std::vector<Monomial> generators) {
  MonomialIdeal ideal;
  ideal.ring_ = std::move(ring);
  ideal.generators_ = std::move(generators);
  return ideal;
}

bool MonomialIdeal::is_square_free() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const Monomial& m) { return m.is_square_free(); });
}

std::string MonomialIdeal::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += format_monomial(ring_, generators_[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t line_start = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  std::size_t column() const { return pos - line_start + 1; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, column()); }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      line_start = pos + 1;
    }
    ++pos;
  }

  // Skips blanks and comments but not newlines.
  void skip_inline_space() {
    while (!done()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (!done() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string read_identifier(Cursor& cur) {
  if (!ident_start(cur.peek())) cur.fail("expected a variable name");
  std::size_t begin = cur.pos;
  while (!cur.done() && ident_char(cur.peek())) cur.advance();
  return std::string(cur.text.substr(begin, cur.pos - begin));
}

int read_exponent(Cursor& cur) {
  if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.fail("expected an exponent");
  long long value = 0;
  while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    value = value * 10 + (cur.peek() - '0');
    if (value > std::numeric_limits<int>::max()) cur.fail("exponent too large");
    cur.advance();
  }
  return static_cast<int>(value);
}

// Recognizes an optional `vars:` header line and returns its names.
std::optional<std::vector<std::string>> read_header(Cursor& cur) {
  // Skip leading blank and comment lines.
  while (true) {
    cur.skip_inline_space();
    if (cur.peek() == '\n') {
      cur.advance();
      continue;
    }
    break;
  }
  std::string_view rest = cur.text.substr(cur.pos);
  if (rest.substr(0, 4) != "vars") return std::nullopt;
  std::size_t k = 4;
  while (k < rest.size() && (rest[k] == ' ' || rest[k] == '\t')) ++k;
  if (k >= rest.size() || rest[k] != ':') return std::nullopt;
  for (std::size_t i = 0; i <= k; ++i) cur.advance();

  std::vector<std::string> names;
  while (true) {
    cur.skip_inline_space();
    std::string name = read_identifier(cur);
    if (std::find(names.begin(), names.end(), name) != names.end())
      cur.fail("variable '" + name + "' declared twice");
    names.push_back(std::move(name));
    cur.skip_inline_space();
    if (cur.peek() == ',') {
      cur.advance();
      continue;
    }
    if (cur.done()) break;
    if (cur.peek() != '\n') cur.fail("expected ',' or end of line in vars header");
    cur.advance();
    break;
  }
  return names;
}

}  // namespace

MonomialIdeal parse_ideal(std::string_view text) {
  Cursor cur{text};
  auto header = read_header(cur);
  const bool fixed_vars = header.has_value();
  std::vector<std::string> names = fixed_vars ? *header : std::vector<std::string>{};
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = i;

  struct Factor {
    std::size_t var;
    int exponent;
  };
  struct Term {
    std::vector<Factor> factors;
    std::size_t line, column;
  };
  std::vector<Term> terms;

  bool expect_term = true;  // false right after a complete term
  bool after_comma = false;
  while (true) {
    cur.skip_inline_space();
    if (cur.done()) break;
    char c = cur.peek();
    if (c == '\n' || c == ',') {
      if (c == ',') {
        if (expect_term) cur.fail("empty generator");
        after_comma = true;
      }
      cur.advance();
      expect_term = true;
      continue;
    }
    if (!expect_term) cur.fail("expected ',' or newline between generators");
    Term term{{}, cur.line, cur.column()};
    while (true) {
      cur.skip_inline_space();
      std::size_t var_line = cur.line, var_col = cur.column();
      std::string name = read_identifier(cur);
      auto it = index.find(name);
      std::size_t var = 0;
      if (it == index.end()) {
        if (fixed_vars) throw ParseError("unknown variable '" + name + "'", var_line, var_col);
        var = names.size();
        names.push_back(name);
        index.emplace(name, var);
      } else {
        var = it->second;
      }
      int exponent = 1;
      cur.skip_inline_space();
      if (cur.peek() == '^') {
        cur.advance();
        cur.skip_inline_space();
        exponent = read_exponent(cur);
        cur.skip_inline_space();
      }
      term.factors.push_back({var, exponent});
      if (cur.peek() == '*') {
        cur.advance();
        continue;
      }
      break;
    }
    terms.push_back(std::move(term));
    expect_term = false;
    after_comma = false;
  }
  if (after_comma) cur.fail("trailing ','");
  if (terms.empty()) cur.fail("no generators");

  Ring ring{names};
  std::vector<Monomial> gens;
  for (const auto& term : terms) {
    std::vector<int> exps(names.size(), 0);
    for (const auto& f : term.factors) {
      if (__builtin_add_overflow(exps[f.var], f.exponent, &exps[f.var]))
        throw ParseError("exponent overflow", term.line, term.column);
    }
    Monomial m(std::move(exps));
    if (m.is_one()) throw ParseError("constant generator", term.line, term.column);
    gens.push_back(std::move(m));
  }
  return MonomialIdeal(std::move(ring), std::move(gens));
}

Monomial parse_monomial(const Ring& ring, std::string_view text) {
  Cursor cur{text};
  std::vector<int> exps(ring.size(), 0);
  cur.skip_inline_space();
  if (cur.peek() == '1') {
    cur.advance();
    cur.skip_inline_space();
    if (!cur.done()) cur.fail("unexpected text after '1'");
    return Monomial(std::move(exps));
  }
  while (true) {
    cur.skip_inline_space();
    std::size_t line = cur.line, col = cur.column();
    std::string name = read_identifier(cur);
    auto it = std::find(ring.names.begin(), ring.names.end(), name);
    if (it == ring.names.end()) throw ParseError("unknown variable '" + name + "'", line, col);
    int exponent = 1;
    cur.skip_inline_space();
    if (cur.peek() == '^') {
      cur.advance();
      cur.skip_inline_space();
      exponent = read_exponent(cur);
      cur.skip_inline_space();
    }
    auto& slot = exps[static_cast<std::size_t>(it - ring.names.begin())];
    if (__builtin_add_overflow(slot, exponent, &slot)) cur.fail("exponent overflow");
    if (cur.peek() == '*') {
      cur.advance();
      continue;
    }
    break;
  }
  cur.skip_inline_space();
  if (!cur.done()) cur.fail("unexpected character '" + std::string(1, cur.peek()) + "'");
  return Monomial(std::move(exps));
}

// ---------------------------------------------------------------------------
// ExponentVector and N_r

ExponentVector::ExponentVector(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw std::invalid_argument("negative entry in exponent vector");
}

ExponentVector ExponentVector::unit(std::size_t length, std::size_t i) {
  std::vector<int> e(length, 0);
  e.at(i) = 1;
  return ExponentVector(std::move(e));
}

int ExponentVector::degree() const {
  int d = 0;
  for (int e : entries_) d = checked_add(d, e);
  return d;
}

std::uint32_t ExponentVector::support_mask() const {
  if (entries_.size() > 32) throw std::invalid_argument("exponent vector too long for a support mask");
  std::uint32_t mask = 0;
  for (std::size_t j = 1; j < entries_.size(); ++j)
    if (entries_[j] != 0) mask |= (std::uint32_t{1} << j);
  return mask;
}

ExponentVector ExponentVector::shifted(std::size_t i, int delta) const {
  std::vector<int> e = entries_;
  e.at(i) = checked_add(e[i], delta);
  if (e[i] < 0) throw std::invalid_argument("exponent vector entry would become negative");
  return ExponentVector(std::move(e));
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent vector length mismatch");
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(a[i], b[i]);
  return ExponentVector(std::move(e));
}

std::string ExponentVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out + ")";
}

std::vector<ExponentVector> enumerate_Nr(int q, int r) {
  if (q < 0) throw std::invalid_argument("q must be nonnegative");
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  std::vector<ExponentVector> out;
  out.reserve(binomial(q + r, r));
  std::vector<int> current(q + 1, 0);
  // Descending lexicographic: put as much as possible in the earliest slot.
  std::function<void(int, int)> rec = [&](int slot, int remaining) {
    if (slot == q) {
      current[slot] = remaining;
      out.emplace_back(current);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      current[slot] = v;
      rec(slot + 1, remaining - v);
    }
  };
  rec(0, r);
  return out;
}

std::optional<std::size_t> canonical_rank(std::span<const ExponentVector> nr, const ExponentVector& a) {
  auto it = std::lower_bound(nr.begin(), nr.end(), a, CanonicalOrder{});
  if (it == nr.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - nr.begin());
}

Monomial power_generator(std::span<const Monomial> generators, const ExponentVector& a) {
  if (a.size() != generators.size())
    throw std::invalid_argument("exponent vector length does not match the number of generators");
  Monomial out(generators.front().num_vars());
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (a[i] != 0) out = out * generators[i].pow(a[i]);
  return out;
}

Monomial power_generator(const MonomialIdeal& ideal, const ExponentVector& a) {
  return power_generator(ideal.generators(), a);
}

InjectivityResult check_power_injectivity(const MonomialIdeal& ideal, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  const auto nr = enumerate_Nr(ideal.q(), r);
  std::unordered_map<Monomial, std::size_t, MonomialHash> seen;
  for (std::size_t k = 0; k < nr.size(); ++k) {
    auto [it, inserted] = seen.emplace(power_generator(ideal, nr[k]), k);
    if (!inserted) return {false, std::make_pair(nr[it->second], nr[k])};
  }
  return {};
}

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace powres
