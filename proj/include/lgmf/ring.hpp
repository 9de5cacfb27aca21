#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lgmf {

using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

class ContextMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Variable {
  std::string name;
  std::size_t index = 0;
};

class RingContext;
using Ctx = std::shared_ptr<const RingContext>;

// Ordered list of variable names.  primed_pairs() links x_i with x_i' for
// contexts built by doubled(); it is empty otherwise.
class RingContext {
 public:
  static Ctx make(std::vector<std::string> names);
  // names followed by names with a trailing apostrophe, paired up
  static Ctx doubled(const std::vector<std::string>& names);
  // names with explicit pairs of indices (unprimed, primed)
  static Ctx make_paired(std::vector<std::string> names,
                         std::vector<std::pair<std::size_t, std::size_t>> pairs);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;
  Variable variable(const std::string& name) const { return {name, index(name)}; }
  const std::vector<std::pair<std::size_t, std::size_t>>& primed_pairs() const { return pairs_; }

  bool same_as(const RingContext& other) const { return this == &other || names_ == other.names_; }

 private:
  RingContext() = default;
  std::vector<std::string> names_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

bool same_context(const Ctx& a, const Ctx& b);

using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

// Graded lexicographic order, greatest first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse polynomial with rational coefficients.  A polynomial without a
// context is a constant; it combines with any context.
class Poly {
 public:
  using Terms = std::map<Exponents, Rational, GrlexGreater>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)
  Poly(Ctx ctx, const Rational& c);

  static Poly var(const Ctx& ctx, std::size_t i);
  static Poly var(const Ctx& ctx, const std::string& name) { return var(ctx, ctx->index(name)); }
  static Poly monomial(const Ctx& ctx, Exponents e, const Rational& c = 1);

  const Ctx& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;
  std::size_t size() const { return terms_.size(); }
  int degree() const;
  int degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;
  // leading term under grlex
  std::pair<Exponents, Rational> leading() const;

  Poly with_context(const Ctx& ctx) const;  // constant promotion or identity

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(Poly a, int c) { return a *= Rational(c); }
  friend Poly operator*(int c, Poly a) { return a *= Rational(c); }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(int e) const;
  void add_term(const Exponents& e, const Rational& c);

  std::string to_string() const;

 private:
  void adopt(const Ctx& ctx);
  Ctx ctx_;
  Terms terms_;
};

Poly add(const Poly& p, const Poly& q);
Poly mul(const Poly& p, const Poly& q);
Poly partial_derivative(const Poly& p, std::size_t var);
Poly partial_derivative(const Poly& p, const Variable& v);

// Substitute variables by polynomials: images[i] replaces variable i of p's
// context.  All images must share one target context.
Poly substitute(const Poly& p, const std::vector<Poly>& images, const Ctx& target);
// Replace a single variable by a polynomial in the same context.
Poly substitute(const Poly& p, std::size_t var, const Poly& value);

// Injective renaming of variables, given by name pairs; variables not listed
// keep their names.  The target context must contain every resulting name.
Poly rename(const Poly& p, const std::vector<std::pair<std::string, std::string>>& map,
            const Ctx& target);
Poly rename(const Poly& p, const std::vector<std::pair<std::string, std::string>>& map);
// Move p into a context containing all of its variables (matched by name).
Poly embed(const Poly& p, const Ctx& target);

// ctx followed by one fresh primed name for each listed variable; the new
// indices are written to fresh.  Primed pairs of ctx are kept.
Ctx with_fresh_copies(const Ctx& ctx, const std::vector<std::size_t>& vars, std::vector<std::size_t>& fresh);

// A block of variable pairs (x_i, x_i'), given by context indices.
using PairBlock = std::vector<std::pair<std::size_t, std::size_t>>;

// Apply t_{j} for the listed positions j of the block (x_j -> x_j').
Poly prime_vars(const Poly& p, const PairBlock& block, const std::vector<std::size_t>& positions);

// (^{t_1..t_{i-1}} p - ^{t_1..t_i} p) / (x_i - x_i'), with 0-based i.
Poly divided_difference(const Poly& p, const PairBlock& block, std::size_t i);
// Uses the context's primed pairs.
Poly divided_difference(const Poly& p, std::size_t i);
// Variant where variables are primed in the order sigma(0), sigma(1), ...
Poly divided_difference_ordered(const Poly& p, const PairBlock& block, std::size_t i,
                                const std::vector<std::size_t>& sigma);

// Parses sums of products of rationals, variables, powers and parentheses.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& bare_message() const { return bare_; }

 private:
  std::string bare_;
  std::size_t line_;
  std::size_t column_;
};

Poly parse_poly(const std::string& text, const Ctx& ctx, std::size_t line = 1,
                std::size_t column = 1);

}  // namespace lgmf
