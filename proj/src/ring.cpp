#include "lgmf/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace lgmf {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- contexts

Ctx RingContext::make(std::vector<std::string> names) {
  return make_paired(std::move(names), {});
}

Ctx RingContext::doubled(const std::vector<std::string>& names) {
  std::vector<std::string> all = names;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < names.size(); ++i) {
    all.push_back(names[i] + "'");
    pairs.emplace_back(i, names.size() + i);
  }
  return make_paired(std::move(all), std::move(pairs));
}

Ctx RingContext::make_paired(std::vector<std::string> names,
                             std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name: " + n);
  }
  std::set<std::size_t> used;
  for (auto [a, b] : pairs) {
    if (a >= names.size() || b >= names.size() || a == b)
      throw std::invalid_argument("bad primed pair");
    if (!used.insert(a).second || !used.insert(b).second)
      throw std::invalid_argument("primed pairs must be disjoint");
  }
  auto* ctx = new RingContext();
  ctx->names_ = std::move(names);
  ctx->pairs_ = std::move(pairs);
  return Ctx(ctx);
}

std::optional<std::size_t> RingContext::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t RingContext::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::invalid_argument("unknown variable: " + name);
  return *i;
}

bool same_context(const Ctx& a, const Ctx& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

// ---------------------------------------------------------------- monomials

int total_degree(const Exponents& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Exponents{}, c);
}

Poly::Poly(Ctx ctx, const Rational& c) : ctx_(std::move(ctx)) {
  if (c != 0) terms_.emplace(Exponents(ctx_ ? ctx_->size() : 0, 0), c);
}

Poly Poly::var(const Ctx& ctx, std::size_t i) {
  if (!ctx || i >= ctx->size()) throw std::out_of_range("variable index out of range");
  Exponents e(ctx->size(), 0);
  e[i] = 1;
  return monomial(ctx, std::move(e));
}

Poly Poly::monomial(const Ctx& ctx, Exponents e, const Rational& c) {
  if (!ctx || e.size() != ctx->size()) throw std::invalid_argument("exponent length mismatch");
  for (int v : e)
    if (v < 0) throw std::invalid_argument("negative exponent");
  Poly p;
  p.ctx_ = ctx;
  if (c != 0) p.terms_.emplace(std::move(e), c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return total_degree(terms_.begin()->first) == 0;
}

Rational Poly::constant_term() const {
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == 0) return c;
  return 0;
}

Rational Poly::coefficient(const Exponents& e) const {
  if (!ctx_) {
    if (total_degree(e) == 0) return constant_term();
    return 0;
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.begin()->first);
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_)
    if (var < e.size()) d = std::max(d, e[var]);
  return d;
}

bool Poly::involves(std::size_t var) const {
  for (const auto& [e, c] : terms_)
    if (var < e.size() && e[var] > 0) return true;
  return false;
}

std::pair<Exponents, Rational> Poly::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.begin();
}

void Poly::adopt(const Ctx& ctx) {
  if (same_context(ctx_, ctx)) {
    if (!ctx_) ctx_ = ctx;
    return;
  }
  if (!ctx) return;
  if (ctx_) throw ContextMismatch("polynomials from different rings");
  Terms t;
  for (auto& [e, c] : terms_) t.emplace(Exponents(ctx->size(), 0), c);
  terms_ = std::move(t);
  ctx_ = ctx;
}

Poly Poly::with_context(const Ctx& ctx) const {
  Poly p = *this;
  p.adopt(ctx);
  return p;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.ctx_ && !ctx_) adopt(o.ctx_);
  if (!same_context(ctx_, o.ctx_)) {
    if (o.ctx_) throw ContextMismatch("polynomials from different rings");
    return *this += o.with_context(ctx_);
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.ctx_ && !ctx_) adopt(o.ctx_);
  if (!same_context(ctx_, o.ctx_)) {
    if (o.ctx_) throw ContextMismatch("polynomials from different rings");
    return *this -= o.with_context(ctx_);
  }
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [e, v] : p.terms_) v = -v;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  Ctx ctx = a.ctx_ ? a.ctx_ : b.ctx_;
  if (a.ctx_ && b.ctx_ && !same_context(a.ctx_, b.ctx_))
    throw ContextMismatch("polynomials from different rings");
  Poly r;
  r.ctx_ = ctx;
  if (a.is_zero() || b.is_zero()) return r;
  const Poly& pa = a.ctx_ ? a : a.with_context(ctx);
  const Poly pb_holder = b.ctx_ ? Poly() : b.with_context(ctx);
  const Poly& pb = b.ctx_ ? b : pb_holder;
  Exponents e;
  Rational c;
  for (const auto& [ea, ca] : pa.terms_) {
    for (const auto& [eb, cb] : pb.terms_) {
      e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      c = ca * cb;
      r.add_term(e, c);
    }
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.ctx_ && b.ctx_ && !same_context(a.ctx_, b.ctx_)) return false;
  if (same_context(a.ctx_, b.ctx_)) return a.terms_ == b.terms_;
  // one side is context-free, hence constant
  return a.is_constant() && b.is_constant() && a.constant_term() == b.constant_term();
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  Poly r(ctx_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_vars = total_degree(e) > 0;
    bool wrote = false;
    if (!has_vars || a != 1) {
      os << lgmf::to_string(a);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << ctx_->name(i);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

Poly add(const Poly& p, const Poly& q) { return p + q; }
Poly mul(const Poly& p, const Poly& q) { return p * q; }

Poly partial_derivative(const Poly& p, std::size_t var) {
  Poly r(p.context(), 0);
  if (!p.context()) return r;
  if (var >= p.context()->size()) throw std::out_of_range("unknown variable");
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

Poly partial_derivative(const Poly& p, const Variable& v) {
  if (!p.context()) return Poly();
  auto idx = p.context()->find(v.name);
  if (!idx) throw std::invalid_argument("unknown variable: " + v.name);
  return partial_derivative(p, *idx);
}

Poly substitute(const Poly& p, const std::vector<Poly>& images, const Ctx& target) {
  Poly r(target, 0);
  if (p.is_zero()) return r;
  if (!p.context()) return p.with_context(target);
  if (images.size() != p.context()->size()) throw std::invalid_argument("substitution size mismatch");
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t i, int k) -> const Poly& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(Poly(target, 1));
    while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * images[i]);
    return v[k];
  };
  for (const auto& [e, c] : p.terms()) {
    Poly t(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t = t * power(i, e[i]);
    r += t;
  }
  return r;
}

Poly substitute(const Poly& p, std::size_t var, const Poly& value) {
  const Ctx& ctx = p.context();
  if (!ctx) return p;
  std::vector<Poly> images;
  images.reserve(ctx->size());
  for (std::size_t i = 0; i < ctx->size(); ++i)
    images.push_back(i == var ? value.with_context(ctx) : Poly::var(ctx, i));
  return substitute(p, images, ctx);
}

namespace {

// Monomial-level renaming by an index map (exponents add on collisions).
Poly remap(const Poly& p, const std::vector<std::size_t>& target_index, const Ctx& target) {
  Poly r(target, 0);
  for (const auto& [e, c] : p.terms()) {
    Exponents f(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) f[target_index[i]] += e[i];
    r.add_term(f, c);
  }
  return r;
}

}  // namespace

Poly rename(const Poly& p, const std::vector<std::pair<std::string, std::string>>& map,
            const Ctx& target) {
  if (!p.context()) return p.with_context(target);
  const Ctx& src = p.context();
  std::set<std::string> images;
  for (const auto& [from, to] : map) {
    if (!src->find(from)) throw std::invalid_argument("unknown variable: " + from);
    if (!images.insert(to).second) throw std::invalid_argument("non-injective renaming onto " + to);
  }
  std::vector<std::size_t> idx(src->size(), 0);
  std::vector<bool> used(src->size(), false);
  std::set<std::size_t> hit;
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) used[i] = true;
  for (std::size_t i = 0; i < src->size(); ++i) {
    std::string name = src->name(i);
    for (const auto& [from, to] : map)
      if (from == name) {
        name = to;
        break;
      }
    auto t = target->find(name);
    if (!t) {
      if (used[i]) throw std::invalid_argument("variable " + name + " missing from target ring");
      continue;
    }
    idx[i] = *t;
    if (used[i] && !hit.insert(*t).second) throw std::invalid_argument("non-injective renaming onto " + name);
  }
  return remap(p, idx, target);
}

Poly rename(const Poly& p, const std::vector<std::pair<std::string, std::string>>& map) {
  return rename(p, map, p.context());
}

Poly embed(const Poly& p, const Ctx& target) { return rename(p, {}, target); }

Ctx with_fresh_copies(const Ctx& ctx, const std::vector<std::size_t>& vars, std::vector<std::size_t>& fresh) {
  std::vector<std::string> names = ctx->names();
  std::set<std::string> taken(names.begin(), names.end());
  fresh.clear();
  for (auto v : vars) {
    std::string n = ctx->name(v) + "'";
    while (taken.count(n)) n += "'";
    taken.insert(n);
    fresh.push_back(names.size());
    names.push_back(n);
  }
  return RingContext::make_paired(std::move(names), ctx->primed_pairs());
}

Poly prime_vars(const Poly& p, const PairBlock& block, const std::vector<std::size_t>& positions) {
  const Ctx& ctx = p.context();
  if (!ctx) return p;
  std::vector<std::size_t> idx(ctx->size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t j : positions) idx.at(block.at(j).first) = block.at(j).second;
  return remap(p, idx, ctx);
}

namespace {

// (f - t f)/(x - x') for the pair (x, x'), computed termwise:
// c x^a x'^b r  ->  c r sum_{k<a} x^k x'^{a-1-k+b}.
Poly difference_quotient(const Poly& f, std::size_t x, std::size_t xp) {
  Poly r(f.context(), 0);
  for (const auto& [e, c] : f.terms()) {
    int a = e[x];
    if (a == 0) continue;
    int b = e[xp];
    Exponents g = e;
    for (int k = 0; k < a; ++k) {
      g[x] = k;
      g[xp] = a - 1 - k + b;
      r.add_term(g, c);
    }
  }
  return r;
}

}  // namespace

Poly divided_difference_ordered(const Poly& p, const PairBlock& block, std::size_t i,
                                const std::vector<std::size_t>& sigma) {
  if (i >= block.size()) throw std::out_of_range("divided difference index out of range");
  if (sigma.size() != block.size()) throw std::invalid_argument("permutation size mismatch");
  if (!p.context()) return Poly();
  std::vector<std::size_t> first(sigma.begin(), sigma.begin() + static_cast<long>(i));
  Poly f = prime_vars(p, block, first);
  auto [x, xp] = block.at(sigma[i]);
  return difference_quotient(f, x, xp);
}

Poly divided_difference(const Poly& p, const PairBlock& block, std::size_t i) {
  std::vector<std::size_t> id(block.size());
  for (std::size_t k = 0; k < id.size(); ++k) id[k] = k;
  return divided_difference_ordered(p, block, i, id);
}

Poly divided_difference(const Poly& p, std::size_t i) {
  if (!p.context()) return Poly();
  const auto& pairs = p.context()->primed_pairs();
  if (pairs.empty()) throw std::invalid_argument("ring has no primed variables");
  return divided_difference(p, pairs, i);
}

// ---------------------------------------------------------------- parser

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      bare_(msg),
      line_(line),
      column_(column) {}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& s, const Ctx& ctx, std::size_t line, std::size_t col)
      : s_(s), ctx_(ctx), line_(line), col_(col) {}

  Poly parse() {
    skip();
    if (pos_ >= s_.size()) fail("empty polynomial");
    Poly p = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p.with_context(ctx_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Poly expr() {
    Poly acc(ctx_, 0);
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (peek('+') || peek('-')) {
        if (s_[pos_] == '-') sign = -1;
        advance();
      } else if (!first) {
        break;
      }
      Poly t = term();
      if (sign < 0) t = -t;
      acc += t;
      first = false;
      if (!(peek('+') || peek('-'))) break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (peek('*') || peek('/')) {
      char op = s_[pos_];
      std::size_t l = line_, c = col_;
      advance();
      Poly f = factor();
      if (op == '*') {
        acc = acc * f;
      } else {
        if (!f.is_constant() || f.is_zero()) throw ParseError("division by a non-constant or zero", l, c);
        acc *= Rational(1) / f.constant_term();
      }
    }
    return acc;
  }

  Poly factor() {
    skip();
    if (peek('-')) {
      advance();
      return -factor();
    }
    if (peek('+')) {
      advance();
      return factor();
    }
    Poly b = base();
    if (peek('^')) {
      advance();
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
      if (start == pos_) fail("expected non-negative integer exponent");
      b = b.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return b;
  }

  Poly base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of polynomial");
    char ch = s_[pos_];
    if (ch == '(') {
      advance();
      Poly p = expr();
      if (!peek(')')) fail("expected ')'");
      advance();
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
      Rational q(s_.substr(start, pos_ - start), 10);
      return Poly(ctx_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t l = line_, c = col_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '_' || s_[pos_] == '\''))
        advance();
      std::string name = s_.substr(start, pos_ - start);
      auto idx = ctx_ ? ctx_->find(name) : std::nullopt;
      if (!idx) throw ParseError("unknown variable '" + name + "'", l, c);
      return Poly::var(ctx_, *idx);
    }
    fail(std::string("unexpected '") + ch + "'");
  }

  const std::string& s_;
  Ctx ctx_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_;
};

}  // namespace

Poly parse_poly(const std::string& text, const Ctx& ctx, std::size_t line, std::size_t column) {
  PolyParser p(text, ctx, line, column);
  return p.parse();
}

}  // namespace lgmf
