#include "lgmf/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "lgmf/unit.hpp"

namespace lgmf {

WorkspaceError::WorkspaceError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      bare_(msg),
      line_(line),
      column_(column) {}

namespace {

struct Pos {
  std::size_t line = 1, column = 1;
};

// One statement with the source position of every character.
struct Statement {
  std::string text;
  std::vector<Pos> pos;
  Pos start() const { return pos.empty() ? Pos{} : pos.front(); }
};

std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> out;
  Statement cur;
  int depth = 0;
  std::size_t line = 1, col = 1;
  bool comment = false;
  auto flush = [&] {
    // trim
    std::size_t a = 0, b = cur.text.size();
    while (a < b && std::isspace(static_cast<unsigned char>(cur.text[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(cur.text[b - 1]))) --b;
    if (a < b) {
      Statement s;
      s.text = cur.text.substr(a, b - a);
      s.pos.assign(cur.pos.begin() + static_cast<long>(a), cur.pos.begin() + static_cast<long>(b));
      out.push_back(std::move(s));
    }
    cur = Statement{};
  };
  for (char ch : text) {
    if (ch == '\n') {
      comment = false;
      if (depth > 0) {
        cur.text.push_back(' ');
        cur.pos.push_back({line, col});
      } else {
        flush();
      }
      ++line;
      col = 1;
      continue;
    }
    if (ch == '#') comment = true;
    if (!comment) {
      if (ch == '[') ++depth;
      if (ch == ']') depth = std::max(0, depth - 1);
      cur.text.push_back(ch == '\t' || ch == '\r' ? ' ' : ch);
      cur.pos.push_back({line, col});
    }
    ++col;
  }
  if (depth > 0 && !cur.text.empty()) throw WorkspaceError("unbalanced '['", cur.start().line, cur.start().column);
  flush();
  return out;
}

class Cursor {
 public:
  explicit Cursor(const Statement& s) : s_(s) {}

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, i_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t i) const {
    Pos p = i < s_.pos.size() ? s_.pos[i] : (s_.pos.empty() ? Pos{} : Pos{s_.pos.back().line, s_.pos.back().column + 1});
    throw WorkspaceError(msg, p.line, p.column);
  }
  Pos pos_at(std::size_t i) const {
    return i < s_.pos.size() ? s_.pos[i] : (s_.pos.empty() ? Pos{} : Pos{s_.pos.back().line, s_.pos.back().column + 1});
  }
  void skip() {
    while (i_ < s_.text.size() && std::isspace(static_cast<unsigned char>(s_.text[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.text.size();
  }
  std::size_t offset() const { return i_; }
  char peek() {
    skip();
    return i_ < s_.text.size() ? s_.text[i_] : '\0';
  }
  bool accept(const std::string& tok) {
    skip();
    if (s_.text.compare(i_, tok.size(), tok) != 0) return false;
    // keywords must not run into an identifier
    if (std::isalpha(static_cast<unsigned char>(tok.back())) && i_ + tok.size() < s_.text.size() &&
        is_ident_char(s_.text[i_ + tok.size()]))
      return false;
    i_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
  }
  std::optional<std::string> try_ident() {
    skip();
    if (i_ >= s_.text.size()) return std::nullopt;
    char c = s_.text[i_];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) return std::nullopt;
    std::size_t b = i_;
    while (i_ < s_.text.size() && is_ident_char(s_.text[i_])) ++i_;
    return s_.text.substr(b, i_ - b);
  }
  std::string ident(const std::string& what) {
    auto id = try_ident();
    if (!id) fail("expected " + what);
    return *id;
  }
  // the rest of the statement
  std::pair<std::string, std::size_t> rest() {
    skip();
    std::size_t b = i_;
    i_ = s_.text.size();
    return {s_.text.substr(b), b};
  }
  // text up to the matching close of an opening bracket at the cursor
  std::pair<std::string, std::size_t> bracketed(char open, char close) {
    skip();
    if (i_ >= s_.text.size() || s_.text[i_] != open) fail(std::string("expected '") + open + "'");
    int depth = 0;
    std::size_t b = i_;
    for (; i_ < s_.text.size(); ++i_) {
      if (s_.text[i_] == open) ++depth;
      if (s_.text[i_] == close && --depth == 0) {
        ++i_;
        return {s_.text.substr(b, i_ - b), b};
      }
    }
    fail_at(std::string("unbalanced '") + open + "'", b);
  }
  Poly poly(const std::string& text, std::size_t at, const Ctx& ctx) const {
    // position of the first non-space character
    std::size_t lead = 0;
    while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
    if (lead == text.size()) fail_at("expected a polynomial", at);
    Pos p = pos_at(at + lead);
    try {
      return parse_poly(text.substr(lead), ctx, p.line, p.column);
    } catch (const ParseError& e) {
      throw WorkspaceError(e.bare_message(), e.line(), e.column());
    }
  }

 private:
  const Statement& s_;
  std::size_t i_ = 0;
};

// "[a, b; c, d]" or "[[a, b], [c, d]]"
PolyMatrix parse_matrix(Cursor& cur, const Ctx& ctx) {
  auto [text, at] = cur.bracketed('[', ']');
  std::string inner = text.substr(1, text.size() - 2);
  const std::size_t base = at + 1;
  std::vector<std::vector<Poly>> rows;
  auto split = [](const std::string& s, char sep) {
    std::vector<std::pair<std::string, std::size_t>> parts;
    std::size_t b = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (i < s.size() && (s[i] == '(' || s[i] == '[')) ++depth;
      if (i < s.size() && (s[i] == ')' || s[i] == ']')) --depth;
      if (i == s.size() || (s[i] == sep && depth == 0)) {
        parts.emplace_back(s.substr(b, i - b), b);
        b = i + 1;
      }
    }
    return parts;
  };
  auto blank = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  };
  if (blank(inner)) return PolyMatrix(0, 0, ctx);
  std::size_t first = inner.find_first_not_of(' ');
  if (inner[first] == '[') {
    for (const auto& [row, off] : split(inner, ',')) {
      std::size_t a = row.find('['), b = row.rfind(']');
      if (a == std::string::npos || b == std::string::npos || b < a) cur.fail_at("expected a bracketed row", base + off);
      std::vector<Poly> r;
      std::string body = row.substr(a + 1, b - a - 1);
      if (!blank(body))
        for (const auto& [e, eo] : split(body, ',')) r.push_back(cur.poly(e, base + off + a + 1 + eo, ctx));
      rows.push_back(std::move(r));
    }
  } else {
    for (const auto& [row, off] : split(inner, ';')) {
      std::vector<Poly> r;
      for (const auto& [e, eo] : split(row, ',')) r.push_back(cur.poly(e, base + off + eo, ctx));
      rows.push_back(std::move(r));
    }
  }
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) cur.fail_at("rows of different lengths", at);
  PolyMatrix M(rows.size(), rows.front().size(), ctx);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j].with_context(ctx);
  return M;
}

class Parser {
 public:
  Parser(const std::string& text, const std::string& file) : stmts_(split_statements(text)) { ws_.file = file; }

  Workspace run() {
    while (k_ < stmts_.size()) {
      const Statement& s = stmts_[k_++];
      Cursor cur(s);
      auto kw = cur.try_ident();
      if (!kw) cur.fail("expected a declaration");
      if (*kw == "ring") ring(cur);
      else if (*kw == "potential") potential(cur);
      else if (*kw == "unit") unit(cur);
      else if (*kw == "mf") mf(cur, s);
      else if (*kw == "morphism") morphism(cur);
      else cur.fail_at("unknown declaration '" + *kw + "'", 0);
    }
    return std::move(ws_);
  }

 private:
  void declare(Cursor& cur, const std::string& name, std::size_t at) {
    if (std::find(ws_.order.begin(), ws_.order.end(), name) != ws_.order.end())
      cur.fail_at("duplicate name '" + name + "'", at);
    ws_.order.push_back(name);
  }
  std::string new_name(Cursor& cur) {
    cur.skip();
    std::size_t at = cur.offset();
    std::string name = cur.ident("a name");
    declare(cur, name, at);
    return name;
  }
  const Ctx& ring_ref(Cursor& cur) {
    cur.skip();
    std::size_t at = cur.offset();
    std::string r = cur.ident("a ring name");
    auto it = ws_.rings.find(r);
    if (it == ws_.rings.end()) cur.fail_at("unknown ring '" + r + "'", at);
    return it->second;
  }
  std::string ring_name_of(const Ctx& ctx) const {
    for (const auto& [n, c] : ws_.rings)
      if (c == ctx) return n;
    return {};
  }

  void ring(Cursor& cur) {
    std::string name = new_name(cur);
    cur.expect("=");
    std::vector<std::string> vars;
    if (!cur.done()) {
      do {
        cur.skip();
        std::size_t at = cur.offset();
        std::string v = cur.ident("a variable name");
        if (std::find(vars.begin(), vars.end(), v) != vars.end()) cur.fail_at("repeated variable '" + v + "'", at);
        vars.push_back(v);
      } while (cur.accept(","));
    }
    if (!cur.done()) cur.fail("unexpected text after ring variables");
    ws_.rings[name] = RingContext::make(vars);
  }

  void potential(Cursor& cur) {
    std::size_t line = cur.pos_at(0).line;
    std::string name = new_name(cur);
    cur.expect(":");
    const Ctx& ctx = ring_ref(cur);
    cur.expect("=");
    auto [text, at] = cur.rest();
    Poly W = cur.poly(text, at, ctx).with_context(ctx);
    ws_.potentials[name] = {ring_name_of(ctx), W, line};
  }

  void unit(Cursor& cur) {
    std::size_t line = cur.pos_at(0).line;
    std::string name = new_name(cur);
    cur.expect(":");
    cur.skip();
    std::size_t rat = cur.offset();
    std::string rname = cur.ident("a ring name");
    declare(cur, rname, rat);
    cur.expect("=");
    cur.skip();
    std::size_t pat = cur.offset();
    std::string pname = cur.ident("a potential name");
    auto it = ws_.potentials.find(pname);
    if (it == ws_.potentials.end()) cur.fail_at("unknown potential '" + pname + "'", pat);
    if (!cur.done()) cur.fail("unexpected text after unit declaration");
    KoszulUnit u = [&] {
      try {
        return koszul_unit(it->second.W);
      } catch (const std::exception& e) {
        cur.fail_at(e.what(), pat);
      }
    }();
    ws_.rings[rname] = u.ctx;
    ws_.mfs[name] = {rname, u.mf, line};
  }

  // potential name, '0' or '(poly)'
  Poly side_potential(Cursor& cur, const Ctx& ctx) {
    if (cur.peek() == '(') {
      auto [text, at] = cur.bracketed('(', ')');
      return cur.poly(text, at, ctx);
    }
    if (cur.accept("0")) return Poly(ctx, 0);
    cur.skip();
    std::size_t at = cur.offset();
    std::string name = cur.ident("a potential name, '0' or a parenthesised polynomial");
    auto it = ws_.potentials.find(name);
    if (it == ws_.potentials.end()) cur.fail_at("unknown potential '" + name + "'", at);
    if (ws_.rings.at(it->second.ring) != ctx) cur.fail_at("potential '" + name + "' lives in another ring", at);
    return it->second.W;
  }

  std::vector<std::size_t> var_list(Cursor& cur, const Ctx& ctx) {
    std::vector<std::size_t> vs;
    if (cur.peek() == ':') return vs;
    do {
      cur.skip();
      std::size_t at = cur.offset();
      std::string v = cur.ident("a variable");
      auto idx = ctx->find(v);
      if (!idx) cur.fail_at("unknown variable '" + v + "'", at);
      vs.push_back(*idx);
    } while (cur.accept(","));
    return vs;
  }

  void mf(Cursor& head, const Statement& hs) {
    std::size_t line = head.pos_at(0).line;
    std::string name = new_name(head);
    head.expect(":");
    head.skip();
    std::size_t rat = head.offset();
    const Ctx& ctx = ring_ref(head);
    std::string rname = hs.text.substr(rat, head.offset() - rat);
    head.expect("{");
    if (!head.done()) head.fail("expected end of line after '{'");

    std::optional<std::pair<std::vector<std::size_t>, Poly>> src, tgt;
    std::optional<Poly> boundary;
    std::optional<PolyMatrix> d0, d1, d;
    std::optional<std::vector<int>> parities;
    bool closed = false;
    while (k_ < stmts_.size()) {
      const Statement& s = stmts_[k_++];
      Cursor cur(s);
      if (cur.accept("}")) {
        if (!cur.done()) cur.fail("unexpected text after '}'");
        closed = true;
        break;
      }
      auto kw = cur.try_ident();
      if (!kw) cur.fail("expected an mf field");
      if (*kw == "source" || *kw == "target") {
        auto vs = var_list(cur, ctx);
        cur.expect(":");
        Poly P = side_potential(cur, ctx);
        (*kw == "source" ? src : tgt) = std::make_pair(vs, P);
      } else if (*kw == "potential") {
        if (cur.accept("=")) {
          auto [text, at] = cur.rest();
          boundary = cur.poly(text, at, ctx).with_context(ctx);
        } else {
          boundary = side_potential(cur, ctx);
        }
      } else if (*kw == "d0" || *kw == "d1" || *kw == "d") {
        cur.expect("=");
        PolyMatrix M = parse_matrix(cur, ctx);
        (*kw == "d0" ? d0 : *kw == "d1" ? d1 : d) = M;
      } else if (*kw == "parities") {
        std::vector<int> ps;
        while (!cur.done()) {
          if (cur.accept("0")) ps.push_back(0);
          else if (cur.accept("1")) ps.push_back(1);
          else cur.fail("expected 0 or 1");
        }
        parities = ps;
      } else {
        cur.fail_at("unknown mf field '" + *kw + "'", 0);
      }
      if (!cur.done()) cur.fail("unexpected text");
    }
    if (!closed) throw WorkspaceError("mf block '" + name + "' is not closed by '}'", line, 1);

    auto fail = [&](const std::string& msg) -> void { throw WorkspaceError(msg, line, 1); };
    if (boundary && (src || tgt)) fail("mf '" + name + "': give either 'potential' or sides");
    if (!boundary && !src && !tgt) fail("mf '" + name + "': missing 'potential' or 'target'");
    Poly Wsrc(ctx, 0), Wtgt(ctx, 0);
    std::vector<std::size_t> svars, tvars;
    if (boundary) {
      Wtgt = *boundary;
      for (std::size_t i = 0; i < ctx->size(); ++i) tvars.push_back(i);
    } else {
      if (src) std::tie(svars, Wsrc) = *src;
      if (tgt) std::tie(tvars, Wtgt) = *tgt;
    }
    Poly potential = Wtgt.with_context(ctx) - Wsrc.with_context(ctx);
    MatrixFactorisation X;
    try {
      if (d) {
        if (d0 || d1) fail("mf '" + name + "': give either d or d0/d1");
        if (!parities) fail("mf '" + name + "': d needs 'parities'");
        if (d->rows() != parities->size() || d->cols() != parities->size())
          fail("mf '" + name + "': d must be square of the size of 'parities'");
        std::vector<BasisElement> basis;
        std::size_t ne = 0, no = 0;
        for (int p : *parities) basis.push_back({p ? "f" + std::to_string(no++) : "e" + std::to_string(ne++), p});
        X = make_mf(ctx, potential, basis, *d);
      } else {
        if (!d0 || !d1) fail("mf '" + name + "': needs d0 and d1");
        if (d0->rows() != d1->cols() || d0->cols() != d1->rows())
          fail("mf '" + name + "': d0 is odd x even and d1 even x odd; shapes do not match");
        X = new_mf(ctx, potential, *d0, *d1);
      }
      X = with_sides(X, svars, Wsrc, tvars, Wtgt);
    } catch (const InvalidFactorisation& e) {
      std::string msg = "mf '" + name + "': " + e.what();
      for (std::size_t k = 1; k < e.offending().size(); ++k) msg += "; " + e.offending()[k];
      fail(msg);
    } catch (const WorkspaceError&) {
      throw;
    } catch (const std::exception& e) {
      fail("mf '" + name + "': " + e.what());
    }
    ws_.mfs[name] = {rname, X, line};
  }

  const Workspace::MfEntry& mf_ref(Cursor& cur) {
    cur.skip();
    std::size_t at = cur.offset();
    std::string n = cur.ident("a factorisation name");
    auto it = ws_.mfs.find(n);
    if (it == ws_.mfs.end()) cur.fail_at("unknown factorisation '" + n + "'", at);
    last_ref_ = n;
    return it->second;
  }

  void morphism(Cursor& cur) {
    std::size_t line = cur.pos_at(0).line;
    std::string name = new_name(cur);
    cur.expect(":");
    const auto& S = mf_ref(cur);
    std::string sname = last_ref_;
    cur.expect("->");
    const auto& T = mf_ref(cur);
    std::string tname = last_ref_;
    if (S.mf.ctx != T.mf.ctx) cur.fail("source and target live in different rings");
    int parity = 0;
    bool closed = false;
    for (;;) {
      if (cur.accept("even")) parity = 0;
      else if (cur.accept("odd")) parity = 1;
      else if (cur.accept("closed")) closed = true;
      else break;
    }
    cur.expect("=");
    cur.skip();
    std::size_t at = cur.offset();
    PolyMatrix M = parse_matrix(cur, S.mf.ctx);
    if (!cur.done()) cur.fail("unexpected text after matrix");
    if (M.rows() != T.mf.rank() || M.cols() != S.mf.rank())
      cur.fail_at("matrix must be " + std::to_string(T.mf.rank()) + " x " + std::to_string(S.mf.rank()), at);
    if (!has_parity(S.mf, T.mf, M, parity)) cur.fail_at("matrix entries violate the declared parity", at);
    Morphism f{S.mf, T.mf, parity, M};
    if (closed) {
      PolyMatrix D = f.differential();
      for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j)
          if (!D(i, j).is_zero())
            cur.fail_at("morphism '" + name + "' is not closed: differential entry (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") = " + D(i, j).to_string(),
                        at);
    }
    ws_.morphisms[name] = {sname, tname, f, closed, line};
  }

  std::vector<Statement> stmts_;
  std::size_t k_ = 0;
  Workspace ws_;
  std::string last_ref_;
};

template <class M>
const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw WorkspaceError(std::string("unknown ") + what + " '" + name + "'", 0, 0);
  return it->second;
}

}  // namespace

const Ctx& Workspace::ring(const std::string& name) const { return lookup(rings, name, "ring"); }
const Workspace::PotentialEntry& Workspace::potential(const std::string& name) const {
  return lookup(potentials, name, "potential");
}
const Workspace::MfEntry& Workspace::mf(const std::string& name) const { return lookup(mfs, name, "factorisation"); }
const Workspace::MorphismEntry& Workspace::morphism(const std::string& name) const {
  return lookup(morphisms, name, "morphism");
}

Workspace parse_workspace(const std::string& text, const std::string& file) { return Parser(text, file).run(); }

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw WorkspaceError("cannot open '" + path + "'", 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str(), path);
}

std::string matrix_text(const PolyMatrix& M) {
  std::string s = "[";
  for (std::size_t i = 0; i < M.rows(); ++i) {
    s += i ? "; " : " ";
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (j) s += ", ";
      s += M(i, j).to_string();
    }
  }
  return s + " ]";
}

std::string ring_statement(const std::string& name, const Ctx& ctx) {
  std::string s = "ring " + name + " =";
  for (std::size_t i = 0; i < ctx->size(); ++i) s += (i ? ", " : " ") + ctx->name(i);
  return s + "\n";
}

std::string mf_block(const std::string& name, const std::string& ring, const MatrixFactorisation& X) {
  auto vars = [&](const std::vector<std::size_t>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + X.ctx->name(vs[i]);
    return s;
  };
  auto pot = [&](const Poly& p) { return "(" + p.with_context(X.ctx).to_string() + ")"; };
  std::string s = "mf " + name + " : " + ring + " {\n";
  if (!X.source_vars.empty()) s += "  source " + vars(X.source_vars) + " : " + pot(X.source_potential) + "\n";
  s += "  target " + (X.target_vars.empty() ? "" : vars(X.target_vars) + " ") + ": " + pot(X.target_potential) + "\n";
  s += "  parities";
  for (const auto& b : X.basis) s += " " + std::to_string(b.parity);
  s += "\n  d = " + matrix_text(X.d) + "\n}\n";
  return s;
}

std::string morphism_statement(const std::string& name, const std::string& source, const std::string& target,
                               const Morphism& f, bool closed) {
  return "morphism " + name + " : " + source + " -> " + target + (f.parity ? " odd" : " even") +
         (closed ? " closed" : "") + " = " + matrix_text(f.map) + "\n";
}

}  // namespace lgmf
