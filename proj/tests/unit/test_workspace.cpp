#include <doctest.h>

#include "lgmf/adjunction.hpp"
#include "lgmf/workspace.hpp"

using namespace lgmf;

namespace {

const char* kSmall = R"(
ring R = x      # one variable
potential W : R = x^3
mf L : R {
  potential W
  d0 = [ x ]
  d1 = [ x^2 ]
}
morphism m : L -> L even closed = [[x, 0], [0, x]]
unit D : R2 = W
)";

WorkspaceError error_of(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const WorkspaceError& e) {
    return e;
  }
  FAIL("expected a workspace error");
  return WorkspaceError("", 0, 0);
}

}  // namespace

TEST_CASE("workspace: declarations load") {
  auto ws = parse_workspace(kSmall);
  CHECK(ws.rings.size() == 2);
  CHECK(ws.potential("W").W.to_string() == "x^3");
  const auto& L = ws.mf("L").mf;
  CHECK(L.is_valid());
  CHECK(L.rank() == 2);
  CHECK(L.source_vars.empty());
  CHECK(ws.morphism("m").morphism.is_closed());
  const auto& D = ws.mf("D").mf;
  CHECK(D.is_valid());
  CHECK(D.source_vars.size() == 1);
  CHECK(D.target_vars.size() == 1);
  CHECK(ws.order == std::vector<std::string>{"R", "W", "L", "m", "D", "R2"});
}

TEST_CASE("workspace: parity form and explicit sides") {
  auto ws = parse_workspace(R"(
ring T = x, y
mf Delta : T {
  source x : (x^3)
  target y : (y^3)
  parities 0 1
  d = [0, y - x; y^2 + x*y + x^2, 0]
}
)");
  const auto& X = ws.mf("Delta").mf;
  CHECK(X.is_valid());
  CHECK(X.potential.to_string() == "-x^3 + y^3");
  CHECK(X.source_potential.to_string() == "x^3");
}

TEST_CASE("workspace: misfactored block names a witness entry") {
  auto e = error_of("ring R = x\nmf X : R {\n potential = x^3\n d0 = [x]\n d1 = [x]\n}\n");
  CHECK(e.line() == 2);
  CHECK(e.bare_message().find("(d^2 - W)(e0, e0) = -x^3 + x^2") != std::string::npos);
}

TEST_CASE("workspace: errors carry positions") {
  auto dup = error_of("ring R = x\nring R = y\n");
  CHECK(dup.line() == 2);
  CHECK(dup.bare_message().find("R") != std::string::npos);

  auto syn = error_of("ring R = x\npotential W : R = x^3 +* 2\n");
  CHECK(syn.line() == 2);
  CHECK(syn.column() == 24);

  auto unknown = error_of("ring R = x\npotential W : S = x\n");
  CHECK(unknown.line() == 2);

  auto open = error_of("ring R = x\nmf X : R {\n potential = x^2\n d0 = [x]\n d1 = [x]\n");
  CHECK(open.bare_message().find("not closed") != std::string::npos);

  auto bad_closed = error_of(std::string(kSmall) + "morphism n : L -> L even closed = [[1, 0], [0, 0]]\n");
  CHECK(bad_closed.line() == 11);
}

TEST_CASE("workspace: emitted blocks re-parse") {
  auto ws = parse_workspace(kSmall);
  auto maps = ev_coev(ws.mf("L").mf);
  std::string text = ring_statement("A", maps.ring.ctx);
  text += mf_block("S", "A", maps.coev.source) + mf_block("T", "A", maps.coev.target);
  text += morphism_statement("c", "S", "T", maps.coev, true);
  auto back = parse_workspace(text);
  CHECK(back.mf("T").mf.d == maps.coev.target.d.map([&](const Poly& p) { return p.with_context(back.ring("A")); }));
  CHECK(back.morphism("c").morphism.is_closed());
}
