#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgmf/mf.hpp"

namespace lgmf {

// Declarative workspace text, one statement per line (a statement continues
// while brackets are open; '#' starts a comment):
//
//   ring R = x, z
//   potential W : R = x^3
//   unit D : R2 = W                     Koszul unit of W over the new ring R2
//   mf X : R {
//     source x : W                      optional; '0' for the zero potential
//     target z : V                      or: potential W   /   potential = <poly>
//     d0 = [ z - x ]                    rows ';', entries ','; even -> odd block
//     d1 = [ z^2 + z*x + x^2 ]
//   }                                   or: parities 0 1 ... with d = [ ... ]
//   morphism f : X -> Y even closed = [ ... ]
class WorkspaceError : public std::runtime_error {
 public:
  WorkspaceError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& bare_message() const { return bare_; }

 private:
  std::string bare_;
  std::size_t line_;
  std::size_t column_;
};

struct Workspace {
  struct PotentialEntry {
    std::string ring;
    Poly W;
    std::size_t line = 0;
  };
  struct MfEntry {
    std::string ring;
    MatrixFactorisation mf;
    std::size_t line = 0;
  };
  struct MorphismEntry {
    std::string source, target;
    Morphism morphism;
    bool declared_closed = false;
    std::size_t line = 0;
  };

  std::string file;
  std::map<std::string, Ctx> rings;
  std::map<std::string, PotentialEntry> potentials;
  std::map<std::string, MfEntry> mfs;
  std::map<std::string, MorphismEntry> morphisms;
  std::vector<std::string> order;  // declaration order of all names

  const Ctx& ring(const std::string& name) const;
  const PotentialEntry& potential(const std::string& name) const;
  const MfEntry& mf(const std::string& name) const;
  const MorphismEntry& morphism(const std::string& name) const;
};

Workspace parse_workspace(const std::string& text, const std::string& file = "<input>");
Workspace load_workspace(const std::string& path);

std::string matrix_text(const PolyMatrix& M);
// ring, mf and morphism statements that re-parse to the given data
std::string ring_statement(const std::string& name, const Ctx& ctx);
std::string mf_block(const std::string& name, const std::string& ring, const MatrixFactorisation& X);
std::string morphism_statement(const std::string& name, const std::string& source, const std::string& target,
                               const Morphism& f, bool closed);

}  // namespace lgmf
