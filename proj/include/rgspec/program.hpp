#ifndef RGSPEC_PROGRAM_HPP_
#define RGSPEC_PROGRAM_HPP_

#include <memory>
#include <string>
#include <vector>

#include "rgspec/ast.hpp"

namespace rgspec {

enum class StmtKind : uint8_t { Assign, While, If, Atomic, Skip, Redo };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  StmtKind kind;
  SourceSpan span;
  std::string target;            // Assign / Redo
  ExprPtr expr;                  // Assign rhs / While guard / If guard
  std::vector<StmtPtr> body;     // While / If-then / Atomic
  std::vector<StmtPtr> orelse;   // If-else
};

struct Program {
  std::vector<StmtPtr> stmts;
};

bool structurally_equal(const Program& a, const Program& b);

// Type-checks assignments, guards and redo targets against the declaration.
Diagnostics check_program(const Program& p, const StateDecl& decl);

// Interleaving granularity. Statement mode makes every assignment and every
// guard evaluation one atomic unit; block mode additionally runs each while
// iteration body and each whole if statement as one unit.
enum class Atomicity : uint8_t { Statement, Block };

// Flat instruction form; the program counter doubles as the actor's control
// state, which keeps configurations hashable.
enum class Op : uint8_t { Assign, Branch, Jump, Redo, Halt };

struct Instr {
  Op op = Op::Halt;
  int var = -1;                  // Assign/Redo: variable index
  ExprPtr expr;                  // Assign rhs / Branch guard
  int tgt = -1;                  // Branch true target / Jump target
  int ftgt = -1;                 // Branch false target
  SourceSpan span;
  int group = -1;                // enclosing (outermost) atomic group
};

struct CompiledProgram {
  std::vector<Instr> instrs;
  std::vector<std::pair<int, int>> groups;  // atomic group -> [start, end)
  int halt_ip() const { return static_cast<int>(instrs.size()); }
};

CompiledProgram compile(const Program& p, const StateDecl& decl,
                        Atomicity atomicity);

std::string stmt_str(const Stmt& s, int indent);

}  // namespace rgspec

#endif  // RGSPEC_PROGRAM_HPP_
