#include "rgspec/program.hpp"

#include <functional>
#include <sstream>

#include "rgspec/typecheck.hpp"

namespace rgspec {

bool structurally_equal(const Program& a, const Program& b) {
  std::function<bool(const Stmt&, const Stmt&)> eq = [&](const Stmt& x,
                                                         const Stmt& y) {
    if (x.kind != y.kind || x.target != y.target) return false;
    if ((x.expr == nullptr) != (y.expr == nullptr)) return false;
    if (x.expr && !structurally_equal(*x.expr, *y.expr)) return false;
    if (x.body.size() != y.body.size() || x.orelse.size() != y.orelse.size())
      return false;
    for (size_t i = 0; i < x.body.size(); ++i)
      if (!eq(*x.body[i], *y.body[i])) return false;
    for (size_t i = 0; i < x.orelse.size(); ++i)
      if (!eq(*x.orelse[i], *y.orelse[i])) return false;
    return true;
  };
  if (a.stmts.size() != b.stmts.size()) return false;
  for (size_t i = 0; i < a.stmts.size(); ++i)
    if (!eq(*a.stmts[i], *b.stmts[i])) return false;
  return true;
}

namespace {

void check_stmt(const Stmt& s, const StateDecl& decl, Diagnostics& diags) {
  switch (s.kind) {
    case StmtKind::Assign: {
      int vi = decl.index_of(s.target);
      if (vi < 0) {
        diags.push_back({Severity::Error, s.span,
                         "assignment to undeclared variable '" + s.target + "'"});
        break;
      }
      auto r = type_check(*s.expr, decl, Epoch::Single);
      for (auto& d : r.diags) diags.push_back(d);
      if (r.type && *r.type != decl.vars[vi].ty)
        diags.push_back({Severity::Error, s.span,
                         "assigning " + std::string(ty_name(*r.type)) +
                             " to " + ty_name(decl.vars[vi].ty) +
                             " variable '" + s.target + "'"});
      break;
    }
    case StmtKind::While:
    case StmtKind::If: {
      auto r = check_predicate(*s.expr, decl, Epoch::Single);
      for (auto& d : r) diags.push_back(d);
      for (const auto& st : s.body) check_stmt(*st, decl, diags);
      for (const auto& st : s.orelse) check_stmt(*st, decl, diags);
      break;
    }
    case StmtKind::Atomic:
      for (const auto& st : s.body) check_stmt(*st, decl, diags);
      break;
    case StmtKind::Skip:
      break;
    case StmtKind::Redo: {
      int vi = decl.index_of(s.target);
      if (vi < 0)
        diags.push_back({Severity::Error, s.span,
                         "redo of undeclared variable '" + s.target + "'"});
      else if (decl.vars[vi].ty != Ty::Int)
        diags.push_back({Severity::Error, s.span,
                         "redo requires an int variable, '" + s.target +
                             "' is " + ty_name(decl.vars[vi].ty)});
      break;
    }
  }
}

struct Compiler {
  const StateDecl& decl;
  Atomicity atomicity;
  CompiledProgram out;

  int emit(Instr in) {
    out.instrs.push_back(std::move(in));
    return static_cast<int>(out.instrs.size()) - 1;
  }

  int open_group() {
    out.groups.push_back({static_cast<int>(out.instrs.size()), -1});
    return static_cast<int>(out.groups.size()) - 1;
  }

  void close_group(int g) {
    out.groups[g].second = static_cast<int>(out.instrs.size());
  }

  // Groups nest; creation order is outermost-first, so a first-wins pass
  // tags every instruction with its outermost enclosing group.
  void assign_groups() {
    for (size_t g = 0; g < out.groups.size(); ++g)
      for (int i = out.groups[g].first; i < out.groups[g].second; ++i)
        if (out.instrs[i].group < 0) out.instrs[i].group = static_cast<int>(g);
  }

  void compile_block(const std::vector<StmtPtr>& stmts) {
    for (const auto& s : stmts) compile_stmt(*s);
  }

  void compile_stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Assign:
        emit({Op::Assign, decl.index_of(s.target), s.expr, -1, -1, s.span, -1});
        break;
      case StmtKind::Skip:
        break;  // contributes no atomic unit
      case StmtKind::Redo:
        emit({Op::Redo, decl.index_of(s.target), nullptr, -1, -1, s.span, -1});
        break;
      case StmtKind::Atomic: {
        int g = open_group();
        compile_block(s.body);
        close_group(g);
        break;
      }
      case StmtKind::While: {
        // guard; body; jump back. The guard re-reads the global state on
        // every evaluation.
        int guard = emit({Op::Branch, -1, s.expr, -1, -1, s.span, -1});
        int g = -1;
        if (atomicity == Atomicity::Block) g = open_group();
        compile_block(s.body);
        emit({Op::Jump, -1, nullptr, guard, -1, s.span, -1});
        if (g >= 0) close_group(g);
        out.instrs[guard].tgt = guard + 1;
        out.instrs[guard].ftgt = static_cast<int>(out.instrs.size());
        break;
      }
      case StmtKind::If: {
        // In block mode the whole statement (guard included) is one unit.
        int g = -1;
        if (atomicity == Atomicity::Block) g = open_group();
        int guard = emit({Op::Branch, -1, s.expr, -1, -1, s.span, -1});
        compile_block(s.body);
        int jump_end = -1;
        if (!s.orelse.empty())
          jump_end = emit({Op::Jump, -1, nullptr, -1, -1, s.span, -1});
        out.instrs[guard].tgt = guard + 1;
        out.instrs[guard].ftgt = static_cast<int>(out.instrs.size());
        compile_block(s.orelse);
        if (jump_end >= 0)
          out.instrs[jump_end].tgt = static_cast<int>(out.instrs.size());
        if (g >= 0) close_group(g);
        break;
      }
    }
  }
};

}  // namespace

Diagnostics check_program(const Program& p, const StateDecl& decl) {
  Diagnostics diags;
  for (const auto& s : p.stmts) check_stmt(*s, decl, diags);
  return diags;
}

CompiledProgram compile(const Program& p, const StateDecl& decl,
                        Atomicity atomicity) {
  Compiler c{decl, atomicity, {}};
  c.compile_block(p.stmts);
  c.assign_groups();
  return std::move(c.out);
}

namespace {

void print_block(const std::vector<StmtPtr>& stmts, int indent,
                 std::ostringstream& os);

void print_stmt(const Stmt& s, int indent, std::ostringstream& os) {
  std::string pad(indent, ' ');
  switch (s.kind) {
    case StmtKind::Assign:
      os << pad << s.target << " := " << expr_str(*s.expr) << ";\n";
      break;
    case StmtKind::Skip:
      os << pad << "skip;\n";
      break;
    case StmtKind::Redo:
      os << pad << "redo " << s.target << ";\n";
      break;
    case StmtKind::Atomic:
      os << pad << "atomic {\n";
      print_block(s.body, indent + 2, os);
      os << pad << "}\n";
      break;
    case StmtKind::While:
      os << pad << "while (" << expr_str(*s.expr) << ") {\n";
      print_block(s.body, indent + 2, os);
      os << pad << "}\n";
      break;
    case StmtKind::If:
      os << pad << "if " << expr_str(*s.expr) << " then {\n";
      print_block(s.body, indent + 2, os);
      if (!s.orelse.empty()) {
        os << pad << "} else {\n";
        print_block(s.orelse, indent + 2, os);
      }
      os << pad << "}\n";
      break;
  }
}

void print_block(const std::vector<StmtPtr>& stmts, int indent,
                 std::ostringstream& os) {
  for (const auto& s : stmts) print_stmt(*s, indent, os);
}

}  // namespace

std::string stmt_str(const Stmt& s, int indent) {
  std::ostringstream os;
  print_stmt(s, indent, os);
  return os.str();
}

}  // namespace rgspec
