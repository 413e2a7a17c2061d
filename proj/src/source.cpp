#include "rgspec/source.hpp"

#include <sstream>

namespace rgspec {

std::string SourceSpan::str() const {
  if (!valid()) return "<unknown>";
  std::ostringstream os;
  if (!file.empty()) os << file << ":";
  os << start_line << ":" << start_col << "-" << end_line << ":" << end_col;
  return os.str();
}

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  if (!a.valid()) return b;
  if (!b.valid()) return a;
  SourceSpan s = a;
  if (b.end_line > s.end_line ||
      (b.end_line == s.end_line && b.end_col > s.end_col)) {
    s.end_line = b.end_line;
    s.end_col = b.end_col;
  }
  return s;
}

std::string Diagnostic::str() const {
  std::ostringstream os;
  switch (severity) {
    case Severity::Error: os << "error"; break;
    case Severity::Warning: os << "warning"; break;
    case Severity::Note: os << "note"; break;
  }
  os << " at " << span.str() << ": " << message;
  return os.str();
}

bool has_errors(const Diagnostics& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

std::string render(const Diagnostics& diags) {
  std::ostringstream os;
  for (const auto& d : diags) os << d.str() << "\n";
  return os.str();
}

}  // namespace rgspec
