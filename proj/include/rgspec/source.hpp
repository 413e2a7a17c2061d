#ifndef RGSPEC_SOURCE_HPP_
#define RGSPEC_SOURCE_HPP_

#include <string>
#include <vector>

namespace rgspec {

// Half-open is avoided on purpose: columns are 1-based and inclusive, which
// is what editors and the golden reports expect.
struct SourceSpan {
  std::string file;
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  bool valid() const { return start_line > 0; }
  std::string str() const;
};

SourceSpan join(const SourceSpan& a, const SourceSpan& b);

enum class Severity { Error, Warning, Note };

struct Diagnostic {
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;

  std::string str() const;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diags);
std::string render(const Diagnostics& diags);

}  // namespace rgspec

#endif  // RGSPEC_SOURCE_HPP_
