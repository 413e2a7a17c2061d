#ifndef RGSPEC_DSL_HPP_
#define RGSPEC_DSL_HPP_

#include <optional>
#include <string>

#include "rgspec/spec_model.hpp"

namespace rgspec {

struct ParseResult {
  std::optional<SystemSpec> spec;  // present iff no parse errors
  Diagnostics diags;               // parse errors, or validation diagnostics
  bool parsed() const { return spec.has_value(); }
  bool clean() const { return parsed() && !has_errors(diags); }
};

// Parses `.rg` source. On syntactic success the result carries a SystemSpec
// plus any validation diagnostics; on failure, located parse errors only.
ParseResult parse_spec(const std::string& text, const std::string& filename);

ParseResult parse_spec_file(const std::string& path);

// Canonical, deterministic rendering; output reparses to a structurally
// equal SystemSpec.
std::string pretty_print(const SystemSpec& sys);

bool structurally_equal(const SystemSpec& a, const SystemSpec& b);

}  // namespace rgspec

#endif  // RGSPEC_DSL_HPP_
