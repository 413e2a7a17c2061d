#ifndef RGSPEC_DIAGRAM_HPP_
#define RGSPEC_DIAGRAM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "rgspec/source.hpp"

namespace rgspec {

enum class DiagramKind : uint8_t { Context, Problem };
enum class NodeRole : uint8_t { Machine, Domain, Requirement };

struct DiagramNode {
  NodeRole role = NodeRole::Domain;
  std::string id;
  std::string label;   // defaults to id
  SourceSpan span;
};

struct Interface {
  std::string a, b;            // machine/domain endpoints
  std::string phenomena;       // plain label
  SourceSpan span;
};

struct RequirementRef {
  std::string requirement;
  std::string target;          // machine or domain
  std::string phenomena;
  SourceSpan span;
};

struct Diagram {
  DiagramKind kind = DiagramKind::Context;
  std::string id;
  std::vector<DiagramNode> nodes;
  std::vector<Interface> interfaces;
  std::vector<RequirementRef> refs;
  std::string frame_tag;       // optional problem-frame pattern, unchecked
  std::string spec_hint;       // optional companion .rg file, informal
  SourceSpan span;

  const DiagramNode* find(const std::string& id) const;
};

// Well-formedness: exactly one machine; interfaces join two distinct
// non-requirement nodes; requirements and refs only in problem diagrams;
// every requirement carries at least one ref.
Diagnostics validate_diagram(const Diagram& d);

// Refinement: context nodes and interfaces plus the given requirements.
// Fails (diagnostics) when a ref targets an unknown node.
struct Refinement {
  std::vector<DiagramNode> requirements;
  std::vector<RequirementRef> refs;
};
std::optional<Diagram> refine_to_problem(const Diagram& context,
                                         const Refinement& r,
                                         Diagnostics& diags);

// Deterministic DOT: machine as double-bordered box, domains as boxes,
// requirements as dashed ovals, refs as dashed edges. Nodes and edges are
// sorted by id before emission.
std::string to_dot(const Diagram& d);

struct DiagramParseResult {
  std::optional<Diagram> diagram;
  Diagnostics diags;
};

DiagramParseResult parse_diagram(const std::string& text,
                                 const std::string& filename);
DiagramParseResult parse_diagram_file(const std::string& path);

}  // namespace rgspec

#endif  // RGSPEC_DIAGRAM_HPP_
