#ifndef RGSPEC_VALUE_HPP_
#define RGSPEC_VALUE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgspec/source.hpp"

namespace rgspec {

enum class Ty : uint8_t { Int, Bool, Set, Token };

std::string ty_name(Ty t);

// One scalar slot. Sets are finite subsets of {0..63} stored as a bitmask;
// tokens are indices into the declaration's interned token table.
struct Value {
  Ty ty = Ty::Int;
  int64_t num = 0;

  static Value of_int(int64_t v) { return {Ty::Int, v}; }
  static Value of_bool(bool v) { return {Ty::Bool, v ? 1 : 0}; }
  static Value of_set(uint64_t mask) { return {Ty::Set, static_cast<int64_t>(mask)}; }
  static Value of_token(int id) { return {Ty::Token, id}; }

  int64_t as_int() const { return num; }
  bool as_bool() const { return num != 0; }
  uint64_t as_set() const { return static_cast<uint64_t>(num); }
  int as_token() const { return static_cast<int>(num); }

  bool operator==(const Value& o) const { return ty == o.ty && num == o.num; }
  bool operator!=(const Value& o) const { return !(*this == o); }
};

struct VarDom {
  std::string name;
  Ty ty = Ty::Int;
  int64_t lo = 0, hi = 0;                // int
  int set_max = 0;                       // natset: elements in [0..set_max]
  std::vector<int> token_ids;            // enum members, interned
  std::string display_alias;             // e.g. n_p shown as n'
  SourceSpan span;

  // Number of distinct values the variable can take.
  uint64_t carrier_size() const;
  bool contains(const Value& v) const;
  Value lowest() const;
  // Enumeration order: int ascending, bool false/true, set mask ascending,
  // token in declaration order. Returns nullopt past the last value.
  std::optional<Value> next(const Value& v) const;
};

// Immutable variable-domain declaration. States reference it by pointer, so
// a declaration must outlive every state built over it.
struct StateDecl {
  std::vector<VarDom> vars;
  std::vector<std::string> token_names;  // interned across all enums

  int index_of(const std::string& name) const;           // -1 if absent
  int token_id(const std::string& name) const;           // -1 if absent
  int intern_token(const std::string& name);
  const std::string& token_name(int id) const { return token_names[id]; }
  std::string value_str(const Value& v) const;
};

struct State {
  const StateDecl* decl = nullptr;
  std::vector<Value> vals;

  static State lowest(const StateDecl& d);
  const Value& at(int idx) const { return vals[idx]; }
  bool operator==(const State& o) const { return vals == o.vals; }
  bool operator!=(const State& o) const { return !(*this == o); }
  std::string str() const;  // "a=3 b=5 S={0,2}" in declaration order
};

struct StatePair {
  State before;
  State after;
};

uint64_t hash_mix(uint64_t h, uint64_t v);
uint64_t hash_state(const State& s);

}  // namespace rgspec

#endif  // RGSPEC_VALUE_HPP_
