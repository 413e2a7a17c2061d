#include "rgspec/value.hpp"

#include <sstream>

namespace rgspec {

std::string ty_name(Ty t) {
  switch (t) {
    case Ty::Int: return "int";
    case Ty::Bool: return "bool";
    case Ty::Set: return "natset";
    case Ty::Token: return "enum";
  }
  return "?";
}

uint64_t VarDom::carrier_size() const {
  switch (ty) {
    case Ty::Int: return static_cast<uint64_t>(hi - lo + 1);
    case Ty::Bool: return 2;
    case Ty::Set: return uint64_t{1} << (set_max + 1);
    case Ty::Token: return token_ids.size();
  }
  return 0;
}

bool VarDom::contains(const Value& v) const {
  if (v.ty != ty) return false;
  switch (ty) {
    case Ty::Int: return v.num >= lo && v.num <= hi;
    case Ty::Bool: return v.num == 0 || v.num == 1;
    case Ty::Set: {
      uint64_t full = (set_max >= 63) ? ~uint64_t{0}
                                      : ((uint64_t{1} << (set_max + 1)) - 1);
      return (v.as_set() & ~full) == 0;
    }
    case Ty::Token:
      for (int id : token_ids)
        if (id == v.num) return true;
      return false;
  }
  return false;
}

Value VarDom::lowest() const {
  switch (ty) {
    case Ty::Int: return Value::of_int(lo);
    case Ty::Bool: return Value::of_bool(false);
    case Ty::Set: return Value::of_set(0);
    case Ty::Token: return Value::of_token(token_ids.front());
  }
  return Value::of_int(0);
}

std::optional<Value> VarDom::next(const Value& v) const {
  switch (ty) {
    case Ty::Int:
      if (v.num >= hi) return std::nullopt;
      return Value::of_int(v.num + 1);
    case Ty::Bool:
      if (v.num != 0) return std::nullopt;
      return Value::of_bool(true);
    case Ty::Set: {
      uint64_t full = (uint64_t{1} << (set_max + 1)) - 1;
      if (v.as_set() >= full) return std::nullopt;
      return Value::of_set(v.as_set() + 1);
    }
    case Ty::Token: {
      for (size_t i = 0; i + 1 < token_ids.size(); ++i)
        if (token_ids[i] == v.num) return Value::of_token(token_ids[i + 1]);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

int StateDecl::index_of(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

int StateDecl::token_id(const std::string& name) const {
  for (size_t i = 0; i < token_names.size(); ++i)
    if (token_names[i] == name) return static_cast<int>(i);
  return -1;
}

int StateDecl::intern_token(const std::string& name) {
  int id = token_id(name);
  if (id >= 0) return id;
  token_names.push_back(name);
  return static_cast<int>(token_names.size()) - 1;
}

std::string StateDecl::value_str(const Value& v) const {
  std::ostringstream os;
  switch (v.ty) {
    case Ty::Int: os << v.num; break;
    case Ty::Bool: os << (v.as_bool() ? "true" : "false"); break;
    case Ty::Set: {
      os << "{";
      bool first = true;
      for (int e = 0; e < 64; ++e) {
        if (v.as_set() & (uint64_t{1} << e)) {
          if (!first) os << ",";
          os << e;
          first = false;
        }
      }
      os << "}";
      break;
    }
    case Ty::Token: os << token_name(v.as_token()); break;
  }
  return os.str();
}

State State::lowest(const StateDecl& d) {
  State s;
  s.decl = &d;
  s.vals.reserve(d.vars.size());
  for (const auto& v : d.vars) s.vals.push_back(v.lowest());
  return s;
}

std::string State::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) os << " ";
    os << decl->vars[i].name << "=" << decl->value_str(vals[i]);
  }
  return os.str();
}

uint64_t hash_mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

uint64_t hash_state(const State& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& v : s.vals) {
    h = hash_mix(h, static_cast<uint64_t>(v.ty));
    h = hash_mix(h, static_cast<uint64_t>(v.num));
  }
  return h;
}

}  // namespace rgspec
