#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hyperflow/rat.hpp"

namespace hyperflow {

/// A runtime value: boolean, bounded integer, enumeration symbol, tuple, or
/// (transiently, inside expression evaluation only) an exact rational.
/// Declared variable domains never contain rationals; they appear when a
/// probability expression is being evaluated.
///
/// Values carry a total deterministic order (kind tag first, then payload)
/// so that distributions and hypers have one canonical form.
class Value {
 public:
  enum class Kind { Bool, Int, Sym, Tuple, Rational };

  Value() : v_(false) {}
  explicit Value(bool b) : v_(b) {}
  explicit Value(long i) : v_(i) {}
  static Value boolean(bool b) { return Value(b); }
  static Value integer(long i) { return Value(i); }
  static Value symbol(std::string name) { return Value(Tag{}, std::move(name)); }
  static Value tuple(std::vector<Value> elems) { return Value(Tag{}, std::move(elems)); }
  static Value rational(Rat r) { return Value(Tag{}, std::move(r)); }

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_bool() const { return kind() == Kind::Bool; }
  bool is_int() const { return kind() == Kind::Int; }
  bool is_sym() const { return kind() == Kind::Sym; }
  bool is_tuple() const { return kind() == Kind::Tuple; }
  bool is_rational() const { return kind() == Kind::Rational; }

  bool as_bool() const { return std::get<bool>(v_); }
  long as_int() const { return std::get<long>(v_); }
  const std::string& as_sym() const { return std::get<std::string>(v_); }
  const std::vector<Value>& as_tuple() const { return std::get<std::vector<Value>>(v_); }
  const Rat& as_rational() const { return std::get<Rat>(v_); }

  // -1 / 0 / +1 in the canonical order.
  static int cmp(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Value& a, const Value& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Value& a, const Value& b) { return cmp(a, b) < 0; }

  std::string str() const;

 private:
  struct Tag {};
  Value(Tag, std::string s) : v_(std::move(s)) {}
  Value(Tag, std::vector<Value> t) : v_(std::move(t)) {}
  Value(Tag, Rat r) : v_(std::move(r)) {}

  std::variant<bool, long, std::string, std::vector<Value>, Rat> v_;
};

/// A declared finite variable domain, in declaration order.
struct Domain {
  std::vector<Value> values;

  bool contains(const Value& v) const;
  bool operator==(const Domain& o) const { return values == o.values; }

  static Domain booleans();
  static Domain int_range(long lo, long hi);  // inclusive
  static Domain symbols(const std::vector<std::string>& names);
};

}  // namespace hyperflow
