#include "hyperflow/value.hpp"

#include <algorithm>
#include <sstream>

namespace hyperflow {

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      Rat r{Int(text)};
      return r;
    }
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
}

int Value::cmp(const Value& a, const Value& b) {
  if (a.v_.index() != b.v_.index())
    return a.v_.index() < b.v_.index() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Bool: {
      int x = a.as_bool(), y = b.as_bool();
      return x == y ? 0 : (x < y ? -1 : 1);
    }
    case Kind::Int: {
      long x = a.as_int(), y = b.as_int();
      return x == y ? 0 : (x < y ? -1 : 1);
    }
    case Kind::Sym:
      return a.as_sym().compare(b.as_sym()) < 0   ? -1
             : a.as_sym().compare(b.as_sym()) > 0 ? 1
                                                  : 0;
    case Kind::Tuple: {
      const auto& x = a.as_tuple();
      const auto& y = b.as_tuple();
      for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        int c = cmp(x[i], y[i]);
        if (c != 0) return c;
      }
      return x.size() == y.size() ? 0 : (x.size() < y.size() ? -1 : 1);
    }
    case Kind::Rational: {
      int c = ::cmp(a.as_rational(), b.as_rational());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
  }
  return 0;
}

std::string Value::str() const {
  switch (kind()) {
    case Kind::Bool:
      return as_bool() ? "true" : "false";
    case Kind::Int:
      return std::to_string(as_int());
    case Kind::Sym:
      return as_sym();
    case Kind::Rational:
      return rat_str(as_rational());
    case Kind::Tuple: {
      std::ostringstream out;
      out << "(";
      const auto& t = as_tuple();
      for (size_t i = 0; i < t.size(); ++i) {
        if (i) out << ", ";
        out << t[i].str();
      }
      out << ")";
      return out.str();
    }
  }
  return "";
}

bool Domain::contains(const Value& v) const {
  return std::find(values.begin(), values.end(), v) != values.end();
}

Domain Domain::booleans() {
  return Domain{{Value(false), Value(true)}};
}

Domain Domain::int_range(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  Domain d;
  for (long i = lo; i <= hi; ++i) d.values.push_back(Value(i));
  return d;
}

Domain Domain::symbols(const std::vector<std::string>& names) {
  if (names.empty()) throw std::invalid_argument("empty enumeration");
  Domain d;
  for (const auto& n : names) d.values.push_back(Value::symbol(n));
  return d;
}

}  // namespace hyperflow
