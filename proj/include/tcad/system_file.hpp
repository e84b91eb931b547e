#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tcad/ccd.hpp"
#include "tcad/parser.hpp"

namespace tcad {

// File grammar:
//   vars: x, y, z          first non-comment line, smallest variable first
//   <poly>                 plain item
//   <poly> = 0             equation
//   <poly> <> 0            inequation
// '#' starts a comment. Plain and constrained lines cannot be mixed.

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline int column_of(std::string_view line, std::string_view part) {
  return static_cast<int>(part.data() - line.data()) + 1;
}

inline VarOrder parse_header(std::string_view line, std::string_view rest, int lineno) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = rest.find(',', start);
    std::string_view raw = rest.substr(start, comma == std::string_view::npos ? rest.npos : comma - start);
    std::string_view name = trim(raw);
    const int col = name.empty() ? column_of(line, raw) : column_of(line, name);
    if (!VarOrder::is_valid_name(std::string(name))) {
      throw ParseError("invalid variable name '" + std::string(name) + "'", lineno, col);
    }
    for (const auto& n : names) {
      if (n == name) throw ParseError("duplicate variable '" + n + "'", lineno, col);
    }
    names.emplace_back(name);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return VarOrder(std::move(names));
}

}  // namespace detail

inline InputSystem parse_system(std::string_view text) {
  InputSystem sys;
  bool have_header = false;
  bool any_plain = false;
  bool any_constrained = false;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view body = line.substr(0, line.find('#'));
    body = detail::trim(body);
    if (body.empty()) continue;

    if (!have_header) {
      if (body.substr(0, 5) != "vars:") {
        throw ParseError("expected 'vars:' header", lineno, detail::column_of(line, body));
      }
      sys.order = detail::parse_header(line, body.substr(5), lineno);
      have_header = true;
      continue;
    }

    Role role = Role::Plain;
    std::string_view lhs = body;
    std::string_view rhs;
    if (auto op = body.find("<>"); op != std::string_view::npos) {
      role = Role::Inequation;
      lhs = body.substr(0, op);
      rhs = body.substr(op + 2);
    } else if (auto eq = body.find('='); eq != std::string_view::npos) {
      role = Role::Equation;
      lhs = body.substr(0, eq);
      rhs = body.substr(eq + 1);
    }
    if (role != Role::Plain) {
      std::string_view r = detail::trim(rhs);
      if (r != "0") {
        const int col = r.empty() ? detail::column_of(line, rhs) + static_cast<int>(rhs.size())
                                  : detail::column_of(line, r);
        throw ParseError("right-hand side must be 0", lineno, col);
      }
      lhs = detail::trim(lhs);
      if (lhs.empty()) throw ParseError("missing polynomial", lineno, detail::column_of(line, body));
    }
    const int col = detail::column_of(line, lhs);
    Polynomial p = parse_polynomial(lhs, sys.order, lineno, col);
    if (role == Role::Plain) {
      if (p.is_constant()) throw ParseError("constant polynomial in a plain system", lineno, col);
      any_plain = true;
    } else {
      any_constrained = true;
    }
    if (any_plain && any_constrained) {
      throw ParseError("plain and constrained lines cannot be mixed", lineno, col);
    }
    sys.items.push_back({p.is_zero() ? p : normalize(p), role});
  }
  if (!have_header) throw ParseError("missing 'vars:' header", lineno, 1);
  if (sys.items.empty()) throw ParseError("empty system", lineno, 1);
  return sys;
}

/// Canonical text form; parse_system(print_system(s)) reproduces s.
inline std::string print_system(const InputSystem& sys) {
  std::ostringstream os;
  os << "vars: ";
  for (std::size_t i = 0; i < sys.order.size(); ++i) os << (i ? ", " : "") << sys.order.name(static_cast<int>(i));
  os << '\n';
  for (const auto& it : sys.items) {
    os << it.poly.to_string(sys.order);
    if (it.role == Role::Equation) os << " = 0";
    if (it.role == Role::Inequation) os << " <> 0";
    os << '\n';
  }
  return os.str();
}

inline bool has_constraints(const InputSystem& sys) {
  for (const auto& it : sys.items) {
    if (it.role != Role::Plain) return true;
  }
  return false;
}

/// The nonconstant polynomials of a system, roles dropped.
inline InputSystem plain_part(const InputSystem& sys) {
  InputSystem out{sys.order, {}};
  for (const auto& it : sys.items) {
    if (!it.poly.is_constant()) out.items.push_back({it.poly, Role::Plain});
  }
  return out;
}

}  // namespace tcad
