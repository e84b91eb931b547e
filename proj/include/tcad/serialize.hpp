#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "tcad/tree.hpp"

namespace tcad {

inline std::string constraint_text(const Constraint& c, const VarOrder& order, int level) {
  switch (c.kind) {
    case ConstraintKind::Any:
      return "any " + order.name(level - 1);
    case ConstraintKind::Equation:
      return c.poly.to_string(order) + " = 0";
    case ConstraintKind::Inequation:
      return c.poly.to_string(order) + " <> 0";
  }
  return {};
}

inline const char* constraint_kind_name(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::Any:
      return "any";
    case ConstraintKind::Equation:
      return "eq";
    case ConstraintKind::Inequation:
      return "neq";
  }
  return "any";
}

namespace detail {

inline void render_node(const CylindricalTree& t, NodeKey k, int indent, bool signs,
                        std::ostringstream& os) {
  const Node& n = t.node(k);
  const auto kids = t.present_children(k);
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ')
     << constraint_text(n.constraint, t.order(), n.level);
  if (kids.empty()) {
    if (signs && !n.signs.empty()) {
      os << " :";
      bool first = true;
      for (const auto& [p, s] : n.signs) {
        os << (first ? " " : ", ") << p.to_string(t.order()) << (s == 0 ? " = 0" : " <> 0");
        first = false;
      }
    }
    os << '\n';
    return;
  }
  os << " {\n";
  for (NodeKey c : kids) render_node(t, c, indent + 1, signs, os);
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << "}\n";
}

inline nlohmann::json node_json(const CylindricalTree& t, NodeKey k, bool present_only) {
  const Node& n = t.node(k);
  nlohmann::json j;
  j["id"] = n.key;
  j["level"] = n.level;
  j["constraint"] = {{"kind", constraint_kind_name(n.constraint.kind)},
                     {"poly", n.constraint.is_any() ? "" : n.constraint.poly.to_string(t.order())}};
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [p, v] : n.signs) s[p.to_string(t.order())] = v;
  j["signs"] = s;
  nlohmann::json kids = nlohmann::json::array();
  for (NodeKey c : present_only ? t.present_children(k) : n.children) {
    kids.push_back(present_only ? node_json(t, c, true) : nlohmann::json(c));
  }
  j["children"] = kids;
  return j;
}

}  // namespace detail

/// Nested-brace rendering of the PRESENT tree; leaves list their recorded signs.
inline std::string render_tree_text(const CylindricalTree& t, bool signs = true) {
  std::ostringstream os;
  const auto kids = t.present_children(t.root());
  os << "{\n";
  for (NodeKey c : kids) detail::render_node(t, c, 1, signs, os);
  os << "}\n";
  return os.str();
}

inline nlohmann::json tree_to_json(const CylindricalTree& t, const std::string& mode,
                                   bool history) {
  nlohmann::json j;
  j["vars"] = t.order().names();
  j["mode"] = mode;
  j["root"] = detail::node_json(t, t.root(), true);
  j["paths"] = t.paths().size();
  if (history) {
    nlohmann::json h = nlohmann::json::array();
    for (NodeKey k : t.past_nodes()) {
      nlohmann::json e = detail::node_json(t, k, false);
      e["replacing"] = t.node(k).replacing;
      h.push_back(e);
    }
    j["history"] = h;
  }
  return j;
}

}  // namespace tcad
