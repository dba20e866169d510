#pragma once

#include <string>
#include <string_view>

#include "bowlab/bowmodel/diagram.hpp"

namespace bowlab::bowmodel {

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

// Grammar:
//   diagram := "bow" "{" item* "}"
//   item    := "wavy" IDENT "[" INT ("," INT)* "]" ";" | "edge" IDENT "->" IDENT ";"
// with "#" comments. Edges may name intervals declared later.
BowDiagram parse_bow_diagram(std::string_view text);

// Canonical text: wavy lines, then edges, both in declaration order.
std::string serialize(const BowDiagram& d);

}  // namespace bowlab::bowmodel
