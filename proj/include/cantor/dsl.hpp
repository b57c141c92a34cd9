#pragma once

#include <string>
#include <string_view>

#include "cantor/borel_code.hpp"

namespace cantor {

/// Parses the code expression language:
///
///   expr := "cyl" "(" bits {"," bits} ")" | "empty" | "full"
///         | "union" "(" [expr {"," expr}] ")" | "inter" "(" [expr {"," expr}] ")"
///         | "compl" "(" expr ")" | "reloc" "(" nat "," expr ")"
///         | "bigunion" "(" ident "," nat "," nat "," expr ")"
///
/// A nat may be written "$ident" inside a bigunion body; the body is expanded
/// once per value of the bound variable. reloc normalizes its argument first
/// since relocation needs a complement-free code. Whitespace is free between
/// tokens. Errors are ParseError with line, column and the expected tokens.
Code parse_dsl(std::string_view text);

/// Canonical text: leaves print as "empty", "full" or "cyl(g1,g2,...)" with
/// the canonical generators; no whitespace. parse_dsl(print_dsl(c)) prints
/// back identically.
std::string print_dsl(const Code& c);

}  // namespace cantor
