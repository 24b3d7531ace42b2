#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hyperfell/scene.hpp"

namespace hyperfell {

struct ParseError {
    int line = 1;
    int column = 1;
    std::string message;
    std::vector<std::string> expected;

    std::string str() const;
};

using ParseResult = std::variant<Scene, ParseError>;

// Grammar:
//   region <ident> dim <int> { <expr> }
//     order (coordinatewise | halfspaces [ (<reals>); ... ])
//     [window [lo,hi]x[lo,hi]...] [point (<reals>)]*
// Infix + - * ^, comparisons < <= = >= >, connectives and/or/not,
// parentheses, whitespace-insensitive, # line comments.
ParseResult parse_scene(const std::string& text);

// Canonical text; parse_scene(print_scene(s)) is structurally equal to s.
std::string print_scene(const Scene& s);

}  // namespace hyperfell
