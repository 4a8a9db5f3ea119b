#pragma once

// Text syntax for formulas.
//
//   equiv   := implies ( "<->" implies )*            left associative
//   implies := or ( "->" implies )?                   right associative
//   or      := and ( "|" and )*
//   and     := until ( "&" until )*
//   until   := unary ( "U" until )?                   right associative
//   unary   := prefix-op unary | postfix
//   postfix := primary "?"*
//   primary := ident | constant | "(" equiv ")"
//
// prefix-op: ~ next wnext prev wprev once sofar <> [] sdiamond sfin fin dm bm
// constant : true false more empty skip finite inf first

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tsat/formula.hpp"

namespace tsat {

struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& message, SourceSpan span)
        : std::runtime_error(message), span_(span) {}

    [[nodiscard]] SourceSpan span() const noexcept { return span_; }

private:
    SourceSpan span_;
};

struct ParseOptions {
    // Accept r<digits> identifiers (used when re-reading dumps).
    bool allow_reserved = false;
};

[[nodiscard]] Formula parse(std::string_view text, ParseOptions options = {});

// Minimal-parenthesis rendering; parse(print(f)) == f.
[[nodiscard]] std::string print(const Formula& f);

// Renders the error with the offending input and a caret line underneath.
[[nodiscard]] std::string describe(const SyntaxError& error, std::string_view text);

}  // namespace tsat
