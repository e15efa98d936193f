#pragma once

/**
 * @file expr.hpp
 * @brief Small expression language for the command line: numbers
 * (integers, ratios a/b, decimals), variables x1..x9, operators
 * + - * / ^, parentheses, and sin cos exp log.  Pure polynomial text
 * lowers to an exact rational PolyMap; anything else to a SmoothFn.
 */

#include <memory>
#include <string>

#include "dqcalc/poly.hpp"
#include "dqcalc/smoothfn.hpp"

namespace dqcalc {

struct SyntaxError : std::runtime_error {
    std::size_t position;  // 1-based byte position
    SyntaxError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};
struct UnknownFunction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExprNode;

struct ParsedExpr {
    int arity = 0;           // highest variable index used (>= 1)
    bool polynomial = false; // exactly representable over the rationals
    PolyMap poly;            // set when polynomial
    SmoothFn smooth;         // always usable
    std::string canonical;   // re-emitted text
    std::shared_ptr<const ExprNode> ast;
};

ParsedExpr parse_expr(const std::string& text);

}  // namespace dqcalc
