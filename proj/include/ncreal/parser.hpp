#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ncreal/realization.hpp"

namespace ncreal {

using ConstantTable = std::map<std::string, ComplexMatrix>;

struct Expression {
    enum class Kind { Variable, Constant, Sum, Product, Negate, Inverse };

    Kind kind = Kind::Constant;
    std::size_t offset = 0;  // byte offset in the source text
    std::size_t var = 0;     // Variable: 0-based index
    std::string name;        // Constant: table name, empty for a scalar literal
    Complex scalar = 0.0;    // Constant: literal value
    ComplexMatrix matrix;    // Constant: resolved table entry (n x n)
    std::vector<Expression> children;
};

// expr := term (('+'|'-') term)* ; term := factor ('*'? factor)* ;
// factor := 'inv(' expr ')' | '(' expr ')' | x<k> | z<k> | number['i'] | name | '-' factor
// Variables are 1-based in text. Errors are InputError with the byte offset.
Expression parse(const std::string& text, std::size_t d, const ConstantTable& constants = {});

std::string to_string(const Expression& e);
std::size_t depth(const Expression& e);

// Bottom-up realization with constant_fm / coordinate_fm / fm_add / fm_mul / fm_inv.
FMRealization realize_expression(const Expression& e, const CentrePoint& y);
// Direct matrix arithmetic at X. A singular inverse raises NumericalError.
ComplexMatrix eval_expression(const Expression& e, const MatrixTuple& x);

}  // namespace ncreal
