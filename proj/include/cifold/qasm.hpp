#pragma once

#include <string>
#include <string_view>

#include "cifold/circuit.hpp"

namespace cifold {

/// Parse failure with 1-based source position.
struct QasmError : Error {
    int line;
    int column;
    QasmError(const std::string& msg, int line, int column)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line(line),
          column(column) {}
};

/// OpenQASM 2.0 subset: one quantum register, gates from gate_table(),
/// u1 accepted as alias of p. barrier/measure/creg statements are dropped.
Circuit parse_qasm(std::string_view text);

/// Inverse of parse_qasm: parse_qasm(write_qasm(c)) == c.
std::string write_qasm(const Circuit& c);

}  // namespace cifold
