#include "cifold/qasm.hpp"

#include <cctype>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace cifold {

namespace {

// Minimal hand-rolled scanner; tracks 1-based line/column for errors.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Circuit parse() {
        skip_ws();
        expect_keyword("OPENQASM");
        skip_ws();
        read_until(';');  // version string, unchecked beyond presence
        expect(';');

        Circuit c;
        bool have_qreg = false;
        while (true) {
            skip_ws();
            if (at_end()) break;
            std::string word = read_identifier();
            if (word == "include") {
                read_until(';');
                expect(';');
            } else if (word == "qreg") {
                if (have_qreg) fail("multi-register programs are not supported");
                skip_ws();
                qreg_name_ = read_identifier();
                expect('[');
                c.num_qubits = read_int();
                expect(']');
                skip_ws();
                expect(';');
                if (c.num_qubits <= 0) fail("register size must be positive");
                have_qreg = true;
            } else if (word == "creg") {
                read_until(';');
                expect(';');
            } else if (word == "barrier" || word == "measure") {
                read_until(';');
                expect(';');
            } else {
                if (!have_qreg) fail("gate before qreg declaration");
                parse_gate(c, word);
            }
        }
        if (!have_qreg) fail("no quantum register declared");
        validate(c);
        return c;
    }

private:
    void parse_gate(Circuit& c, std::string name) {
        if (name == "u1") name = "p";
        auto it = gate_table().find(name);
        if (it == gate_table().end()) fail("unsupported gate name: " + name);
        const GateSpec& spec = it->second;

        Gate g;
        g.name = name;
        skip_ws();
        if (peek() == '(') {
            expect('(');
            while (true) {
                g.params.push_back(parse_expr());
                skip_ws();
                if (peek() == ',') {
                    advance();
                    continue;
                }
                break;
            }
            expect(')');
        }
        if (static_cast<int>(g.params.size()) != spec.num_params)
            fail("gate " + name + " expects " + std::to_string(spec.num_params) + " parameter(s)");

        for (int i = 0; i < spec.arity; ++i) {
            skip_ws();
            std::string reg = read_identifier();
            if (reg != qreg_name_) fail("unknown register: " + reg);
            expect('[');
            int q = read_int();
            expect(']');
            if (q < 0 || q >= c.num_qubits) fail("qubit index out of range");
            g.qubits.push_back(q);
            if (i + 1 < spec.arity) {
                skip_ws();
                expect(',');
            }
        }
        if (spec.arity == 2 && g.qubits[0] == g.qubits[1]) fail("duplicate qubit operand");
        skip_ws();
        expect(';');
        c.gates.push_back(std::move(g));
    }

    // expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
    double parse_expr() {
        double v = parse_term();
        while (true) {
            skip_ws();
            char ch = peek();
            if (ch == '+' || ch == '-') {
                advance();
                double rhs = parse_term();
                v = (ch == '+') ? v + rhs : v - rhs;
            } else {
                return v;
            }
        }
    }

    double parse_term() {
        double v = parse_factor();
        while (true) {
            skip_ws();
            char ch = peek();
            if (ch == '*' || ch == '/') {
                advance();
                double rhs = parse_factor();
                v = (ch == '*') ? v * rhs : v / rhs;
            } else {
                return v;
            }
        }
    }

    double parse_factor() {
        skip_ws();
        char ch = peek();
        if (ch == '-') {
            advance();
            return -parse_factor();
        }
        if (ch == '+') {
            advance();
            return parse_factor();
        }
        if (ch == '(') {
            advance();
            double v = parse_expr();
            expect(')');
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::string word = read_identifier();
            if (word == "pi") return std::numbers::pi;
            fail("unknown symbol in expression: " + word);
        }
        return read_number();
    }

    double read_number() {
        skip_ws();
        size_t start = pos_;
        while (!at_end()) {
            char ch = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == 'e' ||
                ch == 'E' ||
                ((ch == '+' || ch == '-') && pos_ > start &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))) {
                advance();
            } else {
                break;
            }
        }
        if (pos_ == start) fail("expected a number");
        std::string s(text_.substr(start, pos_ - start));
        try {
            return std::stod(s);
        } catch (const std::exception&) {
            fail("malformed number: " + s);
        }
        return 0;  // unreachable
    }

    int read_int() {
        skip_ws();
        size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        if (pos_ == start) fail("expected an integer");
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    std::string read_identifier() {
        skip_ws();
        size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            advance();
        if (pos_ == start) fail("expected an identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect_keyword(const std::string& kw) {
        std::string word = read_identifier();
        if (word != kw) fail("expected '" + kw + "'");
    }

    void read_until(char stop) {
        while (!at_end() && text_[pos_] != stop) advance();
    }

    void expect(char ch) {
        skip_ws();
        if (at_end() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
        advance();
    }

    void skip_ws() {
        while (!at_end()) {
            char ch = text_[pos_];
            if (ch == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (!at_end() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
            } else {
                break;
            }
        }
    }

    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    bool at_end() const { return pos_ >= text_.size(); }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw QasmError(msg, line_, col_); }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::string qreg_name_;
};

}  // namespace

Circuit parse_qasm(std::string_view text) { return Parser(text).parse(); }

std::string write_qasm(const Circuit& c) {
    validate(c);
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.num_qubits << "];\n";
    char buf[64];
    for (const Gate& g : c.gates) {
        out << g.name;
        if (!g.params.empty()) {
            out << '(';
            for (size_t i = 0; i < g.params.size(); ++i) {
                if (i) out << ',';
                std::snprintf(buf, sizeof buf, "%.17g", g.params[i]);
                out << buf;
            }
            out << ')';
        }
        out << ' ';
        for (size_t i = 0; i < g.qubits.size(); ++i) {
            if (i) out << ',';
            out << "q[" << g.qubits[i] << ']';
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace cifold
