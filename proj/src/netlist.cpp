#include "shilsim/netlist.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace shilsim {

namespace {

struct Cursor {
    std::string_view text;
    int line;
    std::size_t pos = 0;

    int col() const { return static_cast<int>(pos) + 1; }
    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }

    void skip_space() {
        while (!done() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    std::string ident() {
        skip_space();
        const std::size_t start = pos;
        while (!done() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                           text[pos] == '_' || text[pos] == '.')) {
            ++pos;
        }
        if (pos == start) {
            throw SyntaxError(line, col(), "expected an identifier");
        }
        return std::string(text.substr(start, pos - start));
    }

    void expect(char c) {
        skip_space();
        if (peek() != c) {
            throw SyntaxError(line, col(), std::string("expected '") + c + "'");
        }
        ++pos;
    }

    bool accept(char c) {
        skip_space();
        if (peek() != c) return false;
        ++pos;
        return true;
    }

    void expect_end() {
        skip_space();
        if (!done()) throw SyntaxError(line, col(), "unexpected trailing text");
    }
};

std::vector<std::string> arg_list(Cursor& c, std::size_t count) {
    c.expect('(');
    std::vector<std::string> args;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) c.expect(',');
        args.push_back(c.ident());
    }
    c.expect(')');
    return args;
}

} // namespace

GateNetwork parse_netlist(std::string_view text) {
    GateNetwork net;
    bool any_statement = false;
    int line_no = 0;
    std::size_t at = 0;
    while (at <= text.size()) {
        const std::size_t eol = text.find('\n', at);
        std::string_view raw = text.substr(at, eol == std::string_view::npos ? eol : eol - at);
        at = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        Cursor c{raw, line_no};
        c.skip_space();
        if (c.done()) continue;
        any_statement = true;

        const std::string head = c.ident();
        if (head == "input" || head == "output") {
            do {
                const std::string name = c.ident();
                head == "input" ? net.declare_input(name) : net.declare_output(name);
                c.skip_space();
            } while (!c.done());
            continue;
        }
        if (head == "latch") {
            const std::string q = c.ident();
            auto args = arg_list(c, 2);
            c.expect_end();
            net.add_latch(q, args[0], args[1]);
            continue;
        }
        // assignment: name = MAJ(...) | NOT(...) | CONST 0|1
        c.expect('=');
        const std::string op = c.ident();
        if (op == "MAJ") {
            net.add_gate(GateKind::maj_gate, arg_list(c, 3), head);
        } else if (op == "NOT") {
            net.add_gate(GateKind::not_gate, arg_list(c, 1), head);
        } else if (op == "CONST") {
            c.skip_space();
            const char v = c.peek();
            if (v != '0' && v != '1') {
                throw SyntaxError(line_no, c.col(), "CONST takes 0 or 1");
            }
            ++c.pos;
            net.add_gate(v == '1' ? GateKind::const1 : GateKind::const0, {}, head);
        } else {
            throw SyntaxError(line_no, c.col(),
                              "unknown gate '" + op + "' (expected MAJ, NOT, or CONST)");
        }
        c.expect_end();
    }
    if (!any_statement) {
        throw SyntaxError(line_no, 1, "empty netlist: no declarations or gates");
    }
    net.finalize();
    return net;
}

} // namespace shilsim
