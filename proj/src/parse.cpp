#include "cmpoisson/parse.hpp"

#include <cctype>

namespace cmpoisson {

namespace {

class Parser {
public:
    Parser(std::string_view text, Mode mode) : text_(text), mode_(mode) {}

    TracePolynomial run() {
        TracePolynomial out(mode_);
        skip();
        if (at_end()) fail("empty polynomial");
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            advance();
        }
        while (true) {
            add_term(out, negative);
            skip();
            if (at_end()) break;
            if (peek() != '+' && peek() != '-') fail(std::string("expected '+' or '-', found '") + peek() + "'");
            negative = peek() == '-';
            advance();
        }
        return out;
    }

private:
    void add_term(TracePolynomial& out, bool negative) {
        Coefficient c(negative ? -1 : 1);
        Factors factors;
        bool any = false;
        while (true) {
            skip();
            if (at_end()) break;
            const char ch = peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                c *= Coefficient(read_rational());
            } else if (ch == 'n') {
                advance();
                int power = 1;
                skip();
                if (!at_end() && peek() == '^') {
                    advance();
                    power = read_int();
                }
                c *= Coefficient::n_power(power);
            } else if (ch == 't') {
                factors.push_back(read_factor());
            } else {
                break;
            }
            any = true;
            skip();
            if (!at_end() && peek() == '*') {
                advance();
                skip();
                if (at_end()) fail("dangling '*'");
            }
        }
        if (!any) fail(at_end() ? "expected a term" : std::string("unexpected '") + peek() + "'");
        try {
            out.add_term(c, std::move(factors));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    CyclicWord read_factor() {
        expect('t');
        expect('r');
        skip();
        expect('(');
        Word w;
        while (true) {
            skip();
            if (at_end()) fail("unterminated tr(");
            const char ch = peek();
            if (ch == ')') {
                advance();
                break;
            }
            Letter l;
            switch (ch) {
                case 'A': l = Letter::A; break;
                case 'B': l = Letter::B; break;
                case 'X': l = Letter::X; break;
                case 'Y': l = Letter::Y; break;
                default: fail(std::string("unexpected '") + ch + "' in word");
            }
            advance();
            skip();
            int e = 1;
            if (!at_end() && peek() == '^') {
                advance();
                e = read_int();
                if (e < 0) fail("negative exponent in word");
            }
            w.append(l, e);
        }
        return CyclicWord(w);
    }

    Rational read_rational() {
        mpz_class num(read_digits());
        skip();
        if (!at_end() && peek() == '/') {
            advance();
            skip();
            mpz_class den(read_digits());
            if (den == 0) fail("zero denominator");
            Rational r(num, den);
            r.canonicalize();
            return r;
        }
        return Rational(num);
    }

    int read_int() {
        skip();
        bool negative = false;
        if (!at_end() && (peek() == '-' || peek() == '+')) {
            negative = peek() == '-';
            advance();
            skip();
        }
        const std::string digits = read_digits();
        if (digits.size() > 6) fail("exponent too large");
        const int v = std::stoi(digits);
        return negative ? -v : v;
    }

    std::string read_digits() {
        std::string out;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            out += peek();
            advance();
        }
        if (out.empty()) fail("expected a number");
        return out;
    }

    void expect(char ch) {
        if (at_end() || peek() != ch) fail(std::string("expected '") + ch + "'");
        advance();
    }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, column_, message); }

    std::string_view text_;
    Mode mode_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

TracePolynomial parse_polynomial(std::string_view text, Mode mode) { return Parser(text, mode).run(); }

}  // namespace cmpoisson
