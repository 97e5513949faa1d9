#include "contourforge/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "contourforge/errors.hpp"

namespace contourforge {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    std::size_t offset = 0;  // 1-based position of the first byte
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_body(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token tok;
        tok.offset = pos_ + 1;
        if (pos_ >= src_.size()) {
            tok.kind = Tok::End;
            return tok;
        }
        const char c = src_[pos_];
        switch (c) {
            case '+': tok.kind = Tok::Plus; ++pos_; return tok;
            case '-': tok.kind = Tok::Minus; ++pos_; return tok;
            case '*': tok.kind = Tok::Star; ++pos_; return tok;
            case '/': tok.kind = Tok::Slash; ++pos_; return tok;
            case '^': tok.kind = Tok::Caret; ++pos_; return tok;
            case '(': tok.kind = Tok::LParen; ++pos_; return tok;
            case ')': tok.kind = Tok::RParen; ++pos_; return tok;
            default: break;
        }
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1])))
            return lex_number(tok);
        if (is_ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && is_ident_body(src_[pos_])) ++pos_;
            tok.kind = Tok::Ident;
            tok.text = std::string(src_.substr(start, pos_ - start));
            return tok;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", tok.offset);
    }

private:
    Token lex_number(Token tok) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && is_digit(src_[pos_])) {
                while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            } else {
                pos_ = mark;  // "2e" is the number 2 followed by identifier e
            }
        }
        tok.kind = Tok::Number;
        tok.text = std::string(src_.substr(start, pos_ - start));
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(),
                                         tok.number);
        if (ec == std::errc::result_out_of_range)
            throw SyntaxError("number literal out of double range", tok.offset);
        (void)ptr;
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

const char* kVariables[] = {"z", "t", "theta"};
const char* kFunctions[] = {"exp", "sin", "cos", "sinh", "cosh", "sinc"};

bool is_variable(const std::string& name) {
    for (const char* v : kVariables)
        if (name == v) return true;
    return false;
}

bool is_function(const std::string& name) {
    for (const char* f : kFunctions)
        if (name == f) return true;
    return false;
}

ExprPtr make_function(const std::string& name, ExprPtr arg) {
    if (name == "exp") return Expr::exp(std::move(arg));
    if (name == "sin") return Expr::sin(std::move(arg));
    if (name == "cos") return Expr::cos(std::move(arg));
    if (name == "sinh") return Expr::sinh(std::move(arg));
    if (name == "cosh") return Expr::cosh(std::move(arg));
    return Expr::sinc(std::move(arg));
}

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    ExprPtr parse() {
        ExprPtr e = parse_expr_rule();
        if (cur_.kind != Tok::End)
            throw SyntaxError("unexpected trailing input", cur_.offset, {"end of input"});
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    bool accept(Tok k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }

    ExprPtr parse_expr_rule() {
        ExprPtr e = parse_term();
        for (;;) {
            if (accept(Tok::Plus)) {
                e = Expr::add(std::move(e), parse_term());
            } else if (accept(Tok::Minus)) {
                e = Expr::add(std::move(e), Expr::neg(parse_term()));
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            if (accept(Tok::Star)) {
                e = Expr::mul(std::move(e), parse_factor());
            } else if (accept(Tok::Slash)) {
                e = Expr::div(std::move(e), parse_factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_factor() {
        if (accept(Tok::Minus)) return Expr::neg(parse_factor());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (!accept(Tok::Caret)) return base;
        if (cur_.kind == Tok::Minus)
            throw SyntaxError("exponent must be a non-negative integer; use division for negative powers",
                              cur_.offset, {"non-negative integer"});
        if (cur_.kind != Tok::Number)
            throw SyntaxError("expected integer exponent", cur_.offset, {"non-negative integer"});
        for (char c : cur_.text)
            if (!is_digit(c))
                throw SyntaxError("exponent must be a non-negative integer", cur_.offset,
                                  {"non-negative integer"});
        int exponent = 0;
        auto [ptr, ec] = std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(),
                                         exponent);
        (void)ptr;
        if (ec != std::errc{})
            throw SyntaxError("exponent out of range", cur_.offset, {"non-negative integer"});
        advance();
        return Expr::ipow(std::move(base), exponent);
    }

    ExprPtr parse_atom() {
        if (cur_.kind == Tok::Number) {
            ExprPtr e = Expr::constant(Complex{cur_.number, 0.0});
            advance();
            return e;
        }
        if (cur_.kind == Tok::LParen) {
            advance();
            ExprPtr e = parse_expr_rule();
            if (!accept(Tok::RParen))
                throw SyntaxError("expected ')'", cur_.offset, {"')'"});
            return e;
        }
        if (cur_.kind == Tok::Ident) {
            Token name = cur_;
            advance();
            if (name.text == "i") {
                if (cur_.kind == Tok::LParen)
                    throw ArityError(name.text, name.offset, "'i' is the imaginary unit, not a function");
                return Expr::constant(Complex{0.0, 1.0});
            }
            if (is_function(name.text)) {
                if (cur_.kind != Tok::LParen)
                    throw ArityError(name.text, cur_.offset,
                                     "function '" + name.text + "' requires a parenthesized argument");
                advance();
                ExprPtr arg = parse_expr_rule();
                if (!accept(Tok::RParen))
                    throw SyntaxError("expected ')'", cur_.offset, {"')'"});
                return make_function(name.text, std::move(arg));
            }
            if (is_variable(name.text)) {
                if (cur_.kind == Tok::LParen)
                    throw ArityError(name.text, name.offset,
                                     "'" + name.text + "' is a variable, not a function");
                return Expr::variable(name.text);
            }
            throw UnknownIdentifier(name.text, name.offset);
        }
        throw SyntaxError("expected a number, identifier or '('", cur_.offset,
                          {"number", "identifier", "'('", "'-'"});
    }

    Lexer lexer_;
    Token cur_;
};

}  // namespace

ExprPtr parse_expr(std::string_view source) { return Parser(source).parse(); }

}  // namespace contourforge
