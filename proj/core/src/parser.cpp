#include "tsat/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace tsat {

namespace {

enum class Tok {
    Ident,
    Keyword,  // nullary constants and word operators
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Diamond,
    Box,
    Until,
    Question,
    LParen,
    RParen,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

const std::unordered_map<std::string_view, Op>& prefix_words() {
    static const std::unordered_map<std::string_view, Op> table = {
        {"next", Op::Next},   {"wnext", Op::WNext}, {"prev", Op::Prev},         {"wprev", Op::WPrev},
        {"once", Op::Once},   {"sofar", Op::SoFar}, {"sdiamond", Op::SDiamond}, {"sfin", Op::Sfin},
        {"fin", Op::Fin},     {"dm", Op::Dm},       {"bm", Op::Bm},
    };
    return table;
}

const std::unordered_map<std::string_view, Op>& constant_words() {
    static const std::unordered_map<std::string_view, Op> table = {
        {"true", Op::True},   {"false", Op::False}, {"more", Op::More}, {"empty", Op::Empty},
        {"skip", Op::Skip},   {"finite", Op::Finite}, {"inf", Op::Inf}, {"first", Op::First},
    };
    return table;
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, "", {text_.size(), text_.size()}});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    Token symbol(Tok kind, std::size_t len) {
        Token t{kind, std::string(text_.substr(pos_, len)), {pos_, pos_ + len}};
        pos_ += len;
        return t;
    }

    Token next() {
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string word(text_.substr(start, pos_ - start));
            Tok kind = Tok::Ident;
            if (word == "U")
                kind = Tok::Until;
            else if (prefix_words().contains(word) || constant_words().contains(word))
                kind = Tok::Keyword;
            return {kind, std::move(word), {start, pos_}};
        }
        if (starts_with("<->")) return symbol(Tok::DArrow, 3);
        if (starts_with("->")) return symbol(Tok::Arrow, 2);
        if (starts_with("<>")) return symbol(Tok::Diamond, 2);
        if (starts_with("[]")) return symbol(Tok::Box, 2);
        switch (c) {
            case '~':
                return symbol(Tok::Tilde, 1);
            case '&':
                return symbol(Tok::Amp, 1);
            case '|':
                return symbol(Tok::Bar, 1);
            case '?':
                return symbol(Tok::Question, 1);
            case '(':
                return symbol(Tok::LParen, 1);
            case ')':
                return symbol(Tok::RParen, 1);
            default:
                break;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", {pos_, pos_ + 1});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, ParseOptions options) : toks_(std::move(tokens)), options_(options) {}

    Formula parse_all() {
        Formula f = equiv();
        if (peek().kind != Tok::End) {
            const Token& t = peek();
            throw SyntaxError("expected end of input, found '" + t.text + "'", t.span);
        }
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    Token take() { return toks_[pos_++]; }

    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail_expected(const std::string& what) const {
        const Token& t = peek();
        if (t.kind == Tok::End) {
            // Blame the innermost unclosed parenthesis, else the last token.
            SourceSpan span = t.span;
            if (!open_parens_.empty())
                span = open_parens_.back();
            else if (pos_ > 0)
                span = toks_[pos_ - 1].span;
            throw SyntaxError("unexpected end of input; expected " + what, span);
        }
        throw SyntaxError("expected " + what + ", found '" + t.text + "'", t.span);
    }

    Formula equiv() {
        Formula lhs = implies();
        while (accept(Tok::DArrow)) lhs = fm::equiv(lhs, implies());
        return lhs;
    }

    Formula implies() {
        Formula lhs = disjunction();
        if (accept(Tok::Arrow)) return fm::implies(lhs, implies());
        return lhs;
    }

    Formula disjunction() {
        Formula lhs = conjunction();
        while (accept(Tok::Bar)) lhs = fm::lor(lhs, conjunction());
        return lhs;
    }

    Formula conjunction() {
        Formula lhs = until();
        while (accept(Tok::Amp)) lhs = fm::land(lhs, until());
        return lhs;
    }

    Formula until() {
        Formula lhs = unary();
        if (accept(Tok::Until)) return fm::until(lhs, until());
        return lhs;
    }

    Formula unary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Tilde:
                take();
                return fm::lnot(unary());
            case Tok::Diamond:
                take();
                return fm::diamond(unary());
            case Tok::Box:
                take();
                return fm::box(unary());
            case Tok::Keyword: {
                auto it = prefix_words().find(t.text);
                if (it != prefix_words().end()) {
                    take();
                    return Formula::unary(it->second, unary());
                }
                break;
            }
            default:
                break;
        }
        return postfix();
    }

    Formula postfix() {
        Formula f = primary();
        while (accept(Tok::Question)) f = fm::empty_test(f);
        return f;
    }

    Formula primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Ident: {
                if (!options_.allow_reserved && is_reserved_name(t.text))
                    throw SyntaxError("identifier '" + t.text + "' is reserved for dependent variables", t.span);
                return fm::var(take().text);
            }
            case Tok::Keyword: {
                auto it = constant_words().find(t.text);
                if (it != constant_words().end()) {
                    take();
                    return Formula::nullary(it->second);
                }
                break;
            }
            case Tok::LParen: {
                open_parens_.push_back(take().span);
                Formula inner = equiv();
                if (!accept(Tok::RParen)) fail_expected("')'");
                open_parens_.pop_back();
                return inner;
            }
            default:
                break;
        }
        fail_expected("formula");
    }

    std::vector<Token> toks_;
    ParseOptions options_;
    std::size_t pos_ = 0;
    std::vector<SourceSpan> open_parens_;
};

// Binding strength used for minimal parenthesisation.
enum Level : int { kEquiv = 1, kImplies, kOr, kAnd, kUntil, kUnary, kPostfix, kAtom };

int level_of(Op op) {
    switch (op) {
        case Op::Equiv:
            return kEquiv;
        case Op::Implies:
            return kImplies;
        case Op::Or:
            return kOr;
        case Op::And:
            return kAnd;
        case Op::Until:
            return kUntil;
        case Op::EmptyTest:
            return kPostfix;
        default:
            return arity(op) == 0 ? kAtom : kUnary;
    }
}

bool right_assoc(Op op) { return op == Op::Implies || op == Op::Until; }

std::string_view binary_symbol(Op op) {
    switch (op) {
        case Op::Equiv:
            return "<->";
        case Op::Implies:
            return "->";
        case Op::Or:
            return "|";
        case Op::And:
            return "&";
        default:
            return "U";
    }
}

std::string_view unary_symbol(Op op) {
    switch (op) {
        case Op::Not:
            return "~";
        case Op::Diamond:
            return "<>";
        case Op::Box:
            return "[]";
        case Op::Next:
            return "next";
        case Op::WNext:
            return "wnext";
        case Op::Prev:
            return "prev";
        case Op::WPrev:
            return "wprev";
        case Op::Once:
            return "once";
        case Op::SoFar:
            return "sofar";
        case Op::SDiamond:
            return "sdiamond";
        case Op::Sfin:
            return "sfin";
        case Op::Fin:
            return "fin";
        case Op::Dm:
            return "dm";
        case Op::Bm:
            return "bm";
        default:
            return "?";
    }
}

std::string_view constant_symbol(Op op) {
    switch (op) {
        case Op::True:
            return "true";
        case Op::False:
            return "false";
        case Op::More:
            return "more";
        case Op::Empty:
            return "empty";
        case Op::Skip:
            return "skip";
        case Op::Finite:
            return "finite";
        case Op::Inf:
            return "inf";
        case Op::First:
            return "first";
        default:
            return "?";
    }
}

void emit(std::ostringstream& out, const Formula& f);

void emit_operand(std::ostringstream& out, const Formula& f, bool parens) {
    if (parens) out << '(';
    emit(out, f);
    if (parens) out << ')';
}

void emit(std::ostringstream& out, const Formula& f) {
    const Op op = f.op();
    const int level = level_of(op);
    if (op == Op::Var) {
        out << f.name();
        return;
    }
    switch (arity(op)) {
        case 0:
            out << constant_symbol(op);
            return;
        case 1: {
            const Formula& a = f.lhs();
            if (op == Op::EmptyTest) {
                emit_operand(out, a, level_of(a.op()) < kPostfix);
                out << '?';
                return;
            }
            out << unary_symbol(op);
            if (op != Op::Not) out << ' ';
            emit_operand(out, a, level_of(a.op()) < kUnary);
            return;
        }
        default: {
            const Formula& a = f.lhs();
            const Formula& b = f.rhs();
            const int la = level_of(a.op());
            const int lb = level_of(b.op());
            const bool ra = right_assoc(op);
            emit_operand(out, a, la < level || (la == level && ra));
            out << ' ' << binary_symbol(op) << ' ';
            emit_operand(out, b, lb < level || (lb == level && !ra));
            return;
        }
    }
}

}  // namespace

Formula parse(std::string_view text, ParseOptions options) {
    Parser parser(Lexer(text).run(), options);
    return parser.parse_all();
}

std::string print(const Formula& f) {
    std::ostringstream out;
    emit(out, f);
    return out.str();
}

std::string describe(const SyntaxError& error, std::string_view text) {
    std::ostringstream out;
    const SourceSpan span = error.span();
    out << "syntax error at " << span.start << '-' << span.end << ": " << error.what() << '\n';
    out << "  " << text << '\n';
    out << "  " << std::string(span.start, ' ') << std::string(std::max<std::size_t>(1, span.end - span.start), '^');
    return out.str();
}

}  // namespace tsat
