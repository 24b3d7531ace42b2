#include "hyperfell/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "hyperfell/util.hpp"

namespace hyperfell {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double value = 0.0;
    int line = 1;
    int column = 1;
};

struct ParseFail {
    ParseError err;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(&text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= src_->size()) {
            tok_.kind = Tok::End;
            tok_.text = "<end>";
            return;
        }
        char c = (*src_)[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_->size() &&
                   (std::isalnum(static_cast<unsigned char>((*src_)[pos_])) || (*src_)[pos_] == '_'))
                bump();
            tok_.kind = Tok::Ident;
            tok_.text = src_->substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_->size() && std::isdigit(static_cast<unsigned char>((*src_)[pos_ + 1])))) {
            std::size_t start = pos_;
            while (pos_ < src_->size() && (std::isdigit(static_cast<unsigned char>((*src_)[pos_])) || (*src_)[pos_] == '.'))
                bump();
            if (pos_ < src_->size() && ((*src_)[pos_] == 'e' || (*src_)[pos_] == 'E')) {
                std::size_t save = pos_;
                bump();
                if (pos_ < src_->size() && ((*src_)[pos_] == '+' || (*src_)[pos_] == '-')) bump();
                if (pos_ < src_->size() && std::isdigit(static_cast<unsigned char>((*src_)[pos_]))) {
                    while (pos_ < src_->size() && std::isdigit(static_cast<unsigned char>((*src_)[pos_]))) bump();
                } else {
                    pos_ = save;  // bare 'e' belongs to the next token
                }
            }
            tok_.kind = Tok::Number;
            tok_.text = src_->substr(start, pos_ - start);
            tok_.value = std::strtod(tok_.text.c_str(), nullptr);
            return;
        }
        // multi-char comparison operators
        if ((c == '<' || c == '>') && pos_ + 1 < src_->size() && (*src_)[pos_ + 1] == '=') {
            tok_.kind = Tok::Punct;
            tok_.text = src_->substr(pos_, 2);
            bump();
            bump();
            return;
        }
        tok_.kind = Tok::Punct;
        tok_.text = std::string(1, c);
        bump();
    }

    void skip_ws() {
        while (pos_ < src_->size()) {
            char c = (*src_)[pos_];
            if (c == '#') {
                while (pos_ < src_->size() && (*src_)[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if ((*src_)[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string* src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    Scene parse() {
        Scene s;
        expect_ident("region");
        s.name = expect_plain_ident("scene name");
        expect_ident("dim");
        Token d = expect(Tok::Number, "dimension");
        double dv = d.value;
        if (dv < 1 || dv > kMaxDim || dv != static_cast<int>(dv))
            fail(d, "dimension must be an integer in [1," + std::to_string(kMaxDim) + "]", {});
        s.dim = static_cast<int>(dv);
        dim_ = s.dim;
        expect_punct("{");
        auto body = parse_or();
        expect_punct("}");
        expect_ident("order");
        Token ord = expect(Tok::Ident, "order kind");
        if (ord.text == "coordinatewise") {
            s.order = ConeOrder::coordinatewise();
        } else if (ord.text == "halfspaces") {
            s.order = parse_halfspaces();
        } else {
            fail(ord, "unknown order kind '" + ord.text + "'", {"coordinatewise", "halfspaces"});
        }
        s.default_window = Box::cube(s.dim, -1.0, 1.0);
        bool have_window = false;
        while (lex_.peek().kind == Tok::Ident) {
            Token t = lex_.peek();
            if (t.text == "window") {
                lex_.take();
                if (have_window) fail(t, "duplicate window clause", {});
                s.default_window = parse_box();
                have_window = true;
            } else if (t.text == "point") {
                lex_.take();
                s.point_atoms.push_back(parse_point());
            } else {
                fail(t, "unexpected trailing token '" + t.text + "'", {"window", "point", "<end>"});
            }
        }
        Token end = lex_.peek();
        if (end.kind != Tok::End) fail(end, "unexpected trailing token '" + end.text + "'", {"<end>"});
        if (!s.default_window.valid()) {
            Token t;
            fail(t, "window bounds must satisfy lo < hi per axis", {});
        }

        if (!s.point_atoms.empty()) {
            std::vector<std::unique_ptr<BoolExpr>> kids;
            kids.push_back(std::move(body));
            kids.push_back(BoolExpr::point_atom(s.point_atoms));
            body = BoolExpr::disj(std::move(kids));
        }
        s.membership = std::shared_ptr<const BoolExpr>(std::move(body));
        // landmarks for the explicit points
        int k = 0;
        for (const auto& p : s.point_atoms)
            s.landmarks.push_back({"p" + std::to_string(k++), p, false});
        return s;
    }

private:
    [[noreturn]] void fail(const Token& t, std::string msg, std::vector<std::string> expected) {
        ParseError e;
        e.line = t.line;
        e.column = t.column;
        e.message = std::move(msg);
        e.expected = std::move(expected);
        throw ParseFail{std::move(e)};
    }

    Token expect(Tok kind, const std::string& what) {
        Token t = lex_.peek();
        if (t.kind != kind) fail(t, "expected " + what + ", found '" + t.text + "'", {what});
        return lex_.take();
    }

    void expect_ident(const std::string& word) {
        Token t = lex_.peek();
        if (t.kind != Tok::Ident || t.text != word)
            fail(t, "expected '" + word + "', found '" + t.text + "'", {word});
        lex_.take();
    }

    void expect_punct(const std::string& p) {
        Token t = lex_.peek();
        if (t.kind != Tok::Punct || t.text != p)
            fail(t, "expected '" + p + "', found '" + t.text + "'", {p});
        lex_.take();
    }

    bool accept_punct(const std::string& p) {
        Token t = lex_.peek();
        if (t.kind == Tok::Punct && t.text == p) {
            lex_.take();
            return true;
        }
        return false;
    }

    std::string expect_plain_ident(const std::string& what) {
        Token t = expect(Tok::Ident, what);
        return t.text;
    }

    ConeOrder parse_halfspaces() {
        expect_punct("[");
        std::vector<Point> normals;
        normals.push_back(parse_point());
        while (accept_punct(";")) normals.push_back(parse_point());
        expect_punct("]");
        for (const auto& n : normals) {
            if (n.dim() != dim_) {
                Token t = lex_.peek();
                fail(t, "halfspace normal dimension mismatch", {});
            }
        }
        return ConeOrder::halfspaces(std::move(normals));
    }

    Point parse_point() {
        expect_punct("(");
        std::vector<double> vals;
        vals.push_back(parse_signed_number());
        while (accept_punct(",")) vals.push_back(parse_signed_number());
        Token close = lex_.peek();
        expect_punct(")");
        if (static_cast<int>(vals.size()) != dim_)
            fail(close, "point has " + std::to_string(vals.size()) + " coordinates, scene dimension is " +
                            std::to_string(dim_),
                 {});
        return Point::of(vals);
    }

    Box parse_box() {
        std::vector<double> lo, hi;
        while (true) {
            expect_punct("[");
            lo.push_back(parse_signed_number());
            expect_punct(",");
            hi.push_back(parse_signed_number());
            expect_punct("]");
            Token t = lex_.peek();
            if (t.kind == Tok::Ident && t.text == "x") {
                lex_.take();
                continue;
            }
            break;
        }
        Token t = lex_.peek();
        if (static_cast<int>(lo.size()) != dim_)
            fail(t, "window has " + std::to_string(lo.size()) + " axes, scene dimension is " + std::to_string(dim_),
                 {});
        return Box{Point::of(lo), Point::of(hi)};
    }

    double parse_signed_number() {
        bool neg = false;
        while (accept_punct("-")) neg = !neg;
        Token t = expect(Tok::Number, "number");
        return neg ? -t.value : t.value;
    }

    std::unique_ptr<BoolExpr> parse_or() {
        std::vector<std::unique_ptr<BoolExpr>> kids;
        kids.push_back(parse_and());
        while (lex_.peek().kind == Tok::Ident && lex_.peek().text == "or") {
            lex_.take();
            kids.push_back(parse_and());
        }
        if (kids.size() == 1) return std::move(kids.front());
        return BoolExpr::disj(std::move(kids));
    }

    std::unique_ptr<BoolExpr> parse_and() {
        std::vector<std::unique_ptr<BoolExpr>> kids;
        kids.push_back(parse_not());
        while (lex_.peek().kind == Tok::Ident && lex_.peek().text == "and") {
            lex_.take();
            kids.push_back(parse_not());
        }
        if (kids.size() == 1) return std::move(kids.front());
        return BoolExpr::conj(std::move(kids));
    }

    std::unique_ptr<BoolExpr> parse_not() {
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "not") {
            lex_.take();
            return BoolExpr::negation(parse_not());
        }
        return parse_cmp();
    }

    std::unique_ptr<BoolExpr> parse_cmp() {
        // Boolean parentheses and arithmetic parentheses share '('; try a
        // boolean reading first and fall back to an arithmetic one.
        if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "(") {
            Lexer saved = lex_;
            lex_.take();
            try {
                auto inner = parse_or();
                expect_punct(")");
                Token t = lex_.peek();
                if (t.kind == Tok::Punct &&
                    (t.text == "<" || t.text == "<=" || t.text == "=" || t.text == ">=" || t.text == ">"))
                    fail(t, "comparison of boolean expression", {});
                return inner;
            } catch (const ParseFail&) {
                lex_ = saved;
            }
        }
        auto l = parse_add();
        Token t = lex_.peek();
        CmpOp op;
        if (t.kind == Tok::Punct && t.text == "<") op = CmpOp::Lt;
        else if (t.kind == Tok::Punct && t.text == "<=") op = CmpOp::Le;
        else if (t.kind == Tok::Punct && t.text == "=") op = CmpOp::Eq;
        else if (t.kind == Tok::Punct && t.text == ">=") op = CmpOp::Ge;
        else if (t.kind == Tok::Punct && t.text == ">") op = CmpOp::Gt;
        else fail(t, "expected comparison operator, found '" + t.text + "'", {"<", "<=", "=", ">=", ">"});
        lex_.take();
        auto r = parse_add();
        return BoolExpr::cmp(std::move(l), op, std::move(r));
    }

    std::unique_ptr<NumExpr> parse_add() {
        auto l = parse_mul();
        while (true) {
            Token t = lex_.peek();
            if (t.kind == Tok::Punct && (t.text == "+" || t.text == "-")) {
                lex_.take();
                auto r = parse_mul();
                l = NumExpr::binary(t.text == "+" ? NumExpr::Kind::Add : NumExpr::Kind::Sub, std::move(l),
                                    std::move(r));
            } else {
                return l;
            }
        }
    }

    std::unique_ptr<NumExpr> parse_mul() {
        auto l = parse_unary();
        while (true) {
            Token t = lex_.peek();
            if (t.kind == Tok::Punct && t.text == "*") {
                lex_.take();
                auto r = parse_unary();
                l = NumExpr::binary(NumExpr::Kind::Mul, std::move(l), std::move(r));
            } else {
                return l;
            }
        }
    }

    std::unique_ptr<NumExpr> parse_unary() {
        if (accept_punct("-")) return NumExpr::negate(parse_unary());
        if (accept_punct("+")) return parse_unary();
        return parse_pow();
    }

    std::unique_ptr<NumExpr> parse_pow() {
        auto base = parse_atom();
        if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "^") {
            lex_.take();
            Token e = expect(Tok::Number, "integer exponent");
            if (e.value != static_cast<int>(e.value) || e.value < 0 || e.value > 16)
                fail(e, "non-polynomial expression: exponent must be a small non-negative integer", {});
            return NumExpr::power(std::move(base), static_cast<int>(e.value));
        }
        return base;
    }

    std::unique_ptr<NumExpr> parse_atom() {
        Token t = lex_.peek();
        if (t.kind == Tok::Number) {
            lex_.take();
            return NumExpr::number(t.value);
        }
        if (t.kind == Tok::Punct && t.text == "(") {
            lex_.take();
            auto e = parse_add();
            expect_punct(")");
            return e;
        }
        if (t.kind == Tok::Ident) {
            if (t.text.size() >= 2 && t.text[0] == 'x') {
                bool digits = true;
                for (std::size_t i = 1; i < t.text.size(); ++i)
                    if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) digits = false;
                if (digits) {
                    int idx = std::atoi(t.text.c_str() + 1);
                    if (idx < 1 || idx > dim_)
                        fail(t, "unknown variable " + t.text, {});
                    lex_.take();
                    return NumExpr::variable(idx - 1);
                }
            }
            fail(t, "unknown identifier '" + t.text + "' in expression", {"x1..x" + std::to_string(dim_), "number"});
        }
        fail(t, "expected expression atom, found '" + t.text + "'", {"number", "x<k>", "("});
    }

    Lexer lex_;
    int dim_ = 0;
};

void print_expr_clauses(const Scene& s, std::string& out) {
    // The membership body excludes point atoms; they print as trailing
    // clauses.
    const BoolExpr* body = s.membership.get();
    if (!s.point_atoms.empty() && body->kind == BoolExpr::Kind::Or && body->children.size() == 2 &&
        body->children.back()->kind == BoolExpr::Kind::PointAtom) {
        body = body->children.front().get();
    }
    body->print(out, 0);
}

}  // namespace

std::string ParseError::str() const {
    std::string s = "parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
        s += " (expected";
        for (const auto& e : expected) s += " " + e;
        s += ")";
    }
    return s;
}

ParseResult parse_scene(const std::string& text) {
    try {
        Parser p(text);
        return p.parse();
    } catch (const ParseFail& f) {
        return f.err;
    }
}

std::string print_scene(const Scene& s) {
    std::string out = "region " + s.name + " dim " + std::to_string(s.dim) + " { ";
    print_expr_clauses(s, out);
    out += " } order ";
    if (s.order.kind == ConeKind::Coordinatewise) {
        out += "coordinatewise";
    } else {
        out += "halfspaces [";
        for (std::size_t i = 0; i < s.order.normals.size(); ++i) {
            if (i) out += "; ";
            out += s.order.normals[i].str();
        }
        out += "]";
    }
    out += " window ";
    for (int i = 0; i < s.dim; ++i) {
        if (i) out += "x";
        out += "[" + fmt_double(s.default_window.lo[i]) + "," + fmt_double(s.default_window.hi[i]) + "]";
    }
    for (const auto& p : s.point_atoms) out += " point " + p.str();
    return out;
}

}  // namespace hyperfell
