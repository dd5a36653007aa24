#include "liprior/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "liprior/errors.hpp"

namespace liprior {

namespace {

enum class TokKind { Ident, Number, String, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    double number = 0.0;
    int line = 0;
    int column = 0;
};

// Tokenizes a single logical line (comments already stripped).
class LineLexer {
  public:
    LineLexer(std::string_view line, int line_no) : line_(line), line_no_(line_no) {
        advance();
    }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(msg, line_no_, current_.kind == TokKind::End
                                             ? static_cast<int>(line_.size()) + 1
                                             : current_.column);
    }

  private:
    void advance() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
        current_ = Token{};
        current_.line = line_no_;
        current_.column = static_cast<int>(pos_) + 1;
        if (pos_ >= line_.size()) {
            current_.kind = TokKind::End;
            return;
        }
        char c = line_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < line_.size() &&
                   (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_'))
                ++pos_;
            current_.kind = TokKind::Ident;
            current_.text = std::string(line_.substr(start, pos_ - start));
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < line_.size() &&
             std::isdigit(static_cast<unsigned char>(line_[pos_ + 1])))) {
            size_t start = pos_;
            while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])))
                ++pos_;
            if (pos_ < line_.size() && line_[pos_] == '.') {
                ++pos_;
                while (pos_ < line_.size() &&
                       std::isdigit(static_cast<unsigned char>(line_[pos_])))
                    ++pos_;
            }
            if (pos_ < line_.size() && (line_[pos_] == 'e' || line_[pos_] == 'E')) {
                size_t mark = pos_;
                ++pos_;
                if (pos_ < line_.size() && (line_[pos_] == '+' || line_[pos_] == '-')) ++pos_;
                if (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
                    while (pos_ < line_.size() &&
                           std::isdigit(static_cast<unsigned char>(line_[pos_])))
                        ++pos_;
                } else {
                    pos_ = mark;  // 'e' was not an exponent
                }
            }
            current_.kind = TokKind::Number;
            current_.text = std::string(line_.substr(start, pos_ - start));
            auto res = std::from_chars(line_.data() + start, line_.data() + pos_,
                                       current_.number);
            if (res.ec != std::errc{})
                throw SyntaxError("malformed numeric literal '" + current_.text + "'",
                                  line_no_, static_cast<int>(start) + 1);
            return;
        }
        if (c == '"') {
            size_t start = ++pos_;
            while (pos_ < line_.size() && line_[pos_] != '"') ++pos_;
            if (pos_ >= line_.size())
                throw SyntaxError("unterminated string literal", line_no_,
                                  static_cast<int>(start));
            current_.kind = TokKind::String;
            current_.text = std::string(line_.substr(start, pos_ - start));
            ++pos_;
            return;
        }
        static const std::string punct = "()+-*/^,={}";
        if (punct.find(c) != std::string::npos) {
            current_.kind = TokKind::Punct;
            current_.text = std::string(1, c);
            ++pos_;
            return;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", line_no_,
                          static_cast<int>(pos_) + 1);
    }

    std::string_view line_;
    int line_no_;
    size_t pos_ = 0;
    Token current_;
};

bool is_punct(const Token& t, const char* p) {
    return t.kind == TokKind::Punct && t.text == p;
}
bool is_ident(const Token& t, const char* name) {
    return t.kind == TokKind::Ident && t.text == name;
}

// --- expression parsing (precedence climbing per the README grammar) ---

class ExprParser {
  public:
    ExprParser(LineLexer& lex, const std::map<std::string, int>& slots)
        : lex_(lex), slots_(slots) {}

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        if (lex_.peek().kind != TokKind::End)
            lex_.fail("unexpected trailing input in expression");
        return e;
    }

  private:
    ExprPtr parse_sum() {
        ExprPtr lhs = parse_term();
        while (is_punct(lex_.peek(), "+") || is_punct(lex_.peek(), "-")) {
            bool add = lex_.next().text == "+";
            ExprPtr rhs = parse_term();
            lhs = Expr::binary(add ? BinaryOp::Add : BinaryOp::Sub, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        while (is_punct(lex_.peek(), "*") || is_punct(lex_.peek(), "/")) {
            bool mul = lex_.next().text == "*";
            ExprPtr rhs = parse_unary();
            lhs = Expr::binary(mul ? BinaryOp::Mul : BinaryOp::Div, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (is_punct(lex_.peek(), "-")) {
            lex_.next();
            return Expr::unary(UnaryOp::Neg, parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (is_punct(lex_.peek(), "^")) {
            lex_.next();
            ExprPtr exponent = parse_unary();  // right-associative
            return Expr::binary(BinaryOp::Pow, base, exponent);
        }
        return base;
    }

    ExprPtr parse_atom() {
        Token t = lex_.peek();
        if (t.kind == TokKind::Number) {
            lex_.next();
            return Expr::constant(t.number);
        }
        if (t.kind == TokKind::Ident) {
            lex_.next();
            if (is_punct(lex_.peek(), "(")) {
                if (!Expr::is_known_function(t.text))
                    throw UnknownFunction("unknown function '" + t.text + "' at line " +
                                          std::to_string(t.line) + ", column " +
                                          std::to_string(t.column));
                lex_.next();
                std::vector<ExprPtr> args;
                args.push_back(parse_sum());
                while (is_punct(lex_.peek(), ",")) {
                    lex_.next();
                    args.push_back(parse_sum());
                }
                if (!is_punct(lex_.peek(), ")")) lex_.fail("expected ')'");
                lex_.next();
                return Expr::call(t.text, std::move(args));
            }
            auto it = slots_.find(t.text);
            if (it == slots_.end())
                throw UnknownVariable("unknown variable '" + t.text + "' at line " +
                                      std::to_string(t.line) + ", column " +
                                      std::to_string(t.column));
            return Expr::variable(t.text, it->second);
        }
        if (is_punct(t, "(")) {
            lex_.next();
            ExprPtr inner = parse_sum();
            if (!is_punct(lex_.peek(), ")")) lex_.fail("expected ')'");
            lex_.next();
            return inner;
        }
        lex_.fail("expected a number, variable, function call, or '('");
    }

    LineLexer& lex_;
    const std::map<std::string, int>& slots_;
};

// --- support parsing ---

double parse_bound(LineLexer& lex) {
    bool negative = false;
    if (is_punct(lex.peek(), "-")) {
        lex.next();
        negative = true;
    }
    Token t = lex.peek();
    double v;
    if (t.kind == TokKind::Number) {
        v = t.number;
    } else if (is_ident(t, "inf")) {
        v = std::numeric_limits<double>::infinity();
    } else {
        lex.fail("expected a number or 'inf'");
    }
    lex.next();
    return negative ? -v : v;
}

SupportSpec parse_interval(LineLexer& lex) {
    if (!is_punct(lex.peek(), "(")) lex.fail("expected '('");
    lex.next();
    double lo = parse_bound(lex);
    if (!is_punct(lex.peek(), ",")) lex.fail("expected ','");
    lex.next();
    double hi = parse_bound(lex);
    if (!is_punct(lex.peek(), ")")) lex.fail("expected ')'");
    lex.next();
    return SupportSpec::interval(lo, hi);
}

SupportSpec parse_set(LineLexer& lex) {
    lex.next();  // '{'
    std::vector<double> values;
    while (true) {
        bool negative = false;
        if (is_punct(lex.peek(), "-")) {
            lex.next();
            negative = true;
        }
        if (lex.peek().kind != TokKind::Number) lex.fail("expected a number in set");
        double v = lex.next().number;
        values.push_back(negative ? -v : v);
        if (is_punct(lex.peek(), ",")) {
            lex.next();
            continue;
        }
        break;
    }
    if (!is_punct(lex.peek(), "}")) lex.fail("expected '}'");
    lex.next();
    return SupportSpec::finite_set(std::move(values));
}

struct Lines {
    std::vector<std::pair<int, std::string>> content;  // (line number, stripped text)
};

Lines split_lines(std::string_view text) {
    Lines out;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        ++line_no;
        std::string_view raw = text.substr(pos, eol - pos);
        size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        size_t last = raw.find_last_not_of(" \t\r");
        std::string stripped =
            last == std::string_view::npos ? std::string() : std::string(raw.substr(0, last + 1));
        if (!stripped.empty()) out.content.emplace_back(line_no, stripped);
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    return out;
}

}  // namespace

ModelSpec parse_model(std::string_view text) {
    Lines lines = split_lines(text);
    ModelSpec m;
    bool have_model = false, have_obs = false;
    std::optional<std::pair<int, std::string>> logpdf_line;
    std::map<std::string, int> declared;  // name -> declaration line

    for (const auto& [line_no, content] : lines) {
        LineLexer lex(content, line_no);
        Token head = lex.next();
        if (head.kind != TokKind::Ident)
            throw SyntaxError("expected a declaration keyword", line_no, head.column);

        if (head.text == "model") {
            if (have_model) throw SyntaxError("duplicate model line", line_no, head.column);
            if (lex.peek().kind != TokKind::String) lex.fail("expected a quoted model name");
            m.name = lex.next().text;
            if (lex.peek().kind != TokKind::End) lex.fail("unexpected trailing input");
            have_model = true;
        } else if (head.text == "param") {
            if (lex.peek().kind != TokKind::Ident) lex.fail("expected a parameter name");
            std::string name = lex.next().text;
            if (declared.count(name))
                throw SyntaxError("duplicate declaration of '" + name + "'", line_no,
                                  head.column);
            if (!is_ident(lex.peek(), "in")) lex.fail("expected 'in'");
            lex.next();
            SupportSpec support = parse_interval(lex);
            if (lex.peek().kind != TokKind::End) lex.fail("unexpected trailing input");
            declared[name] = line_no;
            m.params.push_back({name, support});
        } else if (head.text == "obs") {
            if (have_obs) throw SyntaxError("duplicate obs line", line_no, head.column);
            if (lex.peek().kind != TokKind::Ident) lex.fail("expected an observable name");
            std::string name = lex.next().text;
            if (declared.count(name))
                throw SyntaxError("duplicate declaration of '" + name + "'", line_no,
                                  head.column);
            if (!is_ident(lex.peek(), "in")) lex.fail("expected 'in'");
            lex.next();
            SupportSpec support;
            bool discrete_support;
            if (is_punct(lex.peek(), "{")) {
                support = parse_set(lex);
                discrete_support = true;
            } else if (is_ident(lex.peek(), "naturals")) {
                lex.next();
                support = SupportSpec::naturals();
                discrete_support = true;
            } else {
                support = parse_interval(lex);
                discrete_support = false;
            }
            Token tag = lex.next();
            if (tag.kind != TokKind::Ident ||
                (tag.text != "continuous" && tag.text != "discrete"))
                throw SyntaxError("expected 'continuous' or 'discrete'", line_no, tag.column);
            if ((tag.text == "discrete") != discrete_support)
                throw SyntaxError(discrete_support
                                      ? "set/naturals supports must be tagged 'discrete'"
                                      : "interval supports must be tagged 'continuous'",
                                  line_no, tag.column);
            if (lex.peek().kind != TokKind::End) lex.fail("unexpected trailing input");
            declared[name] = line_no;
            m.obs = {name, support};
            have_obs = true;
        } else if (head.text == "logpdf") {
            if (logpdf_line)
                throw SyntaxError("duplicate logpdf line", line_no, head.column);
            if (!is_punct(lex.peek(), "=")) lex.fail("expected '='");
            // Expression text is re-lexed after all declarations are known.
            size_t eq = content.find('=');
            logpdf_line = {line_no, content.substr(eq + 1)};
        } else {
            throw SyntaxError("unknown declaration '" + head.text + "'", line_no,
                              head.column);
        }
    }

    if (!have_model) throw SyntaxError("missing model line", 1, 1);
    if (m.params.empty()) throw SyntaxError("missing param declaration", 1, 1);
    if (!have_obs) throw SyntaxError("missing obs declaration", 1, 1);
    if (!logpdf_line) throw SyntaxError("missing logpdf line", 1, 1);

    std::map<std::string, int> slots;
    for (size_t i = 0; i < m.params.size(); ++i)
        slots[m.params[i].name] = static_cast<int>(i);
    slots[m.obs.name] = m.obs_slot();

    // Column positions in the stored expression text are offset by the
    // stripped "logpdf =" prefix; good enough for diagnostics.
    LineLexer lex(logpdf_line->second, logpdf_line->first);
    ExprParser parser(lex, slots);
    m.logpdf = parser.parse();
    return m;
}

ExprPtr parse_expression(std::string_view text, const std::vector<std::string>& variables) {
    std::map<std::string, int> slots;
    for (size_t i = 0; i < variables.size(); ++i)
        slots[variables[i]] = static_cast<int>(i);
    LineLexer lex(text, 1);
    ExprParser parser(lex, slots);
    return parser.parse();
}

}  // namespace liprior
