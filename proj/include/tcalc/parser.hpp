#pragma once
// Text format for metric files.
//
//   file        = { statement } ;
//   statement   = "dim" INT
//               | "signature" { SIGN }          (* one +/- per coordinate *)
//               | "coords" { IDENT }
//               | "param" IDENT "=" NUMBER
//               | "g" "[" INT "]" "[" INT "]" "=" expr
//               | "potential" "[" INT "]" "=" expr
//               | "conformal" "=" expr
//               | "killing" "[" INT "]" "=" expr
//               | "weyl_potential" "[" INT "]" "=" expr
//               | "domain" IDENT "=" "[" NUMBER "," NUMBER "]" ;
//   expr        = term { ("+" | "-") term } ;
//   term        = unary { ("*" | "/") unary } ;
//   unary       = "-" unary | power ;
//   power       = atom [ "^" unary ] ;            (* right associative *)
//   atom        = NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")" ;
//
// '#' starts a comment running to end of line.  "dim", "signature" and
// "coords" must appear before the first statement that carries an expression.
// Functions: sin cos tan sinh cosh tanh exp log sqrt (all unary).
// The ASCII hyphen and U+2212 are both accepted as minus.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tcalc/metric.hpp"

namespace tcalc {

namespace detail {

struct Token {
    enum class Type { Ident, Number, Symbol, End };
    Type type = Type::End;
    std::string text;
    double number = 0.0;
    SourcePos pos;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws_and_comments();
        Token t;
        t.pos = {line_, col_};
        if (i_ >= src_.size()) {
            t.type = Token::Type::End;
            return t;
        }
        const char c = src_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
                advance();
            }
            t.type = Token::Type::Ident;
            t.text = std::string(src_.substr(start, i_ - start));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
            if (i_ < src_.size() && src_[i_] == '.') {
                advance();
                while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
            }
            if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
                std::size_t save = i_;
                advance();
                if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-')) advance();
                if (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
                    while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
                } else {
                    i_ = save;  // 'e' belonged to something else
                }
            }
            t.type = Token::Type::Number;
            t.text = std::string(src_.substr(start, i_ - start));
            t.number = std::stod(t.text);
            return t;
        }
        // U+2212 minus sign -> '-'
        if (static_cast<unsigned char>(c) == 0xE2 && i_ + 2 < src_.size() &&
            static_cast<unsigned char>(src_[i_ + 1]) == 0x88 &&
            static_cast<unsigned char>(src_[i_ + 2]) == 0x92) {
            advance();
            advance();
            advance();
            t.type = Token::Type::Symbol;
            t.text = "-";
            return t;
        }
        static const std::string symbols = "+-*/^()[]=,";
        if (symbols.find(c) != std::string::npos) {
            advance();
            t.type = Token::Type::Symbol;
            t.text = std::string(1, c);
            return t;
        }
        throw ParseError(t.pos, std::string("unexpected character '") + c + "'");
    }

  private:
    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }
    void skip_ws_and_comments() {
        while (i_ < src_.size()) {
            const char c = src_[i_];
            if (c == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline const std::map<std::string, JetFn>& function_whitelist() {
    static const std::map<std::string, JetFn> fns = {
        {"sin", JetFn::Sin},   {"cos", JetFn::Cos},   {"tan", JetFn::Tan},
        {"sinh", JetFn::Sinh}, {"cosh", JetFn::Cosh}, {"tanh", JetFn::Tanh},
        {"exp", JetFn::Exp},   {"log", JetFn::Log},   {"sqrt", JetFn::Sqrt}};
    return fns;
}

class MetricFileParser {
  public:
    explicit MetricFileParser(std::string_view text) : lexer_(text) { shift(); }

    MetricFile parse() {
        while (cur_.type != Token::Type::End) statement();
        finalize();
        return std::move(result_);
    }

  private:
    // -- token plumbing ------------------------------------------------------
    void shift() {
        cur_ = ahead_ ? *ahead_ : lexer_.next();
        ahead_.reset();
    }
    const Token& peek() {
        if (!ahead_) ahead_ = lexer_.next();
        return *ahead_;
    }
    bool at_symbol(const char* s) const { return cur_.type == Token::Type::Symbol && cur_.text == s; }
    void expect_symbol(const char* s) {
        if (!at_symbol(s)) {
            throw ParseError(cur_.pos, std::string("expected '") + s + "', found '" + shown(cur_) + "'");
        }
        shift();
    }
    static std::string shown(const Token& t) {
        return t.type == Token::Type::End ? "end of input" : t.text;
    }
    int expect_int() {
        if (cur_.type != Token::Type::Number || cur_.number != static_cast<long>(cur_.number)) {
            throw ParseError(cur_.pos, "expected an integer, found '" + shown(cur_) + "'");
        }
        const int v = static_cast<int>(cur_.number);
        shift();
        return v;
    }
    double expect_number() {
        bool neg = false;
        if (at_symbol("-")) {
            neg = true;
            shift();
        }
        if (cur_.type != Token::Type::Number) {
            throw ParseError(cur_.pos, "expected a number, found '" + shown(cur_) + "'");
        }
        const double v = cur_.number;
        shift();
        return neg ? -v : v;
    }
    std::string expect_ident(const char* what) {
        if (cur_.type != Token::Type::Ident) {
            throw ParseError(cur_.pos, std::string("expected ") + what + ", found '" + shown(cur_) + "'");
        }
        std::string s = cur_.text;
        shift();
        return s;
    }

    // -- statements ----------------------------------------------------------
    void statement() {
        if (cur_.type != Token::Type::Ident) {
            throw ParseError(cur_.pos, "expected a statement keyword, found '" + shown(cur_) + "'");
        }
        const std::string kw = cur_.text;
        const SourcePos kw_pos = cur_.pos;
        shift();
        if (kw == "dim") {
            const SourcePos p = cur_.pos;
            const int d = expect_int();
            if (d < 2 || d > 4) throw ParseError(p, "dim must be between 2 and 4");
            if (dim_) throw ParseError(kw_pos, "dim declared twice");
            dim_ = d;
        } else if (kw == "signature") {
            if (signature_) throw ParseError(kw_pos, "signature declared twice");
            std::vector<int> sig;
            while (at_symbol("+") || at_symbol("-")) {
                sig.push_back(cur_.text == "+" ? 1 : -1);
                shift();
            }
            if (sig.empty()) throw ParseError(cur_.pos, "signature needs one '+' or '-' per coordinate");
            signature_ = std::move(sig);
        } else if (kw == "coords") {
            if (coords_) throw ParseError(kw_pos, "coords declared twice");
            std::vector<std::string> names;
            while (cur_.type == Token::Type::Ident && !is_keyword(cur_.text)) {
                if (function_whitelist().count(cur_.text)) {
                    throw ParseError(cur_.pos, "coordinate name '" + cur_.text + "' shadows a function");
                }
                for (const auto& n : names) {
                    if (n == cur_.text) throw ParseError(cur_.pos, "duplicate coordinate name '" + cur_.text + "'");
                }
                names.push_back(cur_.text);
                shift();
            }
            if (names.empty()) throw ParseError(cur_.pos, "coords needs at least one name");
            coords_ = std::move(names);
        } else if (kw == "param") {
            const SourcePos p = cur_.pos;
            const std::string name = expect_ident("a parameter name");
            if (coords_) {
                for (const auto& n : *coords_) {
                    if (n == name) throw ParseError(p, "parameter '" + name + "' shadows a coordinate");
                }
            }
            expect_symbol("=");
            params_[name] = expect_number();
        } else if (kw == "g") {
            require_header(kw_pos);
            const SourcePos p = cur_.pos;
            const int i = bracket_index();
            const int j = bracket_index();
            expect_symbol("=");
            ExprPtr e = parse_expr();
            const int lo = std::min(i, j), hi = std::max(i, j);
            if (defined_components_.count({lo, hi})) {
                throw ParseError(p, "component g[" + std::to_string(i) + "][" + std::to_string(j) +
                                        "] already defined (metric components are symmetric)");
            }
            defined_components_.insert({lo, hi});
            pending_components_.push_back({lo, hi, std::move(e)});
        } else if (kw == "potential") {
            require_header(kw_pos);
            block_entry(potential_, "potential");
        } else if (kw == "killing") {
            require_header(kw_pos);
            block_entry(killing_, "killing");
        } else if (kw == "weyl_potential") {
            require_header(kw_pos);
            block_entry(weyl_potential_, "weyl_potential");
        } else if (kw == "conformal") {
            require_header(kw_pos);
            if (conformal_) throw ParseError(kw_pos, "conformal declared twice");
            expect_symbol("=");
            conformal_ = parse_expr();
        } else if (kw == "domain") {
            require_header(kw_pos);
            const SourcePos p = cur_.pos;
            const std::string name = expect_ident("a coordinate name");
            const int slot = coord_slot(name);
            if (slot < 0) throw ParseError(p, "unknown coordinate '" + name + "' in domain");
            expect_symbol("=");
            expect_symbol("[");
            const double lo = expect_number();
            expect_symbol(",");
            const double hi = expect_number();
            expect_symbol("]");
            if (!(lo < hi)) throw ParseError(p, "domain interval must have lo < hi");
            domains_[slot] = CoordInterval{lo, hi};
        } else {
            throw ParseError(kw_pos, "unknown statement '" + kw + "'");
        }
    }

    static bool is_keyword(const std::string& s) {
        return s == "dim" || s == "signature" || s == "coords" || s == "param" || s == "g" ||
               s == "potential" || s == "conformal" || s == "killing" || s == "weyl_potential" ||
               s == "domain";
    }

    void require_header(SourcePos pos) const {
        if (!dim_) throw ParseError(pos, "dim must be declared before this statement");
        if (!signature_) throw ParseError(pos, "signature must be declared before this statement");
        if (!coords_) throw ParseError(pos, "coords must be declared before this statement");
        if (static_cast<int>(signature_->size()) != *dim_) {
            throw ParseError(pos, "signature length " + std::to_string(signature_->size()) +
                                      " does not match dim " + std::to_string(*dim_));
        }
        if (static_cast<int>(coords_->size()) != *dim_) {
            throw ParseError(pos, "coordinate count " + std::to_string(coords_->size()) +
                                      " does not match dim " + std::to_string(*dim_));
        }
    }

    int bracket_index() {
        expect_symbol("[");
        const SourcePos p = cur_.pos;
        const int v = expect_int();
        if (v < 0 || v >= *dim_) {
            throw ParseError(p, "index " + std::to_string(v) + " out of range for dim " +
                                    std::to_string(*dim_));
        }
        expect_symbol("]");
        return v;
    }

    void block_entry(std::vector<ExprPtr>& target, const char* what) {
        if (target.empty()) target.assign(static_cast<std::size_t>(*dim_), nullptr);
        const SourcePos p = cur_.pos;
        const int i = bracket_index();
        expect_symbol("=");
        if (target[static_cast<std::size_t>(i)]) {
            throw ParseError(p, std::string(what) + "[" + std::to_string(i) + "] already defined");
        }
        target[static_cast<std::size_t>(i)] = parse_expr();
    }

    int coord_slot(const std::string& name) const {
        if (!coords_) return -1;
        for (std::size_t i = 0; i < coords_->size(); ++i) {
            if ((*coords_)[i] == name) return static_cast<int>(i);
        }
        return -1;
    }

    // -- expressions ---------------------------------------------------------
    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (at_symbol("+") || at_symbol("-")) {
            const BinOp op = cur_.text == "+" ? BinOp::Add : BinOp::Sub;
            const SourcePos p = cur_.pos;
            shift();
            auto r = make_bin(op, std::move(e), parse_term());
            const_cast<Expr*>(r.get())->pos = p;
            e = std::move(r);
        }
        return e;
    }
    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        while (at_symbol("*") || at_symbol("/")) {
            const BinOp op = cur_.text == "*" ? BinOp::Mul : BinOp::Div;
            const SourcePos p = cur_.pos;
            shift();
            auto r = make_bin(op, std::move(e), parse_unary());
            const_cast<Expr*>(r.get())->pos = p;
            e = std::move(r);
        }
        return e;
    }
    ExprPtr parse_unary() {
        if (at_symbol("-")) {
            const SourcePos p = cur_.pos;
            shift();
            auto r = make_neg(parse_unary());
            const_cast<Expr*>(r.get())->pos = p;
            return r;
        }
        return parse_power();
    }
    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (at_symbol("^")) {
            const SourcePos p = cur_.pos;
            shift();
            auto r = make_bin(BinOp::Pow, std::move(base), parse_unary());
            const_cast<Expr*>(r.get())->pos = p;
            return r;
        }
        return base;
    }
    ExprPtr parse_atom() {
        const SourcePos p = cur_.pos;
        if (cur_.type == Token::Type::Number) {
            auto e = make_number(cur_.number);
            const_cast<Expr*>(e.get())->pos = p;
            shift();
            return e;
        }
        if (at_symbol("(")) {
            shift();
            ExprPtr e = parse_expr();
            expect_symbol(")");
            return e;
        }
        if (cur_.type == Token::Type::Ident) {
            const std::string name = cur_.text;
            shift();
            if (at_symbol("(")) {
                auto it = function_whitelist().find(name);
                if (it == function_whitelist().end()) {
                    throw ParseError(p, "unknown function '" + name + "'");
                }
                shift();
                ExprPtr arg = parse_expr();
                if (at_symbol(",")) {
                    throw ParseError(cur_.pos, "function '" + name + "' takes exactly one argument");
                }
                expect_symbol(")");
                auto e = make_call(it->second, name, std::move(arg));
                const_cast<Expr*>(e.get())->pos = p;
                return e;
            }
            const int slot = coord_slot(name);
            if (slot >= 0) {
                auto e = make_coord(slot, name);
                const_cast<Expr*>(e.get())->pos = p;
                return e;
            }
            if (params_.count(name)) {
                auto e = make_param(name);
                const_cast<Expr*>(e.get())->pos = p;
                return e;
            }
            throw ParseError(p, "unknown identifier '" + name + "'");
        }
        throw ParseError(p, "expected a number, identifier or '(', found '" + shown(cur_) + "'");
    }

    // -- final assembly ------------------------------------------------------
    void finalize() {
        const SourcePos end{0, 0};
        if (!dim_) throw ParseError({1, 1}, "missing 'dim' declaration");
        if (!signature_) throw ParseError({1, 1}, "missing 'signature' declaration");
        if (!coords_) throw ParseError({1, 1}, "missing 'coords' declaration");
        require_header({1, 1});
        (void)end;

        MetricSpec spec(*dim_, *signature_, *coords_);
        for (const auto& [k, v] : params_) spec.set_param(k, v);
        for (const auto& [slot, iv] : domains_) spec.set_domain(slot, iv);
        for (auto& c : pending_components_) spec.set_component(c.i, c.j, std::move(c.expr));

        // A structurally absent row means a zero row: the metric cannot be
        // inverted anywhere, so reject it up front.
        for (int i = 0; i < *dim_; ++i) {
            bool any = false;
            for (int j = 0; j < *dim_; ++j) any = any || spec.has_component(i, j);
            if (!any) {
                throw ParseError({1, 1}, "metric row " + std::to_string(i) +
                                             " has no components (degenerate metric)");
            }
        }

        result_.metric = std::move(spec);
        if (!potential_.empty()) result_.potential = CovectorSpec{std::move(potential_)};
        if (conformal_) result_.conformal = ScalarSpec{std::move(conformal_)};
        if (!killing_.empty()) result_.killing = CovectorSpec{std::move(killing_)};
        if (!weyl_potential_.empty()) result_.weyl_potential = CovectorSpec{std::move(weyl_potential_)};
    }

    Lexer lexer_;
    Token cur_;
    std::optional<Token> ahead_;

    std::optional<int> dim_;
    std::optional<std::vector<int>> signature_;
    std::optional<std::vector<std::string>> coords_;
    std::map<std::string, double> params_;
    std::map<int, CoordInterval> domains_;
    struct PendingComponent {
        int i, j;
        ExprPtr expr;
    };
    std::vector<PendingComponent> pending_components_;
    std::set<std::pair<int, int>> defined_components_;
    std::vector<ExprPtr> potential_, killing_, weyl_potential_;
    ExprPtr conformal_;

    MetricFile result_;
};

}  // namespace detail

inline MetricFile parse_metric_file(std::string_view text) {
    detail::MetricFileParser p(text);
    return p.parse();
}

// Re-parseable rendering of a metric file (expression round-trips exactly).
inline std::string to_file_text(const MetricFile& mf) {
    std::ostringstream os;
    const MetricSpec& m = mf.metric;
    os << "dim " << m.dim() << "\n";
    os << "signature";
    for (int s : m.signature()) os << " " << (s > 0 ? "+" : "-");
    os << "\ncoords";
    for (const auto& n : m.coord_names()) os << " " << n;
    os << "\n";
    for (const auto& [k, v] : m.params()) os << "param " << k << " = " << format_number(v) << "\n";
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = i; j < m.dim(); ++j) {
            if (m.has_component(i, j)) {
                os << "g[" << i << "][" << j << "] = " << to_string(*m.component(i, j)) << "\n";
            }
        }
    }
    auto block = [&](const char* kw, const std::optional<CovectorSpec>& c) {
        if (!c) return;
        for (int i = 0; i < c->dim(); ++i) {
            if (c->components[static_cast<std::size_t>(i)]) {
                os << kw << "[" << i << "] = " << to_string(*c->components[static_cast<std::size_t>(i)])
                   << "\n";
            }
        }
    };
    block("potential", mf.potential);
    if (mf.conformal && mf.conformal->expr) os << "conformal = " << to_string(*mf.conformal->expr) << "\n";
    block("killing", mf.killing);
    block("weyl_potential", mf.weyl_potential);
    for (int i = 0; i < m.dim(); ++i) {
        if (m.has_domain(i)) {
            const auto iv = m.domain(i);
            os << "domain " << m.coord_names()[static_cast<std::size_t>(i)] << " = ["
               << format_number(iv.lo) << ", " << format_number(iv.hi) << "]\n";
        }
    }
    return os.str();
}

}  // namespace tcalc
