#include "mjl/parser.hpp"

#include <cctype>
#include <charconv>
#include <set>

namespace mjl {

namespace {

enum class Tok {
  Int,
  Float,
  String,
  Ident,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Assign,
  DColon,
  Colon,
  Ellipsis,
  Plus,
  Minus,
  Star,
  Semicolon,
  Newline,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
  bool glued_paren = false;  // operator immediately followed by '('
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Int:
      return "integer";
    case Tok::Float:
      return "float";
    case Tok::String:
      return "string";
    case Tok::Ident:
      return "identifier";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::LBracket:
      return "'['";
    case Tok::RBracket:
      return "']'";
    case Tok::Comma:
      return "','";
    case Tok::Assign:
      return "'='";
    case Tok::DColon:
      return "'::'";
    case Tok::Colon:
      return "':'";
    case Tok::Ellipsis:
      return "'...'";
    case Tok::Plus:
      return "'+'";
    case Tok::Minus:
      return "'-'";
    case Tok::Star:
      return "'*'";
    case Tok::Semicolon:
      return "';'";
    case Tok::Newline:
      return "newline";
    case Tok::End:
      return "end of input";
  }
  return "token";
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '!'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    int depth = 0;
    while (true) {
      skip_space_and_comments();
      SourceLoc loc{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", loc});
        return out;
      }
      const char c = src_[pos_];
      if (c == '\n') {
        advance();
        if (depth == 0 && !out.empty() && !continues(out.back().kind)) out.push_back({Tok::Newline, "", loc});
        continue;
      }
      Token t = next(loc);
      if (t.kind == Tok::LParen || t.kind == Tok::LBracket) ++depth;
      if ((t.kind == Tok::RParen || t.kind == Tok::RBracket) && depth > 0) --depth;
      out.push_back(std::move(t));
    }
  }

 private:
  // A newline after these tokens does not end the statement.
  static bool continues(Tok t) {
    switch (t) {
      case Tok::Assign:
      case Tok::Comma:
      case Tok::Plus:
      case Tok::Minus:
      case Tok::Star:
      case Tok::Colon:
      case Tok::DColon:
      case Tok::Newline:
      case Tok::Semicolon:
        return true;
      default:
        return false;
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  bool peek_is(std::size_t offset, char c) const { return pos_ + offset < src_.size() && src_[pos_ + offset] == c; }

  Token simple(Tok kind, std::size_t len, SourceLoc loc) {
    std::string text(src_.substr(pos_, len));
    for (std::size_t i = 0; i < len; ++i) advance();
    return {kind, std::move(text), loc};
  }

  Token next(SourceLoc loc) {
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number(loc);
    if (is_ident_start(c)) {
      std::size_t len = 0;
      while (pos_ + len < src_.size() && is_ident_char(src_[pos_ + len])) ++len;
      return simple(Tok::Ident, len, loc);
    }
    if (c == '"') return string(loc);
    switch (c) {
      case '(':
        return simple(Tok::LParen, 1, loc);
      case ')':
        return simple(Tok::RParen, 1, loc);
      case '[':
        return simple(Tok::LBracket, 1, loc);
      case ']':
        return simple(Tok::RBracket, 1, loc);
      case ',':
        return simple(Tok::Comma, 1, loc);
      case ';':
        return simple(Tok::Semicolon, 1, loc);
      case '=':
        if (peek_is(1, '=')) break;
        return simple(Tok::Assign, 1, loc);
      case ':':
        if (peek_is(1, ':')) return simple(Tok::DColon, 2, loc);
        return simple(Tok::Colon, 1, loc);
      case '.':
        if (peek_is(1, '.') && peek_is(2, '.')) return simple(Tok::Ellipsis, 3, loc);
        break;
      case '+':
      case '-':
      case '*': {
        const bool glued = peek_is(1, '(');
        Token t = simple(c == '+' ? Tok::Plus : c == '-' ? Tok::Minus : Tok::Star, 1, loc);
        t.glued_paren = glued;
        return t;
      }
      default:
        break;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", loc);
  }

  Token number(SourceLoc loc) {
    std::size_t len = 0;
    auto digits = [&] {
      while (pos_ + len < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + len]))) ++len;
    };
    digits();
    bool is_float = false;
    if (pos_ + len + 1 < src_.size() && src_[pos_ + len] == '.' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + len + 1]))) {
      is_float = true;
      ++len;
      digits();
    }
    if (pos_ + len < src_.size() && (src_[pos_ + len] == 'e' || src_[pos_ + len] == 'E')) {
      std::size_t save = len;
      ++len;
      if (pos_ + len < src_.size() && (src_[pos_ + len] == '+' || src_[pos_ + len] == '-')) ++len;
      const std::size_t before = len;
      digits();
      if (len == before) {
        len = save;
      } else {
        is_float = true;
      }
    }
    if (pos_ + len < src_.size() && is_ident_start(src_[pos_ + len])) {
      throw SyntaxError("malformed number", loc);
    }
    return simple(is_float ? Tok::Float : Tok::Int, len, loc);
  }

  Token string(SourceLoc loc) {
    advance();
    std::string text;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') throw SyntaxError("unterminated string", loc);
      char c = src_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size()) throw SyntaxError("unterminated string", loc);
        c = src_[pos_];
        if (c == 'n') c = '\n';
      }
      text += c;
      advance();
    }
    return {Tok::String, std::move(text), loc};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

using ast::Arg;
using ast::Expr;
using ast::ExprPtr;

class Parser {
 public:
  Parser(std::vector<Token> toks, ParseOptions opts) : toks_(std::move(toks)), next_site_(opts.first_site) {}

  ast::Program program() {
    ast::Program p;
    p.first_site = next_site_;
    skip_separators();
    while (peek().kind != Tok::End) {
      p.stmts.push_back(statement());
      if (peek().kind != Tok::End && !is_separator(peek().kind)) unexpected(peek());
      skip_separators();
    }
    p.end_site = next_site_;
    return p;
  }

 private:
  static bool is_separator(Tok t) { return t == Tok::Newline || t == Tok::Semicolon; }

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    take();
    return true;
  }
  const Token& expect(Tok k) {
    if (peek().kind != k) {
      const Token& t = peek();
      throw SyntaxError(std::string("expected ") + describe(k) + ", found " + describe(t.kind), t.loc);
    }
    return take();
  }
  [[noreturn]] static void unexpected(const Token& t) {
    throw SyntaxError(std::string("unexpected ") + describe(t.kind) + (t.text.empty() ? "" : " '" + t.text + "'"),
                      t.loc);
  }
  void skip_separators() {
    while (is_separator(peek().kind)) take();
  }

  static bool is_operator(Tok t) { return t == Tok::Plus || t == Tok::Minus || t == Tok::Star; }

  // Index of the token after the ')' matching the '(' at `open`, or npos.
  std::size_t after_matching_paren(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      switch (toks_[i].kind) {
        case Tok::LParen:
        case Tok::LBracket:
          ++depth;
          break;
        case Tok::RParen:
        case Tok::RBracket:
          if (--depth == 0) return i + 1;
          break;
        case Tok::End:
          return std::string::npos;
        default:
          break;
      }
    }
    return std::string::npos;
  }

  ast::Stmt statement() {
    const Token& first = peek();
    const bool callable_head =
        (first.kind == Tok::Ident || (is_operator(first.kind) && first.glued_paren)) && peek(1).kind == Tok::LParen;
    if (callable_head) {
      const std::size_t after = after_matching_paren(pos_ + 1);
      if (after != std::string::npos && toks_[after].kind == Tok::Assign) return method_def();
    }
    if (first.kind == Tok::Ident && peek(1).kind == Tok::Assign) {
      ast::Assign a;
      a.loc = first.loc;
      a.name = take().text;
      take();
      a.value = expr();
      return a;
    }
    return ast::ExprStmt{expr()};
  }

  ast::Stmt method_def() {
    auto def = std::make_shared<ast::MethodDef>();
    def->loc = peek().loc;
    def->name = take().text;
    expect(Tok::LParen);
    std::set<std::string> seen;
    if (!accept(Tok::RParen)) {
      for (;;) {
        const Token& name = expect(Tok::Ident);
        ast::Param p;
        p.name = name.text;
        if (!seen.insert(p.name).second) throw SyntaxError("duplicate parameter " + p.name, name.loc);
        if (accept(Tok::DColon)) p.type = expect(Tok::Ident).text;
        if (accept(Tok::Ellipsis)) p.variadic = true;
        def->params.push_back(std::move(p));
        if (accept(Tok::RParen)) break;
        expect(Tok::Comma);
      }
    }
    for (std::size_t i = 0; i + 1 < def->params.size(); ++i) {
      if (def->params[i].variadic) {
        throw SyntaxError("only the last parameter of " + def->name + " may be variadic", def->loc);
      }
    }
    expect(Tok::Assign);
    def->body = expr();
    check_locals(*def->body, seen, def->name);
    return std::shared_ptr<const ast::MethodDef>(std::move(def));
  }

  void check_locals(const Expr& e, const std::set<std::string>& params, const std::string& fn) {
    if (const auto* n = std::get_if<ast::Name>(&e.node)) {
      if (!params.count(n->id)) throw SyntaxError("undefined variable " + n->id + " in method " + fn, e.loc);
    } else if (const auto* c = std::get_if<ast::Call>(&e.node)) {
      for (const auto& a : c->args) check_locals(*a.value, params, fn);
    } else if (const auto* t = std::get_if<ast::TupleExpr>(&e.node)) {
      for (const auto& a : t->items) check_locals(*a.value, params, fn);
    }
  }

  static ExprPtr make(decltype(Expr::node) node, SourceLoc loc) {
    return std::make_shared<const Expr>(Expr{std::move(node), loc});
  }

  ExprPtr call(std::string callee, std::vector<Arg> args, ast::CallSyntax syntax, SourceLoc loc) {
    return make(ast::Call{std::move(callee), std::move(args), syntax, next_site_++}, loc);
  }

  ExprPtr expr() {
    ExprPtr lhs = sum();
    if (peek().kind == Tok::Colon) {
      const SourceLoc loc = take().loc;
      ExprPtr rhs = sum();
      lhs = call(":", {Arg{lhs}, Arg{rhs}}, ast::CallSyntax::Infix, loc);
    }
    return lhs;
  }

  ExprPtr sum() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = take();
      ExprPtr rhs = term();
      lhs = call(op.text, {Arg{lhs}, Arg{rhs}}, ast::CallSyntax::Infix, op.loc);
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek().kind == Tok::Star) {
      const Token& op = take();
      ExprPtr rhs = unary();
      lhs = call(op.text, {Arg{lhs}, Arg{rhs}}, ast::CallSyntax::Infix, op.loc);
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus && !peek().glued_paren) {
      const Token& op = take();
      if (peek().kind == Tok::Int || peek().kind == Tok::Float) return literal(true, op.loc);
      ExprPtr operand = unary();
      return call("-", {Arg{operand}}, ast::CallSyntax::Prefix, op.loc);
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (peek().kind == Tok::LBracket) {
      const SourceLoc loc = take().loc;
      std::vector<Arg> args{Arg{e}};
      auto rest = arguments(Tok::RBracket);
      args.insert(args.end(), rest.begin(), rest.end());
      e = call("getindex", std::move(args), ast::CallSyntax::Index, loc);
    }
    return e;
  }

  ExprPtr literal(bool negate, SourceLoc loc) {
    const Token& t = take();
    if (t.kind == Tok::Int) {
      std::int64_t v = 0;
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (res.ec != std::errc{}) throw SyntaxError("integer literal out of range", t.loc);
      return make(ast::IntLit{negate ? -v : v}, loc);
    }
    double d = 0;
    std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
    return make(ast::FloatLit{negate ? -d : d}, loc);
  }

  std::vector<Arg> arguments(Tok close) {
    std::vector<Arg> args;
    if (accept(close)) return args;
    for (;;) {
      args.push_back(argument());
      if (accept(close)) return args;
      expect(Tok::Comma);
      if (accept(close)) return args;
    }
  }

  Arg argument() {
    Arg a{expr()};
    a.splice = accept(Tok::Ellipsis);
    return a;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int:
      case Tok::Float:
        return literal(false, t.loc);
      case Tok::String: {
        const Token& s = take();
        return make(ast::StringLit{s.text}, s.loc);
      }
      case Tok::Ident: {
        const Token& name = take();
        if (peek().kind == Tok::LParen) {
          take();
          return call(name.text, arguments(Tok::RParen), ast::CallSyntax::Prefix, name.loc);
        }
        return make(ast::Name{name.text}, name.loc);
      }
      case Tok::Plus:
      case Tok::Minus:
      case Tok::Star:
        if (t.glued_paren) {
          const Token& op = take();
          take();
          return call(op.text, arguments(Tok::RParen), ast::CallSyntax::Prefix, op.loc);
        }
        break;
      case Tok::LParen: {
        const SourceLoc loc = take().loc;
        if (accept(Tok::RParen)) return make(ast::TupleExpr{}, loc);
        Arg first = argument();
        if (accept(Tok::RParen)) {
          if (first.splice) return make(ast::TupleExpr{{first}}, loc);
          return first.value;
        }
        expect(Tok::Comma);
        std::vector<Arg> items{first};
        auto rest = arguments(Tok::RParen);
        items.insert(items.end(), rest.begin(), rest.end());
        return make(ast::TupleExpr{std::move(items)}, loc);
      }
      default:
        break;
    }
    unexpected(t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int next_site_;
};

}  // namespace

ast::Program parse(std::string_view source, ParseOptions options) {
  return Parser(Lexer(source).run(), options).program();
}

}  // namespace mjl
