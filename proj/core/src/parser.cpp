#include "cbvtc/parser.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace cbvtc {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Langle,
  Rangle,
  Semicolon,
  Colon,
  Comma,
  Dot,
  Backslash,
  Plus,
  Star,
  Equals,
  FatArrow,   // =>
  ThinArrow,  // ->
  Newline,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { tokenize(); }

  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  void tokenize() {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok kind, std::string text, int l, int c) {
      tokens_.push_back({kind, std::move(text), SourcePos{l, c}});
    };
    while (i < text_.size()) {
      char c = text_[i];
      int l = line, co = col;
      auto advance = [&](std::size_t n = 1) {
        for (std::size_t k = 0; k < n; ++k) {
          if (text_[i] == '\n') {
            ++line;
            col = 1;
          } else {
            ++col;
          }
          ++i;
        }
      };
      if (c == '#') {
        while (i < text_.size() && text_[i] != '\n') advance();
        continue;
      }
      if (c == '\n') {
        // collapse runs of newlines into one token
        if (tokens_.empty() || tokens_.back().kind != Tok::Newline)
          push(Tok::Newline, "\n", l, co);
        advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (i < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[i]))) {
          num += text_[i];
          advance();
        }
        push(Tok::Number, std::move(num), l, co);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (i < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[i])) ||
                text_[i] == '_' || text_[i] == '\'')) {
          id += text_[i];
          advance();
        }
        push(Tok::Ident, std::move(id), l, co);
        continue;
      }
      switch (c) {
        case '(': push(Tok::LParen, "(", l, co); advance(); continue;
        case ')': push(Tok::RParen, ")", l, co); advance(); continue;
        case '[': push(Tok::LBracket, "[", l, co); advance(); continue;
        case ']': push(Tok::RBracket, "]", l, co); advance(); continue;
        case '<': push(Tok::Langle, "<", l, co); advance(); continue;
        case '>': push(Tok::Rangle, ">", l, co); advance(); continue;
        case ';': push(Tok::Semicolon, ";", l, co); advance(); continue;
        case ':': push(Tok::Colon, ":", l, co); advance(); continue;
        case ',': push(Tok::Comma, ",", l, co); advance(); continue;
        case '.': push(Tok::Dot, ".", l, co); advance(); continue;
        case '\\': push(Tok::Backslash, "\\", l, co); advance(); continue;
        case '+': push(Tok::Plus, "+", l, co); advance(); continue;
        case '*': push(Tok::Star, "*", l, co); advance(); continue;
        case '=':
          if (i + 1 < text_.size() && text_[i + 1] == '>') {
            push(Tok::FatArrow, "=>", l, co);
            advance(2);
          } else {
            push(Tok::Equals, "=", l, co);
            advance();
          }
          continue;
        case '-':
          if (i + 1 < text_.size() && text_[i + 1] == '>') {
            push(Tok::ThinArrow, "->", l, co);
            advance(2);
            continue;
          }
          throw Error(ErrorKind::Syntax, "unexpected character '-'",
                      SourcePos{l, co});
        default:
          throw Error(ErrorKind::Syntax,
                      std::string("unexpected character '") + c + "'",
                      SourcePos{l, co});
      }
    }
    tokens_.push_back({Tok::End, "", SourcePos{line, col}});
  }

  const std::string& text_;
  std::vector<Token> tokens_;
};

// ---------------------------------------------------------------------------
// Token cursor
// ---------------------------------------------------------------------------

class Cursor {
 public:
  explicit Cursor(const std::vector<Token>& tokens) : tokens_(tokens) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_ident(const char* word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  bool accept(Tok kind) {
    if (!at(kind)) return false;
    next();
    return true;
  }

  Token expect(Tok kind, const char* what) {
    if (!at(kind))
      throw Error(ErrorKind::Syntax,
                  std::string("expected ") + what + ", got '" +
                      describe(peek()) + "'",
                  peek().pos);
    return next();
  }

  void skip_newlines() {
    while (at(Tok::Newline)) next();
  }

  void expect_statement_end() {
    if (at(Tok::End)) return;
    if (!at(Tok::Newline))
      throw Error(ErrorKind::Syntax,
                  "unexpected '" + describe(peek()) + "' at end of statement",
                  peek().pos);
    next();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    if (t.kind == Tok::Newline) return "end of line";
    return t.text;
  }

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

SimpleType parse_type(Cursor& cur, const Signature& sig);

SimpleType parse_type_atom(Cursor& cur, const Signature& sig) {
  if (cur.accept(Tok::LParen)) {
    SimpleType inner = parse_type(cur, sig);
    cur.expect(Tok::RParen, "')'");
    return inner;
  }
  Token tok = cur.expect(Tok::Ident, "a base type name");
  SimpleType base = SimpleType::base(tok.text);
  sig.check_type_declared(base, tok.pos);
  return base;
}

SimpleType parse_type(Cursor& cur, const Signature& sig) {
  SimpleType left = parse_type_atom(cur, sig);
  if (cur.accept(Tok::ThinArrow))
    return SimpleType::arrow(left, parse_type(cur, sig));
  return left;
}

// ---------------------------------------------------------------------------
// Surface terms and elaboration
// ---------------------------------------------------------------------------

struct STerm;
using STermPtr = std::shared_ptr<STerm>;

struct SBinder {
  std::string name;
  std::optional<SimpleType> annotation;
  SourcePos pos;
};

struct STerm {
  enum class Kind { Name, Num, List, App, Lam };
  Kind kind;
  SourcePos pos;
  std::string name;                 // Name
  unsigned long long num = 0;       // Num
  std::vector<STermPtr> elems;      // List
  STermPtr fun, arg;                // App
  std::vector<SBinder> binders;     // Lam
  STermPtr body;                    // Lam
};

STermPtr parse_surface_term(Cursor& cur, const Signature& sig);

STermPtr parse_surface_atom(Cursor& cur, const Signature& sig) {
  const Token& tok = cur.peek();
  switch (tok.kind) {
    case Tok::Ident: {
      auto t = std::make_shared<STerm>();
      t->kind = STerm::Kind::Name;
      t->pos = tok.pos;
      t->name = cur.next().text;
      return t;
    }
    case Tok::Number: {
      auto t = std::make_shared<STerm>();
      t->kind = STerm::Kind::Num;
      t->pos = tok.pos;
      t->num = std::stoull(cur.next().text);
      return t;
    }
    case Tok::LBracket: {
      auto t = std::make_shared<STerm>();
      t->kind = STerm::Kind::List;
      t->pos = tok.pos;
      cur.next();
      if (cur.accept(Tok::RBracket)) return t;
      t->elems.push_back(parse_surface_term(cur, sig));
      while (cur.accept(Tok::Semicolon))
        t->elems.push_back(parse_surface_term(cur, sig));
      cur.expect(Tok::RBracket, "']'");
      return t;
    }
    case Tok::LParen: {
      cur.next();
      STermPtr inner = parse_surface_term(cur, sig);
      cur.expect(Tok::RParen, "')'");
      return inner;
    }
    default:
      throw Error(ErrorKind::Syntax,
                  "expected a term, got '" + Cursor::describe(tok) + "'",
                  tok.pos);
  }
}

bool at_surface_atom(const Cursor& cur) {
  switch (cur.peek().kind) {
    case Tok::Ident:
    case Tok::Number:
    case Tok::LBracket:
    case Tok::LParen:
      return true;
    default:
      return false;
  }
}

STermPtr parse_surface_term(Cursor& cur, const Signature& sig) {
  if (cur.at(Tok::Backslash)) {
    auto t = std::make_shared<STerm>();
    t->kind = STerm::Kind::Lam;
    t->pos = cur.next().pos;
    do {
      Token name = cur.expect(Tok::Ident, "a binder name");
      SBinder binder{name.text, std::nullopt, name.pos};
      if (cur.accept(Tok::Colon)) binder.annotation = parse_type(cur, sig);
      t->binders.push_back(std::move(binder));
    } while (cur.at(Tok::Ident));
    cur.expect(Tok::Dot, "'.'");
    t->body = parse_surface_term(cur, sig);
    return t;
  }
  STermPtr head = parse_surface_atom(cur, sig);
  while (at_surface_atom(cur) || cur.at(Tok::Backslash)) {
    auto app = std::make_shared<STerm>();
    app->kind = STerm::Kind::App;
    app->pos = head->pos;
    app->fun = head;
    app->arg = cur.at(Tok::Backslash) ? parse_surface_term(cur, sig)
                                      : parse_surface_atom(cur, sig);
    head = app;
  }
  return head;
}

// Bidirectional elaboration of surface terms into locally nameless terms.
// Unknown identifiers in rule left-hand sides become pattern variables typed
// by their position; elsewhere they are errors.
class Elaborator {
 public:
  enum class FreeVarPolicy { Forbid, BindFromLhs, UseRuleVars };

  Elaborator(const Signature& sig, FreeVarPolicy policy)
      : sig_(sig), policy_(policy) {}

  std::map<std::string, SimpleType>& rule_vars() { return rule_vars_; }

  Term check(const STerm& s, const SimpleType& expected) {
    switch (s.kind) {
      case STerm::Kind::Lam: {
        SimpleType target = expected;
        return check_lambda(s, 0, target);
      }
      case STerm::Kind::Name: {
        if (auto t = try_known_name(s)) {
          auto [term, type] = *t;
          require(type, expected, s.pos);
          return term;
        }
        if (policy_ == FreeVarPolicy::BindFromLhs) {
          auto it = rule_vars_.find(s.name);
          if (it != rule_vars_.end()) {
            if (!(it->second == expected))
              throw Error(ErrorKind::Type,
                          "variable '" + s.name + "' used at both " +
                              it->second.to_string() + " and " +
                              expected.to_string(),
                          s.pos);
          } else {
            rule_vars_.emplace(s.name, expected);
          }
          return Term::fvar(s.name, expected);
        }
        throw unknown_name(s);
      }
      default: {
        auto [term, type] = synth(s);
        require(type, expected, s.pos);
        return term;
      }
    }
  }

  std::pair<Term, SimpleType> synth(const STerm& s) {
    switch (s.kind) {
      case STerm::Kind::Name: {
        if (auto t = try_known_name(s)) return *t;
        throw unknown_name(s);
      }
      case STerm::Kind::Num: {
        // "0" alone only needs the symbol 0; larger numerals need s as well.
        if (s.num == 0) {
          if (!sig_.has_symbol("0"))
            throw Error(ErrorKind::Type,
                        "numeral sugar needs symbol '0' in the signature",
                        s.pos);
          return {Term::sym("0"), sig_.symbol_type("0")};
        }
        SimpleType nat = numeral_type(s.pos);
        Term t = Term::sym("0");
        for (unsigned long long i = 0; i < s.num; ++i)
          t = Term::app(Term::sym("s"), t);
        return {t, nat};
      }
      case STerm::Kind::List: {
        if (s.elems.empty()) {
          if (!sig_.has_symbol("nil"))
            throw Error(ErrorKind::Type,
                        "list sugar needs symbol 'nil' in the signature",
                        s.pos);
          return {Term::sym("nil"), sig_.symbol_type("nil")};
        }
        auto [elem_type, list_type] = list_types(s.pos);
        Term t = Term::sym("nil");
        std::vector<Term> elems;
        for (const auto& e : s.elems) elems.push_back(check(*e, elem_type));
        for (auto it = elems.rbegin(); it != elems.rend(); ++it)
          t = Term::app(Term::app(Term::sym("cons"), *it), t);
        return {t, list_type};
      }
      case STerm::Kind::App: {
        auto [fun, fun_type] = synth(*s.fun);
        if (!fun_type.is_arrow())
          throw Error(ErrorKind::Type,
                      "cannot apply a term of base type " +
                          fun_type.to_string(),
                      s.pos);
        Term arg = check(*s.arg, fun_type.domain());
        return {Term::app(fun, arg), fun_type.codomain()};
      }
      case STerm::Kind::Lam: {
        return synth_lambda(s, 0);
      }
    }
    throw Error(ErrorKind::Syntax, "malformed term", s.pos);
  }

 private:
  Term check_lambda(const STerm& s, std::size_t binder_index,
                    const SimpleType& expected) {
    if (binder_index == s.binders.size()) return check(*s.body, expected);
    const SBinder& binder = s.binders[binder_index];
    if (!expected.is_arrow())
      throw Error(ErrorKind::Type,
                  "lambda where a term of base type " + expected.to_string() +
                      " was expected",
                  binder.pos);
    SimpleType var_type = expected.domain();
    if (binder.annotation && !(*binder.annotation == var_type))
      throw Error(ErrorKind::Type,
                  "binder '" + binder.name + "' annotated " +
                      binder.annotation->to_string() + " but the context needs " +
                      var_type.to_string(),
                  binder.pos);
    binders_.emplace_back(binder.name, var_type);
    Term body = check_lambda(s, binder_index + 1, expected.codomain());
    binders_.pop_back();
    return Term::lam(binder.name, var_type, body);
  }

  std::pair<Term, SimpleType> synth_lambda(const STerm& s,
                                           std::size_t binder_index) {
    if (binder_index == s.binders.size()) return synth(*s.body);
    const SBinder& binder = s.binders[binder_index];
    if (!binder.annotation)
      throw Error(ErrorKind::Type,
                  "cannot infer the type of binder '" + binder.name +
                      "' here; annotate it (\\" + binder.name + " : <type>. ...)",
                  binder.pos);
    binders_.emplace_back(binder.name, *binder.annotation);
    auto [body, body_type] = synth_lambda(s, binder_index + 1);
    binders_.pop_back();
    return {Term::lam(binder.name, *binder.annotation, body),
            SimpleType::arrow(*binder.annotation, body_type)};
  }

  std::optional<std::pair<Term, SimpleType>> try_known_name(const STerm& s) {
    for (std::size_t i = binders_.size(); i-- > 0;) {
      if (binders_[i].first == s.name)
        return std::make_pair(
            Term::bvar(static_cast<int>(binders_.size() - 1 - i)),
            binders_[i].second);
    }
    if (sig_.has_symbol(s.name))
      return std::make_pair(Term::sym(s.name), sig_.symbol_type(s.name));
    if (policy_ == FreeVarPolicy::UseRuleVars) {
      auto it = rule_vars_.find(s.name);
      if (it != rule_vars_.end())
        return std::make_pair(Term::fvar(s.name, it->second), it->second);
    }
    return std::nullopt;
  }

  Error unknown_name(const STerm& s) const {
    if (policy_ == FreeVarPolicy::UseRuleVars)
      return Error(ErrorKind::Pattern,
                   "variable '" + s.name +
                       "' occurs only in the right-hand side",
                   s.pos);
    if (policy_ == FreeVarPolicy::BindFromLhs)
      return Error(ErrorKind::Pattern,
                   "variable '" + s.name +
                       "' cannot be typed here; pattern variables get their "
                       "type from their position under the head symbol",
                   s.pos);
    return Error(ErrorKind::UnboundVariable,
                 "unknown identifier '" + s.name + "'", s.pos);
  }

  SimpleType numeral_type(SourcePos pos) const {
    if (!sig_.has_symbol("0") || !sig_.has_symbol("s"))
      throw Error(ErrorKind::Type,
                  "numeral sugar needs symbols '0' and 's' in the signature",
                  pos);
    SimpleType zero = sig_.symbol_type("0");
    SimpleType succ = sig_.symbol_type("s");
    if (!zero.is_base() || !succ.is_arrow() || !(succ.domain() == zero) ||
        !(succ.codomain() == zero))
      throw Error(ErrorKind::Type,
                  "numeral sugar needs 0 : i and s : i -> i", pos);
    return zero;
  }

  std::pair<SimpleType, SimpleType> list_types(SourcePos pos) const {
    if (!sig_.has_symbol("nil") || !sig_.has_symbol("cons"))
      throw Error(ErrorKind::Type,
                  "list sugar needs symbols 'nil' and 'cons' in the signature",
                  pos);
    SimpleType nil = sig_.symbol_type("nil");
    SimpleType cons = sig_.symbol_type("cons");
    if (!nil.is_base() || cons.arity() != 2 ||
        !(cons.codomain().codomain() == nil) ||
        !(cons.codomain().domain() == nil))
      throw Error(ErrorKind::Type,
                  "list sugar needs cons : e -> l -> l and nil : l", pos);
    return {cons.domain(), nil};
  }

  void require(const SimpleType& got, const SimpleType& expected,
               SourcePos pos) const {
    if (!(got == expected))
      throw Error(ErrorKind::Type,
                  "expected " + expected.to_string() + ", got " +
                      got.to_string(),
                  pos);
  }

  const Signature& sig_;
  FreeVarPolicy policy_;
  std::map<std::string, SimpleType> rule_vars_;
  std::vector<std::pair<std::string, SimpleType>> binders_;
};

// ---------------------------------------------------------------------------
// Monotonic expression parsing
// ---------------------------------------------------------------------------

MonoExprPtr parse_expr(Cursor& cur);

MonoExprPtr parse_expr_atom(Cursor& cur) {
  const Token& tok = cur.peek();
  switch (tok.kind) {
    case Tok::Number: {
      auto e = mk_nat(std::stoull(cur.next().text));
      e->pos = tok.pos;
      return e;
    }
    case Tok::Ident: {
      if (tok.text == "u") {
        auto e = mk_unit();
        e->pos = cur.next().pos;
        return e;
      }
      if (tok.text == "max") {
        cur.next();
        cur.expect(Tok::LParen, "'('");
        MonoExprPtr a = parse_expr(cur);
        cur.expect(Tok::Comma, "','");
        MonoExprPtr b = parse_expr(cur);
        cur.expect(Tok::RParen, "')'");
        auto e = mk_max(std::move(a), std::move(b));
        e->pos = tok.pos;
        return e;
      }
      auto e = mk_var(cur.next().text);
      e->pos = tok.pos;
      return e;
    }
    case Tok::LParen: {
      cur.next();
      std::vector<MonoExprPtr> parts;
      parts.push_back(parse_expr(cur));
      while (cur.accept(Tok::Comma)) parts.push_back(parse_expr(cur));
      cur.expect(Tok::RParen, "')'");
      if (parts.size() == 1) return parts[0];
      auto e = mk_tuple(std::move(parts));
      e->pos = tok.pos;
      return e;
    }
    default:
      throw Error(ErrorKind::Syntax,
                  "expected an expression, got '" + Cursor::describe(tok) + "'",
                  tok.pos);
  }
}

MonoExprPtr parse_expr_postfix(Cursor& cur) {
  MonoExprPtr e = parse_expr_atom(cur);
  while (cur.at(Tok::Dot)) {
    SourcePos pos = cur.next().pos;
    Token idx = cur.expect(Tok::Number, "a component index");
    e = mk_proj(std::move(e), std::stoull(idx.text));
    e->pos = pos;
  }
  return e;
}

bool at_expr_atom(const Cursor& cur) {
  switch (cur.peek().kind) {
    case Tok::Number:
    case Tok::LParen:
      return true;
    case Tok::Ident:
      return true;
    default:
      return false;
  }
}

MonoExprPtr parse_expr_app(Cursor& cur) {
  MonoExprPtr e = parse_expr_postfix(cur);
  while (at_expr_atom(cur)) {
    SourcePos pos = cur.peek().pos;
    MonoExprPtr arg = parse_expr_postfix(cur);
    e = mk_app(std::move(e), std::move(arg));
    e->pos = pos;
  }
  return e;
}

MonoExprPtr parse_expr_product(Cursor& cur) {
  MonoExprPtr e = parse_expr_app(cur);
  while (cur.at(Tok::Star)) {
    SourcePos pos = cur.next().pos;
    MonoExprPtr rhs = parse_expr_app(cur);
    e = mk_mul(std::move(e), std::move(rhs));
    e->pos = pos;
  }
  return e;
}

MonoExprPtr parse_expr_sum(Cursor& cur) {
  MonoExprPtr e = parse_expr_product(cur);
  while (cur.at(Tok::Plus)) {
    SourcePos pos = cur.next().pos;
    MonoExprPtr rhs = parse_expr_product(cur);
    e = mk_add(std::move(e), std::move(rhs));
    e->pos = pos;
  }
  return e;
}

MonoExprPtr parse_expr(Cursor& cur) {
  if (cur.at(Tok::Backslash)) {
    SourcePos pos = cur.next().pos;
    std::vector<Token> names;
    while (cur.at(Tok::Ident)) names.push_back(cur.next());
    if (names.empty())
      throw Error(ErrorKind::Syntax, "expected a binder name", cur.peek().pos);
    cur.expect(Tok::Dot, "'.'");
    MonoExprPtr body = parse_expr(cur);
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      body = mk_lam(it->text, std::move(body));
      body->pos = it->pos;
    }
    body->pos = pos;
    return body;
  }
  return parse_expr_sum(cur);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

SourceFile load_file(const std::string& path, SourceFile::Kind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Usage, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return SourceFile{path, buf.str(), kind};
}

TRS parse_trs(const std::string& text) {
  Lexer lexer(text);
  Cursor cur(lexer.tokens());

  Signature sig;
  struct PendingRule {
    STermPtr lhs, rhs;
    SourcePos pos;
  };
  std::vector<PendingRule> pending;

  cur.skip_newlines();
  while (!cur.at(Tok::End)) {
    Token kw = cur.expect(Tok::Ident, "'type', 'cons', 'fun', or 'rule'");
    if (kw.text == "type") {
      Token name = cur.expect(Tok::Ident, "a base type name");
      sig.declare_base(name.text);
    } else if (kw.text == "cons" || kw.text == "fun") {
      // symbol names may be numerals (e.g. `cons 0 : nat`)
      std::string name;
      if (cur.at(Tok::Ident) || cur.at(Tok::Number)) {
        name = cur.next().text;
      } else {
        throw Error(ErrorKind::Syntax, "expected a symbol name",
                    cur.peek().pos);
      }
      cur.expect(Tok::Colon, "':'");
      SimpleType type = parse_type(cur, sig);
      sig.declare_symbol(name, type, kw.text == "cons");
    } else if (kw.text == "rule") {
      STermPtr lhs = parse_surface_term(cur, sig);
      cur.expect(Tok::FatArrow, "'=>'");
      STermPtr rhs = parse_surface_term(cur, sig);
      pending.push_back({std::move(lhs), std::move(rhs), kw.pos});
    } else {
      throw Error(ErrorKind::Syntax,
                  "unknown declaration '" + kw.text + "'", kw.pos);
    }
    cur.expect_statement_end();
    cur.skip_newlines();
  }

  std::vector<Rule> rules;
  for (const PendingRule& pr : pending) {
    Elaborator lhs_elab(sig, Elaborator::FreeVarPolicy::BindFromLhs);
    auto [lhs, lhs_type] = lhs_elab.synth(*pr.lhs);

    Elaborator rhs_elab(sig, Elaborator::FreeVarPolicy::UseRuleVars);
    rhs_elab.rule_vars() = lhs_elab.rule_vars();
    Term rhs = rhs_elab.check(*pr.rhs, lhs_type);

    rules.push_back(Rule{"", lhs, rhs});
  }

  return TRS(std::move(sig), std::move(rules));
}

Term parse_term(const std::string& text, const TRS& trs) {
  Lexer lexer(text);
  Cursor cur(lexer.tokens());
  cur.skip_newlines();
  STermPtr surface = parse_surface_term(cur, trs.signature());
  cur.skip_newlines();
  if (!cur.at(Tok::End))
    throw Error(ErrorKind::Syntax,
                "unexpected '" + Cursor::describe(cur.peek()) +
                    "' after the term",
                cur.peek().pos);
  Elaborator elab(trs.signature(), Elaborator::FreeVarPolicy::Forbid);
  auto [term, type] = elab.synth(*surface);
  (void)type;
  return term;
}

Interpretation parse_interpretation(const std::string& text, const TRS& trs) {
  Lexer lexer(text);
  Cursor cur(lexer.tokens());

  InterpretationKey key;
  struct PendingEntry {
    std::string symbol;
    MonoExprPtr expr;
    SourcePos pos;
  };
  std::vector<PendingEntry> pending;

  cur.skip_newlines();
  while (!cur.at(Tok::End)) {
    Token kw = cur.expect(Tok::Ident, "'key' or 'int'");
    if (kw.text == "key") {
      Token name = cur.expect(Tok::Ident, "a base type name");
      if (!trs.signature().has_base(name.text))
        throw Error(ErrorKind::Syntax,
                    "base type '" + name.text + "' not declared in the system",
                    name.pos);
      cur.expect(Tok::Equals, "'='");
      Token dim = cur.expect(Tok::Number, "a dimension");
      key.set(name.text, std::stoull(dim.text), dim.pos);
    } else if (kw.text == "int") {
      std::string name;
      SourcePos name_pos = cur.peek().pos;
      if (cur.at(Tok::Ident) || cur.at(Tok::Number)) {
        name = cur.next().text;
      } else {
        throw Error(ErrorKind::Syntax, "expected a symbol name",
                    cur.peek().pos);
      }
      if (!trs.signature().has_symbol(name))
        throw Error(ErrorKind::UnknownSymbol,
                    "symbol '" + name + "' not declared in the system",
                    name_pos);
      cur.expect(Tok::Equals, "'='");
      cur.expect(Tok::Langle, "'<'");
      MonoExprPtr cost = parse_expr(cur);
      cur.expect(Tok::Comma, "','");
      MonoExprPtr size = parse_expr(cur);
      cur.expect(Tok::Rangle, "'>'");
      auto entry = mk_tuple({std::move(cost), std::move(size)});
      entry->pos = kw.pos;
      pending.push_back({std::move(name), std::move(entry), kw.pos});
    } else {
      throw Error(ErrorKind::Syntax, "unknown declaration '" + kw.text + "'",
                  kw.pos);
    }
    cur.expect_statement_end();
    cur.skip_newlines();
  }

  for (const std::string& base : trs.signature().base_types())
    if (!key.has(base))
      throw Error(ErrorKind::MissingKey,
                  "no key for base type '" + base + "'");

  std::map<std::string, SymbolInterp> symbols;
  for (PendingEntry& entry : pending) {
    if (symbols.count(entry.symbol))
      throw Error(ErrorKind::DuplicateSymbol,
                  "symbol '" + entry.symbol + "' interpreted twice", entry.pos);
    SemType expected =
        type_interpretation(trs.signature().symbol_type(entry.symbol), key);
    shape_check(*entry.expr, expected);
    CSValue value = eval_expr(*entry.expr, Env{});
    symbols.emplace(entry.symbol, SymbolInterp{entry.expr, std::move(value)});
  }

  for (const auto& [name, type] : trs.signature().symbols()) {
    (void)type;
    if (!symbols.count(name))
      throw Error(ErrorKind::MissingSymbol,
                  "no interpretation for symbol '" + name + "'");
  }

  return Interpretation(std::move(key), std::move(symbols));
}

std::string pretty_interpretation(const Interpretation& interp) {
  std::ostringstream os;
  for (const auto& [base, dim] : interp.key().entries())
    os << "key " << base << " = " << dim << "\n";
  for (const auto& [name, entry] : interp.symbols()) {
    // entry.expr is the (cost, size) pair
    os << "int " << name << " = < " << expr_to_string(*entry.expr->kids[0])
       << ", " << expr_to_string(*entry.expr->kids[1]) << " >\n";
  }
  return os.str();
}

}  // namespace cbvtc
