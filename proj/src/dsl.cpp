#include "drbd/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "drbd/errors.hpp"
#include "drbd/structures.hpp"

namespace drbd {

Distribution DistSpec::to_distribution() const {
  return kind == Kind::Exponential ? Distribution::exponential(a) : Distribution::weibull(a, b);
}

namespace {

enum class Tok {
  Id,
  Number,
  Tilde,
  Equals,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Plus,
  Star,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws_and_comments();
    Token t;
    t.pos = pos_;
    if (at_end()) {
      t.kind = Tok::End;
      return t;
    }
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        t.text.push_back(advance());
      }
      t.kind = Tok::Id;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return lex_number(t);
    }
    advance();
    switch (c) {
      case '~':
        t.kind = Tok::Tilde;
        return t;
      case '=':
        t.kind = Tok::Equals;
        return t;
      case '(':
        t.kind = Tok::LParen;
        return t;
      case ')':
        t.kind = Tok::RParen;
        return t;
      case '{':
        t.kind = Tok::LBrace;
        return t;
      case '}':
        t.kind = Tok::RBrace;
        return t;
      case ',':
        t.kind = Tok::Comma;
        return t;
      case '+':
        t.kind = Tok::Plus;
        return t;
      case '*':
        t.kind = Tok::Star;
        return t;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.pos.line,
                         t.pos.column);
    }
  }

 private:
  bool at_end() const { return offset_ >= text_.size(); }
  char peek() const { return text_[offset_]; }

  char advance() {
    char c = text_[offset_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void skip_ws_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token lex_number(Token& t) {
    std::string digits;
    auto take_digits = [&] {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        digits.push_back(advance());
      }
    };
    take_digits();
    if (!at_end() && peek() == '.') {
      digits.push_back(advance());
      take_digits();
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      digits.push_back(advance());
      if (!at_end() && (peek() == '+' || peek() == '-')) digits.push_back(advance());
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        throw ParseError("malformed number exponent", t.pos.line, t.pos.column);
      }
      take_digits();
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw ParseError("malformed number '" + digits + "'", t.pos.line, t.pos.column);
    }
    t.kind = Tok::Number;
    t.text = std::move(digits);
    t.number = value;
    return t;
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  SourcePos pos_;
};

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "system", "spare",  "dormancy", "set",      "exp",   "weibull", "wsp",   "csp",
      "hsp",    "series", "parallel", "always",   "never", "after",   "simult", "inclafter",
  };
  return words;
}

class Parser {
 public:
  Parser(std::string_view text, std::string name) : lexer_(text), name_(std::move(name)) {
    advance();
  }

  ModelDocument parse() {
    ModelDocument doc;
    doc.name = name_;
    while (true) {
      if (cur_.kind == Tok::End) {
        throw ParseError("missing 'system = <expr>' line", cur_.pos.line, cur_.pos.column);
      }
      if (cur_.kind != Tok::Id) {
        fail("expected a declaration or the system line");
      }
      if (cur_.text == "system") {
        advance();
        expect(Tok::Equals, "expected '=' after 'system'");
        doc.system = parse_expr();
        if (cur_.kind != Tok::End) fail("unexpected input after the system expression");
        return doc;
      }
      if (cur_.text == "spare") {
        parse_spare(doc);
      } else if (cur_.text == "set") {
        parse_set(doc);
      } else {
        parse_block(doc);
      }
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur_.pos.line, cur_.pos.column);
  }

  void advance() { cur_ = lexer_.next(); }

  Token expect(Tok kind, const std::string& msg) {
    if (cur_.kind != kind) fail(msg);
    Token t = cur_;
    advance();
    return t;
  }

  Token expect_new_id(const std::string& what) {
    if (cur_.kind != Tok::Id) fail("expected " + what);
    if (reserved_words().count(cur_.text)) {
      fail("'" + cur_.text + "' is a reserved word and cannot name a " + what);
    }
    Token t = cur_;
    if (declared_.count(t.text)) {
      throw ParseError("duplicate id '" + t.text + "'", t.pos.line, t.pos.column);
    }
    advance();
    return t;
  }

  double expect_number(const std::string& what) {
    if (cur_.kind != Tok::Number) fail("expected " + what);
    double v = cur_.number;
    advance();
    return v;
  }

  DistSpec parse_dist() {
    if (cur_.kind != Tok::Id) fail("expected a distribution (exp or weibull)");
    DistSpec d;
    Token head = cur_;
    if (head.text == "exp") {
      advance();
      expect(Tok::LParen, "expected '(' after 'exp'");
      d.kind = DistSpec::Kind::Exponential;
      d.a = expect_number("a rate");
      if (!(d.a > 0.0)) {
        throw ParseError("rate must be positive", head.pos.line, head.pos.column);
      }
      expect(Tok::RParen, "expected ')'");
      return d;
    }
    if (head.text == "weibull") {
      advance();
      expect(Tok::LParen, "expected '(' after 'weibull'");
      d.kind = DistSpec::Kind::Weibull;
      d.a = expect_number("a shape");
      expect(Tok::Comma, "expected ',' between shape and scale");
      d.b = expect_number("a scale");
      if (!(d.a > 0.0) || !(d.b > 0.0)) {
        throw ParseError("shape and scale must be positive", head.pos.line, head.pos.column);
      }
      expect(Tok::RParen, "expected ')'");
      return d;
    }
    fail("unknown distribution '" + head.text + "'");
  }

  void parse_block(ModelDocument& doc) {
    Token id = expect_new_id("block id");
    expect(Tok::Tilde, "expected '~' after block id");
    BlockDecl decl;
    decl.id = id.text;
    decl.dist = parse_dist();
    decl.pos = {id.pos.line, id.pos.column};
    doc.blocks.push_back(decl);
    declared_.emplace(decl.id, Decl::Block);
  }

  void parse_spare(ModelDocument& doc) {
    advance();  // 'spare'
    Token id = expect_new_id("spare id");
    expect(Tok::Tilde, "expected '~' after spare id");
    SpareDecl decl;
    decl.id = id.text;
    decl.active = parse_dist();
    if (cur_.kind != Tok::Id || cur_.text != "dormancy") {
      fail("expected 'dormancy' after the spare's distribution");
    }
    advance();
    Token num = cur_;
    decl.dormancy = expect_number("a dormancy factor");
    if (!(decl.dormancy >= 0.0 && decl.dormancy <= 1.0)) {
      throw ParseError("dormancy factor must lie in [0, 1]", num.pos.line, num.pos.column);
    }
    decl.pos = {id.pos.line, id.pos.column};
    doc.spares.push_back(decl);
    declared_.emplace(decl.id, Decl::Spare);
  }

  void parse_set(ModelDocument& doc) {
    advance();  // 'set'
    Token id = expect_new_id("set id");
    expect(Tok::Equals, "expected '=' after set id");
    expect(Tok::LBrace, "expected '{'");
    SetDecl decl;
    decl.id = id.text;
    while (true) {
      Token member = cur_;
      if (member.kind != Tok::Id) fail("expected a block id");
      check_basic_block(member);
      decl.members.push_back(member.text);
      advance();
      if (cur_.kind == Tok::Comma) {
        advance();
        continue;
      }
      break;
    }
    expect(Tok::RBrace, "expected '}'");
    decl.pos = {id.pos.line, id.pos.column};
    doc.sets.push_back(decl);
    declared_.emplace(decl.id, Decl::Set);
    sets_.emplace(decl.id, decl.members);
  }

  void check_basic_block(const Token& t) const {
    auto it = declared_.find(t.text);
    if (it == declared_.end()) {
      throw ParseError("unknown block '" + t.text + "'", t.pos.line, t.pos.column);
    }
    if (it->second == Decl::Spare) {
      throw ParseError(
          "spare '" + t.text + "' used as a basic block; spares may appear only in wsp/csp/hsp",
          t.pos.line, t.pos.column);
    }
    if (it->second == Decl::Set) {
      throw ParseError("set '" + t.text + "' cannot be used as a block here", t.pos.line,
                       t.pos.column);
    }
  }

  ExprPtr parse_expr() {
    if (++depth_ > kMaxNesting) {
      fail("expression nesting exceeds " + std::to_string(kMaxNesting) + " levels");
    }
    ExprPtr e = parse_term();
    while (cur_.kind == Tok::Plus) {
      advance();
      e = Expr::or_(std::move(e), parse_term());
    }
    --depth_;
    return e;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (cur_.kind == Tok::Star) {
      advance();
      e = Expr::and_(std::move(e), parse_factor());
    }
    return e;
  }

  ExprPtr parse_factor() {
    if (cur_.kind == Tok::LParen) {
      advance();
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "expected ')'");
      return e;
    }
    if (cur_.kind != Tok::Id) fail("expected a block id, construct or '('");
    Token head = cur_;
    if (head.text == "always") {
      advance();
      return Expr::always();
    }
    if (head.text == "never") {
      advance();
      return Expr::never();
    }
    if (head.text == "wsp" || head.text == "csp" || head.text == "hsp") {
      advance();
      expect(Tok::LParen, "expected '(' after '" + head.text + "'");
      ExprPtr main = parse_expr();
      expect(Tok::Comma, "expected ',' before the spare id");
      Token spare = cur_;
      if (spare.kind != Tok::Id) fail("expected a spare id");
      auto it = declared_.find(spare.text);
      if (it == declared_.end()) {
        throw ParseError("unknown block '" + spare.text + "'", spare.pos.line, spare.pos.column);
      }
      if (it->second != Decl::Spare) {
        throw ParseError("block '" + spare.text + "' is not declared as a spare",
                         spare.pos.line, spare.pos.column);
      }
      advance();
      expect(Tok::RParen, "expected ')'");
      if (head.text == "wsp") return Expr::wsp(std::move(main), spare.text);
      if (head.text == "csp") return Expr::csp(std::move(main), spare.text);
      return Expr::hsp(std::move(main), spare.text);
    }
    if (head.text == "after" || head.text == "simult" || head.text == "inclafter") {
      advance();
      expect(Tok::LParen, "expected '(' after '" + head.text + "'");
      ExprPtr left = parse_expr();
      expect(Tok::Comma, "expected ','");
      ExprPtr right = parse_expr();
      expect(Tok::RParen, "expected ')'");
      if (head.text == "after") return Expr::after(std::move(left), std::move(right));
      if (head.text == "simult") return Expr::simult(std::move(left), std::move(right));
      return Expr::incl_after(std::move(left), std::move(right));
    }
    if (head.text == "series" || head.text == "parallel") {
      advance();
      expect(Tok::LParen, "expected '(' after '" + head.text + "'");
      std::vector<std::string> ids = parse_idlist();
      expect(Tok::RParen, "expected ')'");
      Token at = head;
      try {
        return head.text == "series" ? series(std::move(ids)) : parallel(std::move(ids));
      } catch (const StructureError& err) {
        throw ParseError(err.what(), at.pos.line, at.pos.column);
      }
    }
    if (reserved_words().count(head.text)) fail("unexpected '" + head.text + "'");
    check_basic_block(head);
    advance();
    return Expr::var(head.text);
  }

  std::vector<std::string> parse_idlist() {
    std::vector<std::string> ids;
    while (true) {
      Token t = cur_;
      if (t.kind != Tok::Id) fail("expected a block id or set name");
      auto set_it = sets_.find(t.text);
      if (set_it != sets_.end()) {
        ids.insert(ids.end(), set_it->second.begin(), set_it->second.end());
      } else {
        check_basic_block(t);
        ids.push_back(t.text);
      }
      advance();
      if (cur_.kind == Tok::Comma) {
        advance();
        continue;
      }
      return ids;
    }
  }

  enum class Decl { Block, Spare, Set };

  static constexpr int kMaxNesting = 256;

  Lexer lexer_;
  int depth_ = 0;
  std::string name_;
  Token cur_;
  std::map<std::string, Decl> declared_;
  std::map<std::string, std::vector<std::string>> sets_;
};

}  // namespace

ModelDocument parse_model(std::string_view text, std::string name) {
  Parser parser(text, std::move(name));
  return parser.parse();
}

DrbdModel ModelDocument::to_model() const {
  DrbdModel m(name);
  for (const auto& b : blocks) m.add_block(b.id, b.dist.to_distribution());
  for (const auto& s : spares) m.add_spare(s.id, SpareSpec(s.active.to_distribution(), s.dormancy));
  m.set_root(system);
  m.finalize();
  return m;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string format_dist(const DistSpec& d) {
  if (d.kind == DistSpec::Kind::Exponential) return "exp(" + format_double(d.a) + ")";
  return "weibull(" + format_double(d.a) + ", " + format_double(d.b) + ")";
}

bool all_vars(const std::vector<ExprPtr>& args) {
  return std::all_of(args.begin(), args.end(),
                     [](const ExprPtr& a) { return a->op() == Op::Var; });
}

// Precedence: Or = 1, And = 2, atoms and call-like constructs = 3. The
// grammar is left-associative, so a right operand at the same level keeps
// its parentheses.
void format(const ExprPtr& e, int context, std::string& out) {
  auto call2 = [&](const char* fn, const ExprPtr& a, const ExprPtr& b) {
    out += fn;
    out += '(';
    format(a, 0, out);
    out += ", ";
    format(b, 0, out);
    out += ')';
  };
  switch (e->op()) {
    case Op::Var:
      out += e->name();
      return;
    case Op::Always:
      out += "always";
      return;
    case Op::Never:
      out += "never";
      return;
    case Op::Or:
    case Op::And: {
      int prec = e->op() == Op::Or ? 1 : 2;
      bool parens = prec < context;
      if (parens) out += '(';
      format(e->arg(0), prec, out);
      out += e->op() == Op::Or ? " + " : " * ";
      format(e->arg(1), prec + 1, out);
      if (parens) out += ')';
      return;
    }
    case Op::After:
      call2("after", e->arg(0), e->arg(1));
      return;
    case Op::Simult:
      call2("simult", e->arg(0), e->arg(1));
      return;
    case Op::InclAfter:
      call2("inclafter", e->arg(0), e->arg(1));
      return;
    case Op::Wsp:
    case Op::Csp:
    case Op::Hsp: {
      out += e->op() == Op::Wsp ? "wsp" : (e->op() == Op::Csp ? "csp" : "hsp");
      out += '(';
      format(e->arg(0), 0, out);
      out += ", ";
      out += e->name();
      out += ')';
      return;
    }
    case Op::NaryAnd:
    case Op::NaryOr: {
      bool is_and = e->op() == Op::NaryAnd;
      if (all_vars(e->args())) {
        out += is_and ? "series(" : "parallel(";
        for (std::size_t i = 0; i < e->args().size(); ++i) {
          if (i) out += ", ";
          out += e->arg(i)->name();
        }
        out += ')';
        return;
      }
      int prec = is_and ? 2 : 1;
      bool parens = prec < context || e->args().size() > 1;
      if (parens) out += '(';
      for (std::size_t i = 0; i < e->args().size(); ++i) {
        if (i) out += is_and ? " * " : " + ";
        format(e->arg(i), prec + 1, out);
      }
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string format_expr(const ExprPtr& e) {
  std::string out;
  format(e, 0, out);
  return out;
}

std::string ModelDocument::pretty_print() const {
  std::ostringstream os;
  os << "# model: " << name << "\n";
  for (const auto& b : blocks) os << b.id << " ~ " << format_dist(b.dist) << "\n";
  for (const auto& s : spares) {
    os << "spare " << s.id << " ~ " << format_dist(s.active) << " dormancy "
       << format_double(s.dormancy) << "\n";
  }
  for (const auto& s : sets) {
    os << "set " << s.id << " = {";
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      if (i) os << ", ";
      os << s.members[i];
    }
    os << "}\n";
  }
  os << "system = " << format_expr(system) << "\n";
  return os.str();
}

bool doc_equal(const ModelDocument& a, const ModelDocument& b) {
  if (a.blocks.size() != b.blocks.size() || a.spares.size() != b.spares.size() ||
      a.sets.size() != b.sets.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].id != b.blocks[i].id || !(a.blocks[i].dist == b.blocks[i].dist)) return false;
  }
  for (std::size_t i = 0; i < a.spares.size(); ++i) {
    if (a.spares[i].id != b.spares[i].id || !(a.spares[i].active == b.spares[i].active) ||
        a.spares[i].dormancy != b.spares[i].dormancy) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.sets.size(); ++i) {
    if (a.sets[i].id != b.sets[i].id || a.sets[i].members != b.sets[i].members) return false;
  }
  if (!a.system || !b.system) return a.system == b.system;
  return struct_equal(a.system, b.system);
}

}  // namespace drbd
