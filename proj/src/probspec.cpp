#include "hpmbvp/probspec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace hpmbvp {

namespace {

struct Token {
  enum class Type { Number, Ident, String, Punct, Newline, End };
  Type type = Type::End;
  std::string text;
  double number = 0.0;
  bool integer = false;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  std::size_t lineStart = 0;
  std::size_t i = 0;
  auto column = [&](std::size_t pos) { return static_cast<int>(pos - lineStart) + 1; };
  auto isDigit = [&](std::size_t pos) {
    return pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]));
  };

  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      out.push_back({Token::Type::Newline, "\\n", 0.0, false, line, column(i)});
      ++i;
      ++line;
      lineStart = i;
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (isDigit(i) || (c == '.' && isDigit(i + 1))) {
      const std::size_t start = i;
      bool integer = true;
      while (isDigit(i)) ++i;
      if (i < src.size() && src[i] == '.') {
        integer = false;
        ++i;
        while (isDigit(i)) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (isDigit(j)) {
          integer = false;
          i = j;
          while (isDigit(i)) ++i;
        }
      }
      Token t{Token::Type::Number, std::string(src.substr(start, i - start)), 0.0, integer, line,
              column(start)};
      auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + i, t.number);
      if (ec != std::errc() || ptr != src.data() + i)
        throw SyntaxError(t.line, t.column, t.text, "malformed number");
      out.push_back(std::move(t));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      out.push_back({Token::Type::Ident, std::string(src.substr(start, i - start)), 0.0, false,
                     line, column(start)});
    } else if (c == '"') {
      const std::size_t start = i++;
      while (i < src.size() && src[i] != '"' && src[i] != '\n') ++i;
      if (i >= src.size() || src[i] != '"')
        throw SyntaxError(line, column(start), "\"", "unterminated string");
      out.push_back({Token::Type::String, std::string(src.substr(start + 1, i - start - 1)), 0.0,
                     false, line, column(start)});
      ++i;
    } else if (std::string_view("+-*/^()=").find(c) != std::string_view::npos) {
      out.push_back({Token::Type::Punct, std::string(1, c), 0.0, false, line, column(i)});
      ++i;
    } else {
      throw SyntaxError(line, column(i), std::string(1, c), "unexpected character");
    }
  }
  out.push_back({Token::Type::End, "", 0.0, false, line, column(i)});
  return out;
}

bool isDerivRef(const Token& t) {
  if (t.type != Token::Type::Ident || t.text.size() < 2 || t.text[0] != 'D') return false;
  for (std::size_t i = 1; i < t.text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) return false;
  return true;
}

bool isSymbol(const Token& t) {
  return t.type == Token::Type::Ident && std::isupper(static_cast<unsigned char>(t.text[0])) &&
         !isDerivRef(t);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  ProblemFile file() {
    ProblemFile pf;
    skipNewlines();
    expectKeyword("problem");
    if (peek().type != Token::Type::String) error(peek(), "expected quoted problem name");
    pf.name = next().text;
    endOfStatement();

    while (true) {
      skipNewlines();
      if (peek().type == Token::Type::End) break;
      const Token& kw = peek();
      if (kw.type != Token::Type::Ident) error(kw, "expected a statement keyword");
      next();
      const std::string& k = kw.text;
      if (k == "order") {
        setOnce(pf.order, integerLiteral(), kw);
      } else if (k == "terms") {
        setOnce(pf.terms, integerLiteral(), kw);
      } else if (k == "cap") {
        setOnce(pf.cap, integerLiteral(), kw);
      } else if (k == "forcing") {
        setOnce(pf.forcing, expr(), kw);
      } else if (k == "exact") {
        setOnce(pf.exact, expr(), kw);
      } else if (k == "linear") {
        Expr c = expr();
        pf.linear.push_back({std::move(c), derivRef()});
      } else if (k == "nonlinear") {
        Expr c = expr();
        if (peek().type != Token::Type::Ident || peek().text != "U")
          error(peek(), "expected 'U^<power>'");
        next();
        expectPunct("^");
        pf.nonlinear.push_back({std::move(c), integerLiteral()});
      } else if (k == "ic") {
        IcSpec ic;
        ic.derivOrder = derivRef();
        expectPunct("=");
        const auto& after = peek(1);
        if (isSymbol(peek()) &&
            (after.type == Token::Type::Newline || after.type == Token::Type::End))
          ic.value = next().text;
        else
          ic.value = expr();
        pf.ics.push_back(std::move(ic));
      } else if (k == "bc") {
        pf.bcs.push_back(boundaryCondition());
      } else if (k == "guess") {
        if (!isSymbol(peek())) error(peek(), "expected unknown symbol");
        GuessSpec g;
        g.symbol = next().text;
        expectPunct("=");
        g.value = expr();
        pf.guesses.push_back(std::move(g));
      } else {
        error(kw, "unknown statement");
      }
      endOfStatement();
    }
    return pf;
  }

  Expr standaloneExpr() {
    Expr e = expr();
    skipNewlines();
    if (peek().type != Token::Type::End) error(peek(), "unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void error(const Token& t, const std::string& msg) const {
    throw SyntaxError(t.line, t.column, t.text, msg);
  }

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool atPunct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).type == Token::Type::Punct && peek(ahead).text == p;
  }

  void skipNewlines() {
    while (peek().type == Token::Type::Newline) next();
  }

  void endOfStatement() {
    if (peek().type != Token::Type::Newline && peek().type != Token::Type::End)
      error(peek(), "expected end of line");
  }

  void expectKeyword(std::string_view kw) {
    if (peek().type != Token::Type::Ident || peek().text != kw)
      error(peek(), "expected '" + std::string(kw) + "'");
    next();
  }

  void expectPunct(std::string_view p) {
    if (!atPunct(p)) error(peek(), "expected '" + std::string(p) + "'");
    next();
  }

  template <typename T, typename V>
  void setOnce(std::optional<T>& slot, V&& v, const Token& kw) {
    if (slot) error(kw, "duplicate '" + kw.text + "' statement");
    slot = std::forward<V>(v);
  }

  int integerLiteral() {
    const Token& t = peek();
    if (t.type != Token::Type::Number || !t.integer) error(t, "expected nonnegative integer");
    next();
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) error(t, "integer out of range");
    return v;
  }

  int derivRef() {
    const Token& t = peek();
    if (!isDerivRef(t)) error(t, "expected derivative reference D<n>");
    next();
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), v);
    if (ec != std::errc()) error(t, "derivative order out of range");
    return v;
  }

  // bcsum := ['-'] bcterm (('+'|'-') bcterm)*
  BcSpec boundaryCondition() {
    BcSpec bc;
    bool negated = false;
    if (atPunct("-") && isDerivRef(peek(1))) {
      next();
      negated = true;
    }
    while (true) {
      BcTermSpec term;
      term.negated = negated;
      if (!isDerivRef(peek())) {
        term.weight = product();
        expectPunct("*");
      }
      term.derivOrder = derivRef();
      expectPunct("(");
      term.point = expr();
      expectPunct(")");
      bc.terms.push_back(std::move(term));
      if (atPunct("+") || atPunct("-")) {
        negated = next().text == "-";
        continue;
      }
      break;
    }
    expectPunct("=");
    bc.rhs = expr();
    return bc;
  }

  Expr expr() {
    Expr lhs = product();
    while (atPunct("+") || atPunct("-")) {
      const auto kind = next().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      lhs = Expr::binary(kind, std::move(lhs), product());
    }
    return lhs;
  }

  // A '*' directly followed by D<n> belongs to a boundary term, not the product.
  Expr product() {
    Expr lhs = unary();
    while ((atPunct("*") && !isDerivRef(peek(1))) || atPunct("/")) {
      const auto kind = next().text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
      lhs = Expr::binary(kind, std::move(lhs), unary());
    }
    return lhs;
  }

  Expr unary() {
    if (atPunct("-")) {
      next();
      return Expr::unary(Expr::Kind::Negate, unary());
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (atPunct("^")) {
      next();
      base = Expr::power(std::move(base), integerLiteral());
      if (atPunct("^")) error(peek(), "chained '^' needs parentheses");
    }
    return base;
  }

  Expr primary() {
    const Token& t = peek();
    if (t.type == Token::Type::Number) {
      next();
      return Expr::number(t.number);
    }
    if (atPunct("(")) {
      next();
      Expr e = expr();
      expectPunct(")");
      return e;
    }
    if (t.type == Token::Type::Ident) {
      if (t.text == "x") {
        next();
        return Expr::variable();
      }
      if (t.text == "e") {
        next();
        return Expr::euler();
      }
      static const std::map<std::string, Expr::Kind> calls = {
          {"exp", Expr::Kind::Exp}, {"sinh", Expr::Kind::Sinh}, {"cosh", Expr::Kind::Cosh}};
      if (auto it = calls.find(t.text); it != calls.end()) {
        next();
        expectPunct("(");
        Expr arg = expr();
        expectPunct(")");
        return Expr::unary(it->second, std::move(arg));
      }
      error(t, "unexpected identifier");
    }
    error(t, "expected an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Negate:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string formatNumber(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string wrapped(const Expr& e, bool parens) {
  return parens ? "(" + formatExpr(e) + ")" : formatExpr(e);
}

const char* symbolOf(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
      return " + ";
    case Expr::Kind::Sub:
      return " - ";
    case Expr::Kind::Mul:
      return "*";
    case Expr::Kind::Div:
      return "/";
    default:
      return "?";
  }
}

double numericOnly(const Expr& e, const char* what) {
  if (dependsOnX(e)) throw SemanticError(std::string(what) + " must not depend on x");
  return evalExprNumeric(e);
}

}  // namespace

ProblemFile parseProblem(std::string_view text) { return Parser(text).file(); }

Expr parseExpr(std::string_view text) { return Parser(text).standaloneExpr(); }

ProblemFile loadProblemFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return parseProblem(ss.str());
}

std::string formatExpr(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number:
      return formatNumber(e.value);
    case K::Variable:
      return "x";
    case K::Euler:
      return "e";
    case K::Negate:
      return "-" + wrapped(e.args[0], precedence(e.args[0]) < 3);
    case K::Pow:
      return wrapped(e.args[0], precedence(e.args[0]) < 5) + "^" + std::to_string(e.exponent);
    case K::Exp:
      return "exp(" + formatExpr(e.args[0]) + ")";
    case K::Sinh:
      return "sinh(" + formatExpr(e.args[0]) + ")";
    case K::Cosh:
      return "cosh(" + formatExpr(e.args[0]) + ")";
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: {
      const int p = precedence(e);
      return wrapped(e.args[0], precedence(e.args[0]) < p) + symbolOf(e.kind) +
             wrapped(e.args[1], precedence(e.args[1]) <= p);
    }
  }
  return "?";
}

std::string toText(const ProblemFile& pf) {
  std::ostringstream os;
  os << "problem \"" << pf.name << "\"\n";
  if (pf.order) os << "order " << *pf.order << "\n";
  if (pf.terms) os << "terms " << *pf.terms << "\n";
  if (pf.cap) os << "cap " << *pf.cap << "\n";
  if (pf.forcing) os << "forcing " << formatExpr(*pf.forcing) << "\n";
  for (const auto& l : pf.linear) os << "linear " << formatExpr(l.coeff) << " D" << l.derivOrder << "\n";
  for (const auto& n : pf.nonlinear) os << "nonlinear " << formatExpr(n.coeff) << " U^" << n.power << "\n";
  for (const auto& ic : pf.ics) {
    os << "ic D" << ic.derivOrder << " = ";
    if (const auto* sym = std::get_if<std::string>(&ic.value))
      os << *sym;
    else
      os << formatExpr(std::get<Expr>(ic.value));
    os << "\n";
  }
  for (const auto& bc : pf.bcs) {
    os << "bc ";
    for (std::size_t i = 0; i < bc.terms.size(); ++i) {
      const auto& t = bc.terms[i];
      if (i > 0) os << (t.negated ? " - " : " + ");
      else if (t.negated) os << "-";
      if (t.weight) os << wrapped(*t.weight, precedence(*t.weight) < 2) << "*";
      os << "D" << t.derivOrder << "(" << formatExpr(t.point) << ")";
    }
    os << " = " << formatExpr(bc.rhs) << "\n";
  }
  for (const auto& g : pf.guesses) os << "guess " << g.symbol << " = " << formatExpr(g.value) << "\n";
  if (pf.exact) os << "exact " << formatExpr(*pf.exact) << "\n";
  return os.str();
}

bool dependsOnX(const Expr& e) {
  if (e.kind == Expr::Kind::Variable) return true;
  for (const auto& a : e.args)
    if (dependsOnX(a)) return true;
  return false;
}

double evalExprNumeric(const Expr& e, double x) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number:
      return e.value;
    case K::Variable:
      return x;
    case K::Euler:
      return std::numbers::e;
    case K::Negate:
      return -evalExprNumeric(e.args[0], x);
    case K::Add:
      return evalExprNumeric(e.args[0], x) + evalExprNumeric(e.args[1], x);
    case K::Sub:
      return evalExprNumeric(e.args[0], x) - evalExprNumeric(e.args[1], x);
    case K::Mul:
      return evalExprNumeric(e.args[0], x) * evalExprNumeric(e.args[1], x);
    case K::Div:
      return evalExprNumeric(e.args[0], x) / evalExprNumeric(e.args[1], x);
    case K::Pow: {
      const double b = evalExprNumeric(e.args[0], x);
      double r = 1.0;
      for (int k = 0; k < e.exponent; ++k) r *= b;
      return r;
    }
    case K::Exp:
      return std::exp(evalExprNumeric(e.args[0], x));
    case K::Sinh:
      return std::sinh(evalExprNumeric(e.args[0], x));
    case K::Cosh:
      return std::cosh(evalExprNumeric(e.args[0], x));
  }
  return 0.0;
}

TruncatedSeries seriesOf(const Expr& e, int cap) {
  using K = Expr::Kind;
  if (!dependsOnX(e)) return TruncatedSeries::constant(cap, UnknownPoly(evalExprNumeric(e)));
  switch (e.kind) {
    case K::Variable: {
      TruncatedSeries s(cap);
      if (cap >= 1) s[1] = UnknownPoly(1.0);
      return s;
    }
    case K::Negate:
      return -seriesOf(e.args[0], cap);
    case K::Add:
      return seriesOf(e.args[0], cap) + seriesOf(e.args[1], cap);
    case K::Sub:
      return seriesOf(e.args[0], cap) - seriesOf(e.args[1], cap);
    case K::Mul:
      return seriesOf(e.args[0], cap) * seriesOf(e.args[1], cap);
    case K::Div: {
      if (dependsOnX(e.args[1])) throw SemanticError("division by an expression containing x");
      const double d = evalExprNumeric(e.args[1]);
      if (d == 0.0) throw SemanticError("division by zero");
      return seriesOf(e.args[0], cap) * (1.0 / d);
    }
    case K::Pow: {
      const auto base = seriesOf(e.args[0], cap);
      auto r = TruncatedSeries::constant(cap, UnknownPoly(1.0));
      for (int k = 0; k < e.exponent; ++k) r = r * base;
      return r;
    }
    case K::Exp:
    case K::Sinh:
    case K::Cosh: {
      // f(a*x + b) expanded through the addition theorems.
      const auto arg = seriesOf(e.args[0], cap);
      if (arg.degree() > 1)
        throw SemanticError("argument of " + formatExpr(e) + " is not affine in x");
      const double b = arg[0].constantTerm();
      const double a = cap >= 1 ? arg[1].constantTerm() : 0.0;
      if (e.kind == K::Exp) return seed(KnownFn::exp(a), cap) * std::exp(b);
      const auto sh = seed(KnownFn::sinh(a), cap);
      const auto ch = seed(KnownFn::cosh(a), cap);
      if (e.kind == K::Sinh) return ch * std::sinh(b) + sh * std::cosh(b);
      return ch * std::cosh(b) + sh * std::sinh(b);
    }
    default:
      break;
  }
  throw SemanticError("cannot expand " + formatExpr(e) + " as a series");
}

Problem elaborate(const ProblemFile& pf, std::optional<int> capOverride) {
  if (!pf.order) throw SemanticError("missing 'order' statement");
  Problem p;
  p.name = pf.name;
  p.order = *pf.order;
  p.cap = capOverride.value_or(pf.cap.value_or(kDefaultCap));
  p.terms = pf.terms.value_or(kDefaultTerms);
  if (p.cap < 0) throw SemanticError("cap must be nonnegative");
  if (p.order < 1) throw SemanticError("order must be at least 1");

  p.forcing = pf.forcing ? seriesOf(*pf.forcing, p.cap) : TruncatedSeries(p.cap);
  for (const auto& l : pf.linear) p.linearTerms.push_back({seriesOf(l.coeff, p.cap), l.derivOrder});
  for (const auto& n : pf.nonlinear)
    p.nonlinearTerms.push_back({seriesOf(n.coeff, p.cap), n.power});

  std::map<int, const IcSpec*> byOrder;
  for (const auto& ic : pf.ics) {
    if (ic.derivOrder >= p.order)
      throw SemanticError("initial condition on D" + std::to_string(ic.derivOrder) +
                          " but order is " + std::to_string(p.order));
    if (!byOrder.emplace(ic.derivOrder, &ic).second)
      throw SemanticError("duplicate initial condition on D" + std::to_string(ic.derivOrder));
  }
  for (const auto& [d, ic] : byOrder) {
    if (const auto* sym = std::get_if<std::string>(&ic->value))
      p.unknowns.push_back({*sym, d});
    else
      p.knownICs[d] = numericOnly(std::get<Expr>(ic->value), "initial value");
  }

  for (const auto& bc : pf.bcs) {
    BoundaryCondition c;
    for (const auto& t : bc.terms) {
      BoundaryAtom a;
      a.weight = t.weight ? numericOnly(*t.weight, "boundary weight") : 1.0;
      if (t.negated) a.weight = -a.weight;
      a.derivOrder = t.derivOrder;
      a.point = numericOnly(t.point, "boundary point");
      c.atoms.push_back(a);
    }
    c.rhs = numericOnly(bc.rhs, "boundary right-hand side");
    p.closures.push_back(std::move(c));
  }

  p.guess = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(p.unknowns.size()));
  for (const auto& g : pf.guesses) {
    auto it = std::find_if(p.unknowns.begin(), p.unknowns.end(),
                           [&](const UnknownConstant& u) { return u.name == g.symbol; });
    if (it == p.unknowns.end()) throw SemanticError("guess for undeclared unknown " + g.symbol);
    p.guess(it - p.unknowns.begin()) = numericOnly(g.value, "guess");
  }

  validate(p);
  return p;
}

}  // namespace hpmbvp
