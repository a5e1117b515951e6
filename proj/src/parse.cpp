#include "arithdyn/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  bool accept(const std::string& sym) {
    if (cur_.kind == Tok::Symbol && cur_.text == sym) {
      advance();
      return true;
    }
    return false;
  }

  void expect(const std::string& sym) {
    if (!accept(sym)) fail("expected '" + sym + "'" + found());
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.col); }

  std::string found() const {
    if (cur_.kind == Tok::End) return " but reached the end of input";
    return " but found '" + cur_.text + "'";
  }

 private:
  void bump() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void advance() {
    while (i_ < s_.size()) {
      if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        bump();
      } else {
        break;
      }
    }
    cur_ = Token{};
    cur_.line = line_;
    cur_.col = col_;
    if (i_ >= s_.size()) return;
    unsigned char c = static_cast<unsigned char>(s_[i_]);
    if (std::isalpha(c) || c == '_') {
      cur_.kind = Tok::Ident;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
        cur_.text += s_[i_];
        bump();
      }
    } else if (std::isdigit(c)) {
      cur_.kind = Tok::Number;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        cur_.text += s_[i_];
        bump();
      }
    } else if (std::string("+-*/^(),;:[]").find(static_cast<char>(c)) != std::string::npos) {
      cur_.kind = Tok::Symbol;
      cur_.text = std::string(1, static_cast<char>(c));
      bump();
    } else {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", line_, col_);
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
};

class ExprParser {
 public:
  ExprParser(Lexer& lx, const std::vector<std::string>& vars) : lx_(lx), vars_(vars) {}

  MultiPoly expr() {
    MultiPoly acc = term();
    while (true) {
      if (lx_.accept("+")) acc += term();
      else if (lx_.accept("-")) acc -= term();
      else return acc;
    }
  }

 private:
  MultiPoly term() {
    MultiPoly acc = unary();
    while (true) {
      if (lx_.accept("*")) {
        acc = acc * unary();
      } else if (lx_.peek().kind == Tok::Symbol && lx_.peek().text == "/") {
        Token at = lx_.take();
        MultiPoly den = unary();
        if (!den.is_constant() || den.is_zero())
          throw ParseError("division is only allowed by a nonzero constant", at.line, at.col);
        acc = acc * MultiPoly::constant(vars_, Rational(1) / den.coefficient(Monomial()));
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (lx_.accept("-")) return MultiPoly::constant(vars_, -1) * unary();
    if (lx_.accept("+")) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (lx_.accept("^")) {
      if (lx_.peek().kind != Tok::Number) lx_.fail("expected a nonnegative integer exponent" + lx_.found());
      Token t = lx_.take();
      if (t.text.size() > 4) throw ParseError("exponent too large", t.line, t.col);
      return base.pow(static_cast<unsigned>(std::stoul(t.text)));
    }
    return base;
  }

  MultiPoly atom() {
    const Token& t = lx_.peek();
    if (t.kind == Tok::Number) return MultiPoly::constant(vars_, Rational(Integer(lx_.take().text)));
    if (t.kind == Tok::Ident) {
      auto it = std::find(vars_.begin(), vars_.end(), t.text);
      if (it == vars_.end()) lx_.fail("unknown variable '" + t.text + "'");
      lx_.take();
      return MultiPoly::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
    }
    if (lx_.accept("(")) {
      MultiPoly e = expr();
      lx_.expect(")");
      return e;
    }
    lx_.fail("expected a number, variable or '('" + lx_.found());
  }

  Lexer& lx_;
  const std::vector<std::string>& vars_;
};

// Splits off a leading "label: ..." line, blanking it so positions survive.
std::string take_label(const std::string& text, std::optional<std::string>& label) {
  std::string out = text;
  std::size_t pos = 0;
  while (pos < out.size()) {
    std::size_t eol = out.find('\n', pos);
    if (eol == std::string::npos) eol = out.size();
    std::string line = out.substr(pos, eol - pos);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') {
      pos = eol + 1;
      continue;
    }
    if (line.compare(a, 6, "label:") == 0) {
      std::string v = line.substr(a + 6);
      std::size_t hash = v.find('#');
      if (hash != std::string::npos) v = v.substr(0, hash);
      v.erase(0, v.find_first_not_of(" \t"));
      v.erase(v.find_last_not_of(" \t\r") + 1);
      label = v;
      std::fill(out.begin() + static_cast<long>(pos), out.begin() + static_cast<long>(eol), ' ');
    }
    break;
  }
  return out;
}

Rational signed_literal(Lexer& lx) {
  bool neg = false;
  while (true) {
    if (lx.accept("-")) neg = !neg;
    else if (!lx.accept("+")) break;
  }
  if (lx.peek().kind != Tok::Number) lx.fail("expected a number" + lx.found());
  Rational q(Integer(lx.take().text));
  if (lx.accept("/")) {
    if (lx.peek().kind != Tok::Number) lx.fail("expected a denominator" + lx.found());
    Token t = lx.take();
    Integer den(t.text);
    if (den == 0) throw ParseError("zero denominator", t.line, t.col);
    q /= den;
  }
  return neg ? Rational(-q) : q;
}

std::string hom_name(const std::vector<std::string>& vars) {
  std::string w = "W";
  for (int i = 1; std::find(vars.begin(), vars.end(), w) != vars.end(); ++i) w = "W" + std::to_string(i);
  return w;
}

}  // namespace

MapDefinition parse_map(const std::string& text) {
  MapDefinition def;
  std::string body = take_label(text, def.label);
  Lexer lx(body);
  if (lx.peek().kind != Tok::Ident) lx.fail("expected an ambient space (P1, P2, PN:n, A2, AN:n)" + lx.found());
  Token amb = lx.take();
  if (amb.text == "P1" || amb.text == "P2") {
    def.projective = true;
    def.dim = static_cast<std::size_t>(amb.text[1] - '0');
  } else if (amb.text == "A2") {
    def.projective = false;
    def.dim = 2;
  } else if (amb.text == "PN" || amb.text == "AN") {
    def.projective = amb.text == "PN";
    lx.expect(":");
    if (lx.peek().kind != Tok::Number) lx.fail("expected the dimension" + lx.found());
    Token n = lx.take();
    if (n.text.size() > 3 || std::stoul(n.text) == 0) throw ParseError("dimension out of range", n.line, n.col);
    def.dim = std::stoul(n.text);
  } else {
    throw ParseError("unknown ambient space '" + amb.text + "'", amb.line, amb.col);
  }
  if (def.projective)
    def.ambient = def.dim <= 2 ? "P" + std::to_string(def.dim) : "PN:" + std::to_string(def.dim);
  else
    def.ambient = def.dim == 2 ? "A2" : "AN:" + std::to_string(def.dim);
  lx.expect(";");
  std::set<std::string> seen;
  do {
    if (lx.peek().kind != Tok::Ident) lx.fail("expected a variable name" + lx.found());
    Token v = lx.take();
    if (!seen.insert(v.text).second) throw ParseError("duplicate variable '" + v.text + "'", v.line, v.col);
    def.variables.push_back(v.text);
  } while (lx.accept(","));
  std::size_t want = def.projective ? def.dim + 1 : def.dim;
  if (def.variables.size() != want)
    lx.fail(def.ambient + " needs " + std::to_string(want) + " variables, got " + std::to_string(def.variables.size()));
  lx.expect(";");
  ExprParser ep(lx, def.variables);
  std::vector<std::pair<int, int>> where;
  do {
    where.emplace_back(lx.peek().line, lx.peek().col);
    def.polys.push_back(ep.expr());
  } while (lx.accept(","));
  lx.accept(";");
  if (lx.peek().kind != Tok::End) lx.fail("unexpected input after the last component");
  if (def.polys.size() != want)
    lx.fail(def.ambient + " needs " + std::to_string(want) + " components, got " + std::to_string(def.polys.size()));
  if (def.projective) {
    int d = -1;
    for (std::size_t i = 0; i < def.polys.size(); ++i) {
      const auto& p = def.polys[i];
      if (p.is_zero()) continue;
      if (!p.is_homogeneous())
        throw ParseError("inhomogeneous projective component", where[i].first, where[i].second);
      if (d < 0) d = p.degree();
      else if (p.degree() != d)
        throw ParseError("component degree " + std::to_string(p.degree()) + " differs from " + std::to_string(d),
                         where[i].first, where[i].second);
    }
  }
  for (const auto& p : def.polys) def.components.push_back(p.to_string());
  try {
    def.map = def.projective ? SelfMap::projective(def.polys) : SelfMap::affine(def.polys, hom_name(def.variables));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), where[0].first, where[0].second);
  }
  return def;
}

std::string print_map(const MapDefinition& def) {
  std::ostringstream os;
  if (def.label) os << "label: " << *def.label << '\n';
  os << def.ambient << "; ";
  for (std::size_t i = 0; i < def.variables.size(); ++i) os << (i ? ", " : "") << def.variables[i];
  os << "; ";
  for (std::size_t i = 0; i < def.components.size(); ++i) os << (i ? ", " : "") << def.components[i];
  os << '\n';
  return os.str();
}

MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
  Lexer lx(text);
  ExprParser ep(lx, vars);
  MultiPoly p = ep.expr();
  if (lx.peek().kind != Tok::End) lx.fail("unexpected input after the polynomial");
  return p;
}

std::vector<MultiPoly> parse_polynomial_list(const std::string& text, const std::vector<std::string>& vars) {
  std::vector<MultiPoly> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::size_t hash = line.find('#');
    std::string body = hash == std::string::npos ? line : line.substr(0, hash);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_polynomial(body, vars));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), n, e.column());
    }
  }
  return out;
}

CurveDefinition parse_curve(const std::string& text) {
  CurveDefinition def;
  std::string body = take_label(text, def.label);
  Lexer lx(body);
  if (lx.peek().kind != Tok::Ident || lx.peek().text != "E") lx.fail("expected 'E'" + lx.found());
  lx.take();
  lx.expect(";");
  def.a = signed_literal(lx);
  lx.expect(",");
  def.b = signed_literal(lx);
  lx.accept(";");
  if (lx.peek().kind != Tok::End) lx.fail("unexpected input after the coefficients");
  return def;
}

std::string print_curve(const CurveDefinition& def) {
  std::string out;
  if (def.label) out += "label: " + *def.label + "\n";
  return out + "E; " + def.a.get_str() + ", " + def.b.get_str() + "\n";
}

ProjPoint parse_proj_point(const std::string& text) {
  Lexer lx(text);
  lx.expect("[");
  std::vector<Rational> c;
  do c.push_back(signed_literal(lx));
  while (lx.accept(":"));
  lx.expect("]");
  if (lx.peek().kind != Tok::End) lx.fail("unexpected input after the point");
  if (c.size() < 2) throw ParseError("a projective point needs at least two coordinates", 1, 1);
  try {
    return ProjPoint::from_rationals(c);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

AffPoint parse_aff_point(const std::string& text) {
  Lexer lx(text);
  lx.expect("(");
  std::vector<Rational> c;
  do c.push_back(signed_literal(lx));
  while (lx.accept(","));
  lx.expect(")");
  if (lx.peek().kind != Tok::End) lx.fail("unexpected input after the point");
  return AffPoint(std::move(c));
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  Lexer lx(text);
  std::vector<Rational> c;
  if (lx.peek().kind == Tok::End) return c;
  do c.push_back(signed_literal(lx));
  while (lx.accept(","));
  if (lx.peek().kind != Tok::End) lx.fail("unexpected input in the list");
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace arithdyn
