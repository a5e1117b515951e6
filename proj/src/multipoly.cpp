#include "arithdyn/multipoly.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "arithdyn/errors.hpp"
#include "arithdyn/linear.hpp"

namespace arithdyn {

namespace {

constexpr unsigned kMaxExponent = std::numeric_limits<std::uint16_t>::max();

void require_same_vars(const MultiPoly& a, const MultiPoly& b, const char* where) {
  if (a.variables() != b.variables())
    throw InvalidArgument(std::string(where) + ": polynomials over different variable sets");
}

}  // namespace

Monomial::Monomial(std::initializer_list<unsigned> exps) {
  if (exps.size() > kMaxVars) throw InvalidArgument("too many variables");
  std::size_t i = 0;
  for (unsigned e : exps) set(i++, e);
}

void Monomial::set(std::size_t i, unsigned value) {
  if (i >= kMaxVars) throw InvalidArgument("variable index out of range");
  if (value > kMaxExponent) throw ResourceLimit("exponent overflow");
  e_[i] = static_cast<std::uint16_t>(value);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : e_) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.set(i, unsigned(a.e_[i]) + b.e_[i]);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : e_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

MultiPoly::MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {
  if (vars_.size() > kMaxVars) throw InvalidArgument("at most 8 variables are supported");
}

MultiPoly MultiPoly::constant(std::vector<std::string> variables, const Rational& c) {
  MultiPoly p(std::move(variables));
  p.add_term(Monomial(), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables, std::size_t index) {
  MultiPoly p(std::move(variables));
  if (index >= p.nvars()) throw InvalidArgument("variable index out of range");
  Monomial m;
  m.set(index, 1);
  p.add_term(m, 1);
  return p;
}

MultiPoly MultiPoly::term(std::vector<std::string> variables, const Monomial& m, const Rational& c) {
  MultiPoly p(std::move(variables));
  p.add_term(m, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial());
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return false;
  return true;
}

bool MultiPoly::is_integral() const {
  for (const auto& [m, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

int MultiPoly::low_degree() const {
  if (terms_.empty()) return -1;
  int d = std::numeric_limits<int>::max();
  for (const auto& [m, c] : terms_) d = std::min(d, static_cast<int>(m.degree()));
  return d;
}

Rational MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& MultiPoly::leading_monomial() const {
  if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
  return terms_.begin()->first;
}

const Rational& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
  return terms_.begin()->second;
}

MultiPoly MultiPoly::homogeneous_part(int d) const {
  MultiPoly r(vars_);
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.degree()) == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  for (std::size_t i = vars_.size(); i < kMaxVars; ++i)
    if (m[i] != 0) throw InvalidArgument("monomial uses a variable outside the polynomial's set");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_same_vars(*this, o, "add");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_same_vars(*this, o, "subtract");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Integer MultiPoly::denominator_lcm() const {
  Integer l = 1;
  for (const auto& [m, c] : terms_) l = lcm(l, c.get_den());
  return l;
}

Integer MultiPoly::numerator_content() const {
  Integer g = 0;
  Integer l = denominator_lcm();
  for (const auto& [m, c] : terms_) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  return g;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_vars(a, b, "multiply");
  MultiPoly r(a.variables());
  if (a.is_zero() || b.is_zero()) return r;
  // Scale both sides to integer coefficients and accumulate with mpz_addmul,
  // which avoids rational canonicalization in the inner loop.
  Integer la = a.denominator_lcm(), lb = b.denominator_lcm();
  std::vector<std::pair<Monomial, Integer>> ta, tb;
  ta.reserve(a.size());
  tb.reserve(b.size());
  for (const auto& [m, c] : a.terms()) ta.emplace_back(m, c.get_num() * (la / c.get_den()));
  for (const auto& [m, c] : b.terms()) tb.emplace_back(m, c.get_num() * (lb / c.get_den()));
  std::unordered_map<Monomial, Integer, MonomialHash> acc;
  acc.reserve(ta.size() * 2 + tb.size() * 2);
  for (const auto& [ma, ca] : ta) {
    for (const auto& [mb, cb] : tb) {
      Integer& slot = acc[ma * mb];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  Integer den = la * lb;
  for (auto& [m, c] : acc) {
    if (c == 0) continue;
    Rational q(c, den);
    q.canonicalize();
    r.terms_.emplace(m, std::move(q));
  }
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(vars_, 1);
  MultiPoly base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial m2 = m;
    m2.set(var, m[var] - 1);
    r.add_term(m2, c * m[var]);
  }
  return r;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_.size()) throw InvalidArgument("evaluate: wrong number of coordinates");
  // Power tables per variable, filled on demand.
  std::vector<std::vector<Rational>> pw(vars_.size());
  auto power = [&](std::size_t i, unsigned e) -> const Rational& {
    auto& t = pw[i];
    if (t.empty()) t.push_back(1);
    while (t.size() <= e) t.push_back(t.back() * point[i]);
    return t[e];
  };
  Rational s = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (m[i]) t *= power(i, m[i]);
    s += t;
  }
  return s;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> values) const {
  if (values.size() != vars_.size()) throw InvalidArgument("substitute: wrong number of values");
  if (values.empty()) return *this;
  const auto& target = values[0].variables();
  for (const auto& v : values)
    if (v.variables() != target) throw InvalidArgument("substitute: values over different variable sets");
  std::vector<std::vector<MultiPoly>> pw(vars_.size());
  auto power = [&](std::size_t i, unsigned e) -> const MultiPoly& {
    auto& t = pw[i];
    if (t.empty()) t.push_back(constant(target, 1));
    while (t.size() <= e) t.push_back(t.back() * values[i]);
    return t[e];
  };
  MultiPoly r(target);
  for (const auto& [m, c] : terms_) {
    MultiPoly t = constant(target, c);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (m[i]) t = t * power(i, m[i]);
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::rename(std::vector<std::string> variables, std::span<const std::size_t> mapping) const {
  if (mapping.size() != vars_.size()) throw InvalidArgument("rename: mapping size mismatch");
  MultiPoly r(std::move(variables));
  for (std::size_t i = 0; i < mapping.size(); ++i)
    if (mapping[i] >= r.nvars()) throw InvalidArgument("rename: index out of range");
  for (const auto& [m, c] : terms_) {
    Monomial m2;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (m[i]) m2.set(mapping[i], m2[mapping[i]] + m[i]);
    r.add_term(m2, c);
  }
  return r;
}

MultiPoly MultiPoly::normalized() const {
  if (is_zero()) return *this;
  Integer l = denominator_lcm();
  Integer g = numerator_content();
  Rational scale(l, g);
  scale.canonicalize();
  if (leading_coefficient() < 0) scale = -scale;
  return *this * scale;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    bool wrote = false;
    if (!unit || m == Monomial()) {
      os << a.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!m[i]) continue;
      if (wrote) os << '*';
      os << vars_[i];
      if (m[i] > 1) os << '^' << m[i];
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  require_same_vars(a, b, "divide");
  if (b.is_zero()) throw InvalidArgument("division by the zero polynomial");
  MultiPoly q(a.variables());
  MultiPoly r = a;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  if (b.size() == 1) {
    for (const auto& [m, c] : a.terms()) {
      if (!lb.divides(m)) return std::nullopt;
      q.add_term(m / lb, c / cb);
    }
    return q;
  }
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    MultiPoly t = MultiPoly::term(a.variables(), lr / lb, r.leading_coefficient() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

// Coefficients of f viewed as a polynomial in `var`, keyed by exponent.
std::map<unsigned, MultiPoly> coefficients_in(const MultiPoly& f, std::size_t var) {
  std::map<unsigned, MultiPoly> out;
  for (const auto& [m, c] : f.terms()) {
    Monomial m2 = m;
    m2.set(var, 0);
    auto it = out.try_emplace(m[var], f.variables()).first;
    it->second.add_term(m2, c);
  }
  return out;
}

MultiPoly times_var_power(const MultiPoly& f, std::size_t var, unsigned e) {
  if (e == 0) return f;
  Monomial m;
  m.set(var, e);
  return f * MultiPoly::term(f.variables(), m, 1);
}

// Integer content removed, sign left alone.
MultiPoly primitive_integral(const MultiPoly& f) {
  if (f.is_zero()) return f;
  Rational scale(f.denominator_lcm(), f.numerator_content());
  scale.canonicalize();
  return f * scale;
}

MultiPoly gcd_rec(const MultiPoly& f, const MultiPoly& g);

// gcd of the coefficients of f with respect to var.
MultiPoly content_in(const MultiPoly& f, std::size_t var) {
  auto coeffs = coefficients_in(f, var);
  MultiPoly c(f.variables());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    c = c.is_zero() ? primitive_integral(it->second) : gcd_rec(c, it->second);
    if (c.is_constant()) return MultiPoly::constant(f.variables(), 1);
  }
  return c;
}

MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, std::size_t var) {
  int db = b.degree_in(var);
  auto bc = coefficients_in(b, var);
  const MultiPoly& lb = bc.rbegin()->second;
  while (!a.is_zero()) {
    int da = a.degree_in(var);
    if (da < db) break;
    auto ac = coefficients_in(a, var);
    const MultiPoly& la = ac.rbegin()->second;
    a = lb * a - times_var_power(la, var, static_cast<unsigned>(da - db)) * b;
    a = primitive_integral(a);
  }
  return a;
}

MultiPoly gcd_rec(const MultiPoly& f, const MultiPoly& g) {
  const auto& vars = f.variables();
  if (f.is_zero()) return primitive_integral(g);
  if (g.is_zero()) return primitive_integral(f);
  if (f.is_constant() || g.is_constant()) return MultiPoly::constant(vars, 1);
  if (f.size() == 1 && g.size() == 1) {
    Monomial m;
    const Monomial& a = f.leading_monomial();
    const Monomial& b = g.leading_monomial();
    for (std::size_t i = 0; i < vars.size(); ++i) m.set(i, std::min(a[i], b[i]));
    return MultiPoly::term(vars, m, 1);
  }
  std::size_t var = vars.size();
  for (std::size_t i = 0; i < vars.size() && var == vars.size(); ++i)
    if (f.degree_in(i) > 0 || g.degree_in(i) > 0) var = i;
  MultiPoly cf = content_in(f, var);
  MultiPoly cg = content_in(g, var);
  MultiPoly c = gcd_rec(cf, cg);
  MultiPoly a = *divide_exact(primitive_integral(f), cf);
  MultiPoly b = *divide_exact(primitive_integral(g), cg);
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  while (!b.is_zero() && b.degree_in(var) > 0) {
    MultiPoly r = pseudo_remainder(a, b, var);
    a = std::move(b);
    if (r.is_zero()) {
      b = r;
      break;
    }
    MultiPoly cr = content_in(r, var);
    b = *divide_exact(primitive_integral(r), cr);
  }
  // b nonzero of degree 0 in var means the primitive parts are coprime.
  if (!b.is_zero()) return c;
  MultiPoly pa = *divide_exact(primitive_integral(a), content_in(a, var));
  return primitive_integral(c * pa);
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g) {
  require_same_vars(f, g, "gcd");
  if (f.is_zero() && g.is_zero()) throw InvalidArgument("gcd of two zero polynomials");
  return gcd_rec(f, g).normalized();
}

MultiPoly homogenize(const MultiPoly& f, const std::string& new_var, int degree) {
  std::vector<std::string> vars = f.variables();
  vars.push_back(new_var);
  MultiPoly r(vars);
  int d = degree < 0 ? f.degree() : degree;
  if (d < f.degree()) throw InvalidArgument("homogenize: degree below the polynomial's degree");
  std::size_t z = vars.size() - 1;
  for (const auto& [m, c] : f.terms()) {
    Monomial m2 = m;
    m2.set(z, static_cast<unsigned>(d) - m.degree());
    r.add_term(m2, c);
  }
  return r;
}

MultiPoly dehomogenize(const MultiPoly& f, std::size_t var) {
  if (var >= f.nvars()) throw InvalidArgument("dehomogenize: index out of range");
  std::vector<std::string> vars = f.variables();
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(var));
  MultiPoly r(vars);
  for (const auto& [m, c] : f.terms()) {
    Monomial m2;
    std::size_t k = 0;
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (i != var) m2.set(k++, m[i]);
    r.add_term(m2, c);
  }
  return r;
}

std::vector<Rational> univariate_coefficients(const MultiPoly& f, std::size_t var) {
  std::vector<Rational> out;
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (i != var && m[i]) throw InvalidArgument("polynomial is not univariate in " + f.variables()[var]);
    if (out.size() <= m[var]) out.resize(m[var] + 1);
    out[m[var]] = c;
  }
  return out;
}

MultiPoly from_univariate(const std::vector<Rational>& coeffs, const std::string& var) {
  MultiPoly r({var});
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m;
    m.set(0, static_cast<unsigned>(i));
    r.add_term(m, coeffs[i]);
  }
  return r;
}

namespace {

void trim(std::vector<Rational>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational sylvester_resultant(std::vector<Rational> f, std::vector<Rational> g) {
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  std::size_t m = f.size() - 1, n = g.size() - 1;
  if (m == 0) return pow(f[0], static_cast<long>(n));
  if (n == 0) return pow(g[0], static_cast<long>(m));
  std::size_t size = m + n;
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g[n - k];
  return determinant(s);
}

}  // namespace

Rational resultant(const MultiPoly& f, const MultiPoly& g) {
  require_same_vars(f, g, "resultant");
  if (f.nvars() != 1) throw InvalidArgument("resultant: expected univariate polynomials");
  return sylvester_resultant(univariate_coefficients(f), univariate_coefficients(g));
}

MultiPoly resultant_in(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
  require_same_vars(f, g, "resultant");
  if (f.nvars() != 2 || var > 1) throw InvalidArgument("resultant_in: expected bivariate polynomials");
  std::size_t other = 1 - var;
  std::string zname = f.variables()[other];
  MultiPoly zero({zname});
  if (f.is_zero() || g.is_zero()) return zero;
  int df = f.degree_in(var), dg = g.degree_in(var);
  int bound = df * std::max(0, g.degree_in(other)) + dg * std::max(0, f.degree_in(other));
  auto lf = coefficients_in(f, var).rbegin()->second;
  auto lg = coefficients_in(g, var).rbegin()->second;
  // Evaluate at integer points where both leading coefficients survive and
  // interpolate (Newton form).
  std::vector<Rational> xs, ys;
  std::vector<Rational> point(2);
  for (long z = 0; static_cast<int>(xs.size()) <= bound; ++z) {
    point[other] = z;
    point[var] = 0;
    auto spec = [&](const MultiPoly& p) {
      std::vector<Rational> c(static_cast<std::size_t>(p.degree_in(var)) + 1);
      for (const auto& [m, v] : p.terms()) c[m[var]] += v * pow(Rational(z), static_cast<long>(m[other]));
      return c;
    };
    if (lf.evaluate(point) == 0 || lg.evaluate(point) == 0) continue;
    xs.push_back(z);
    ys.push_back(sylvester_resultant(spec(f), spec(g)));
  }
  std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<Rational> poly{dd[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    // poly = poly * (z - xs[k]) + dd[k]
    std::vector<Rational> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * xs[k];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  return from_univariate(poly, zname);
}

}  // namespace arithdyn
