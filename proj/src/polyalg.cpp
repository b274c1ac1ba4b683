#include "tcsm/polyalg.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tcsm/errors.hpp"

namespace tcsm {

// ---------------------------------------------------------------- Coeff

Coeff& Coeff::operator+=(const Coeff& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

Coeff& Coeff::operator*=(const Rational& s) {
  a_ *= s;
  b_ *= s;
  return *this;
}

Coeff operator*(const Coeff& x, const Coeff& y) {
  if (x.has_beta() && y.has_beta())
    throw CoefficientOverflow("product of two beta-dependent coefficients (beta^2 term)");
  return Coeff(x.a_ * y.a_, x.a_ * y.b_ + x.b_ * y.a_);
}

std::string Coeff::to_string() const {
  std::string s = a_.get_str();
  s += sgn(b_) < 0 ? '-' : '+';
  s += Rational(abs(b_)).get_str();
  s += "*B";
  return s;
}

namespace {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  Rational q;
  if (q.set_str(std::string(text), 10) != 0)
    throw std::invalid_argument("malformed rational: " + std::string(text));
  q.canonicalize();
  return q;
}

}  // namespace

Coeff Coeff::parse(std::string_view text) {
  if (text.size() < 3 || text.substr(text.size() - 2) != "*B") return Coeff(parse_rational(text));
  text.remove_suffix(2);
  const auto split = text.find_last_of("+-");
  if (split == std::string_view::npos || split == 0)
    throw std::invalid_argument("coefficient lacks a beta part: " + std::string(text));
  Rational a = parse_rational(text.substr(0, split));
  Rational b = parse_rational(text.substr(split + 1));
  if (text[split] == '-') b = -b;
  return Coeff(std::move(a), std::move(b));
}

// ---------------------------------------------------------------- Exponent

bool GradedLex::operator()(const Exponent& x, const Exponent& y) const {
  const int dx = total_degree(x);
  const int dy = total_degree(y);
  if (dx != dy) return dx < dy;
  return x < y;
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::constant(int n_vars, const Coeff& c) {
  LaurentPoly p(n_vars);
  p.add_term(Exponent(static_cast<std::size_t>(n_vars), 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(Exponent e, const Coeff& c) {
  LaurentPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int n_vars, int j) {
  Exponent e(static_cast<std::size_t>(n_vars), 0);
  e.at(static_cast<std::size_t>(j)) = 1;
  return monomial(std::move(e));
}

Coeff LaurentPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Coeff() : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const Coeff& c) {
  if (static_cast<int>(e.size()) != n_)
    throw std::invalid_argument("exponent length does not match variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<int> LaurentPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  // graded order puts the lowest and highest degrees at the ends
  const int lo = total_degree(terms_.begin()->first);
  const int hi = total_degree(terms_.rbegin()->first);
  if (lo != hi) return std::nullopt;
  return lo;
}

bool LaurentPoly::has_beta() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.has_beta(); });
}

LaurentPoly LaurentPoly::substitute_beta(const Rational& beta) const {
  LaurentPoly out(n_);
  for (const auto& [e, c] : terms_) out.add_term(e, Coeff(c.eval(beta)));
  return out;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly out(n_);
  for (const auto& [e, c] : terms_) {
    Exponent f(e.size());
    std::transform(e.begin(), e.end(), f.begin(), [](int x) { return -x; });
    out.add_term(f, c);
  }
  return out;
}

LaurentPoly LaurentPoly::boosted(int q) const {
  LaurentPoly out(n_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    for (int& x : f) x += q;
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

void LaurentPoly::check_compatible(const LaurentPoly& o) const {
  if (n_ != o.n_) throw std::invalid_argument("polynomials over different variable counts");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Coeff& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  TermMap scaled;
  for (auto& [e, t] : terms_) {
    Coeff v = t * c;
    if (!v.is_zero()) scaled.emplace(e, std::move(v));
  }
  terms_ = std::move(scaled);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
  x.check_compatible(y);
  LaurentPoly out(x.n_);
  Exponent e(static_cast<std::size_t>(x.n_));
  for (const auto& [ex, cx] : x.terms_)
    for (const auto& [ey, cy] : y.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ex[i] + ey[i];
      out.add_term(e, cx * cy);
    }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.to_string() << ")[";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ']';
  }
  return os.str();
}

LaurentPoly LaurentPoly::parse(std::string_view text, int n_vars_if_zero) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "0") return LaurentPoly(n_vars_if_zero);

  std::vector<std::pair<Exponent, Coeff>> parsed;
  while (!text.empty()) {
    if (text.front() != '(') throw std::invalid_argument("term must start with '('");
    const auto close = text.find(')');
    const auto open_br = text.find('[', close);
    const auto close_br = text.find(']', open_br);
    if (close == std::string_view::npos || open_br != close + 1 ||
        close_br == std::string_view::npos)
      throw std::invalid_argument("malformed polynomial term");
    Coeff c = Coeff::parse(text.substr(1, close - 1));
    Exponent e;
    std::string_view list = text.substr(open_br + 1, close_br - open_br - 1);
    while (!list.empty()) {
      const auto comma = list.find(',');
      std::string_view item = list.substr(0, comma);
      int v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size())
        throw std::invalid_argument("malformed exponent entry");
      e.push_back(v);
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    parsed.emplace_back(std::move(e), std::move(c));
    text = trim(text.substr(close_br + 1));
    if (!text.empty()) {
      if (text.front() != '+') throw std::invalid_argument("terms must be joined by ' + '");
      text = trim(text.substr(1));
    }
  }
  LaurentPoly p(static_cast<int>(parsed.front().first.size()));
  for (const auto& [e, c] : parsed) p.add_term(e, c);
  return p;
}

// ---------------------------------------------------------------- operators

LaurentPoly apply_D(int j, const LaurentPoly& p) {
  LaurentPoly out(p.n_vars());
  for (const auto& [e, c] : p.terms()) {
    const int ej = e.at(static_cast<std::size_t>(j));
    if (ej != 0) out.add_term(e, c * Rational(ej));
  }
  return out;
}

LaurentPoly exact_divide(const LaurentPoly& p, int a, int b) {
  const int n = p.n_vars();
  if (a == b || a < 0 || b < 0 || a >= n || b >= n)
    throw std::invalid_argument("exact_divide needs two distinct variable indices");
  const auto ua = static_cast<std::size_t>(a);
  const auto ub = static_cast<std::size_t>(b);

  // Group by the exponents of the other variables plus s = e_a + e_b; each
  // group is a binary form in (z_a, z_b) divided independently.
  std::map<Exponent, std::map<int, Coeff>> groups;
  for (const auto& [e, c] : p.terms()) {
    Exponent key = e;
    key[ua] = e[ua] + e[ub];
    key[ub] = 0;
    groups[key].emplace(e[ua], c);
  }

  LaurentPoly quotient(n);
  LaurentPoly remainder(n);
  for (const auto& [key, row] : groups) {
    const int s = key[ua];
    const int lo = row.begin()->first;
    const int hi = row.rbegin()->first;
    Coeff running;
    Exponent e = key;
    for (int i = lo; i < hi; ++i) {
      auto it = row.find(i);
      if (it != row.end()) running -= it->second;
      e[ua] = i;
      e[ub] = s - 1 - i;
      quotient.add_term(e, running);
    }
    running -= row.rbegin()->second;
    if (!running.is_zero()) {
      e[ua] = 0;
      e[ub] = s;
      remainder.add_term(e, -running);
    }
  }
  if (!remainder.is_zero())
    throw NonDivisible("polynomial is not divisible by (z_" + std::to_string(a + 1) +
                           " - z_" + std::to_string(b + 1) + ")",
                       remainder.to_string());
  return quotient;
}

LaurentPoly elementary_symmetric(int k, int n) {
  if (n < 0 || k < 0 || k > n) throw DomainError("elementary_symmetric needs 0 <= k <= N");
  LaurentPoly out(n);
  std::vector<int> mask(static_cast<std::size_t>(n), 0);
  std::fill(mask.end() - k, mask.end(), 1);
  do {
    out.add_term(mask, Coeff(1));
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

LaurentPoly power_sum(int k, int n) {
  LaurentPoly out(n);
  for (int j = 0; j < n; ++j) {
    Exponent e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = k;
    out.add_term(e, Coeff(1));
  }
  return out;
}

namespace {

void partitions_rec(int remaining, int max_part, int parts_left, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  if (parts_left == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, parts_left - 1, cur, out);
    cur.pop_back();
  }
}

void compositions_rec(int remaining, std::size_t pos, Exponent& cur,
                      std::vector<Exponent>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    compositions_rec(remaining - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<std::vector<int>> partitions(int d, int max_parts) {
  std::vector<std::vector<int>> out;
  if (d < 0 || max_parts < 0) return out;
  std::vector<int> cur;
  partitions_rec(d, d, max_parts, cur, out);
  return out;
}

std::string to_string(BasisKind kind) {
  return kind == BasisKind::Symmetric ? "symmetric" : "cyclic";
}

Exponent canonical_representative(BasisKind kind, const Exponent& e) {
  Exponent best = e;
  if (kind == BasisKind::Symmetric) {
    std::sort(best.begin(), best.end(), std::greater<>());
    return best;
  }
  Exponent rot = e;
  for (std::size_t s = 1; s < e.size(); ++s) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot > best) best = rot;
  }
  return best;
}

std::vector<Exponent> orbit(BasisKind kind, const Exponent& e) {
  std::set<Exponent, GradedLex> members;
  if (kind == BasisKind::Symmetric) {
    Exponent p = e;
    std::sort(p.begin(), p.end());
    do {
      members.insert(p);
    } while (std::next_permutation(p.begin(), p.end()));
  } else {
    Exponent rot = e;
    for (std::size_t s = 0; s < e.size(); ++s) {
      members.insert(rot);
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
  }
  return {members.begin(), members.end()};
}

std::optional<std::size_t> BasisSet::locate(const Exponent& e) const {
  if (static_cast<int>(e.size()) != n || total_degree(e) != degree) return std::nullopt;
  if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) return std::nullopt;
  auto it = index.find(canonical_representative(kind, e));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

BasisSet basis(BasisKind kind, int n, int d) {
  if (n < 1 || d < 0) throw DomainError("basis needs N >= 1 and d >= 0");
  BasisSet set;
  set.kind = kind;
  set.n = n;
  set.degree = d;

  if (kind == BasisKind::Symmetric) {
    for (const auto& part : partitions(d, n)) {
      Exponent e(static_cast<std::size_t>(n), 0);
      std::copy(part.begin(), part.end(), e.begin());
      set.representatives.push_back(std::move(e));
    }
  } else {
    std::vector<Exponent> all;
    Exponent cur(static_cast<std::size_t>(n), 0);
    compositions_rec(d, 0, cur, all);
    for (auto& e : all)
      if (canonical_representative(kind, e) == e) set.representatives.push_back(std::move(e));
  }

  for (std::size_t i = 0; i < set.representatives.size(); ++i) {
    const auto& rep = set.representatives[i];
    LaurentPoly element(n);
    for (const auto& m : orbit(kind, rep)) element.add_term(m, Coeff(1));
    set.elements.push_back(std::move(element));
    set.index.emplace(rep, i);
  }
  return set;
}

Projection project(const LaurentPoly& p, const BasisSet& basis) {
  Projection out;
  out.coords.assign(basis.size(), Coeff());
  for (std::size_t i = 0; i < basis.size(); ++i)
    out.coords[i] = p.coefficient(basis.representatives[i]);
  out.residual = p;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!out.coords[i].is_zero()) out.residual -= basis.elements[i] * out.coords[i];
  return out;
}

}  // namespace tcsm
