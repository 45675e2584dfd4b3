#pragma once

/**
 * @file funcspec.hpp
 * @brief Text specs for functions, arcs and path schedules.
 *
 *   rat:<expr>                       rational function of x, e.g. rat:(x^2+1)/(x-3)
 *   builtin:log1m
 *   builtin:artin_hasse_loderiv      (artin_hasse_logderiv also accepted)
 *   builtin:binom_t:<t>
 *   builtin:bernoulli_psi:<j>
 *   builtin:gap_series:<mu>:<L>
 *
 *   arc:      a=<rat>,b=<rat>
 *   schedule: k | affine:<alpha>,<lambda> | power:<alpha>,<mu> | family:phi<alpha> | family:psi<alpha>
 */

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "builtins.hpp"

namespace padicline {

class ParseFailure : public Error {
 public:
  ParseFailure(std::string msg, std::size_t pos)
      : Error(ErrorKind::ParseError, msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

/// expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
/// unary := '-' unary | power; power := atom ('^' integer)?; atom := number | 'x' | '(' expr ')'.
/// Juxtaposition such as 2x or 3(x+1) multiplies.
class RationalParser {
 public:
  explicit RationalParser(std::string s, std::size_t offset = 0) : s_(std::move(s)), off_(offset) {}

  ExactRationalFunction parse() {
    ExactRationalFunction f = expr();
    skip();
    if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void error(const std::string& m) const { throw ParseFailure(m, off_ + i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool starts_atom() {
    skip();
    return i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == 'x' || s_[i_] == '(');
  }

  ExactRationalFunction expr() {
    ExactRationalFunction f = term();
    for (;;) {
      if (eat('+')) f = f + term();
      else if (eat('-')) f = f - term();
      else return f;
    }
  }

  ExactRationalFunction term() {
    ExactRationalFunction f = unary();
    for (;;) {
      if (eat('*')) {
        f = f * unary();
      } else if (eat('/')) {
        const std::size_t at = i_;
        ExactRationalFunction g = unary();
        if (g.num().is_zero()) {
          i_ = at;
          error("division by zero");
        }
        f = f / g;
      } else if (starts_atom()) {
        f = f * power();
      } else {
        return f;
      }
    }
  }

  ExactRationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  ExactRationalFunction power() {
    ExactRationalFunction base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = eat('-');
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) error("expected an integer exponent");
    if (i_ - start > 4) error("exponent too large");
    long e = std::stol(s_.substr(start, i_ - start));
    if (neg) e = -e;
    if (e < 0 && base.num().is_zero()) error("zero to a negative power");
    return base.pow(e);
  }

  ExactRationalFunction atom() {
    skip();
    if (i_ >= s_.size()) error("unexpected end of expression");
    const char c = s_[i_];
    if (c == 'x') {
      ++i_;
      return ExactRationalFunction::x();
    }
    if (c == '(') {
      ++i_;
      ExactRationalFunction f = expr();
      if (!eat(')')) error("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return ExactRationalFunction::constant(mpq_class(mpz_class(s_.substr(start, i_ - start))));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t off_;
  std::size_t i_ = 0;
};

inline mpq_class parse_rational_at(const std::string& s, std::size_t offset) {
  std::size_t i = 0;
  auto bad = [&](const std::string& m) -> mpq_class { throw ParseFailure(m, offset + i); };
  if (s.empty()) return bad("expected a rational n or n/d");
  if (s[0] == '-' || s[0] == '+') ++i;
  const std::size_t num_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == num_start) return bad("expected digits");
  mpz_class num(s.substr(num_start, i - num_start));
  if (s[0] == '-') num = -num;
  mpz_class den = 1;
  if (i < s.size()) {
    if (s[i] != '/') return bad("unexpected '" + std::string(1, s[i]) + "'");
    ++i;
    const std::size_t den_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == den_start || i != s.size()) return bad("expected denominator digits");
    den = mpz_class(s.substr(den_start));
    if (den == 0) return bad("zero denominator");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline long parse_long_at(const std::string& s, std::size_t offset) {
  mpq_class q = parse_rational_at(s, offset);
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw ParseFailure("expected an integer", offset);
  return q.get_num().get_si();
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t k = s.find(sep, start);
    out.push_back(s.substr(start, k - start));
    if (k == std::string::npos) return out;
    start = k + 1;
  }
}

}  // namespace detail

inline mpq_class parse_rational(const std::string& s) { return detail::parse_rational_at(s, 0); }

inline ExactRationalFunction parse_rational_function(const std::string& expr, std::size_t offset = 0) {
  return detail::RationalParser(expr, offset).parse();
}

inline Arc parse_arc(const std::string& spec, const Ctx& ctx) {
  std::optional<mpq_class> a, b;
  std::size_t pos = 0;
  for (const std::string& part : detail::split(spec, ',')) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos) throw ParseFailure("expected a=<rat> or b=<rat>", pos);
    const std::string key = part.substr(0, eq);
    const mpq_class v = detail::parse_rational_at(part.substr(eq + 1), pos + eq + 1);
    if (key == "a") a = v;
    else if (key == "b") b = v;
    else throw ParseFailure("unknown arc key '" + key + "'", pos);
    pos += part.size() + 1;
  }
  if (!a || !b) throw ParseFailure("arc needs both a and b", spec.size());
  return Arc::make(ctx, *a, *b);
}

inline InterlockedFamily parse_schedule(const std::string& spec) {
  if (spec == "k") return InterlockedFamily::singleton(PathSequence::identity());
  auto two = [&](std::size_t colon) {
    auto parts = detail::split(spec.substr(colon + 1), ',');
    if (parts.size() != 2) throw ParseFailure("expected two integers", colon + 1);
    return std::make_pair(detail::parse_long_at(parts[0], colon + 1),
                          detail::parse_long_at(parts[1], colon + 2 + parts[0].size()));
  };
  if (spec.rfind("affine:", 0) == 0) {
    auto [al, la] = two(6);
    return InterlockedFamily::singleton(PathSequence::affine(al, la));
  }
  if (spec.rfind("power:", 0) == 0) {
    auto [al, mu] = two(5);
    return InterlockedFamily::singleton(PathSequence::power(al, mu));
  }
  if (spec.rfind("family:phi", 0) == 0) return InterlockedFamily::phi(detail::parse_long_at(spec.substr(10), 10));
  if (spec.rfind("family:psi", 0) == 0) return InterlockedFamily::psi(detail::parse_long_at(spec.substr(10), 10));
  throw ParseFailure("unknown schedule '" + spec + "'", 0);
}

/// A parsed function: the SeriesFunction about arc.b, plus the exact rational form for rat: specs.
struct ParsedFunction {
  SeriesFunction series;
  std::optional<ExactRationalFunction> rational;
};

inline ParsedFunction parse_function(const std::string& spec, const Arc& arc, const BuiltinOptions& opt = {}) {
  if (spec.rfind("rat:", 0) == 0) {
    ExactRationalFunction f = parse_rational_function(spec.substr(4), 4);
    return {from_rational(f, arc), f};
  }
  if (spec.rfind("builtin:", 0) != 0) throw ParseFailure("function spec must start with rat: or builtin:", 0);
  auto parts = detail::split(spec.substr(8), ':');
  const std::string& name = parts[0];
  auto arg_pos = [&](std::size_t k) {
    std::size_t pos = 8;
    for (std::size_t i = 0; i < k; ++i) pos += parts[i].size() + 1;
    return pos;
  };
  auto want = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw ParseFailure(name + " takes " + std::to_string(n) + " parameter(s)", arg_pos(std::min(parts.size(), n + 1) - 1));
  };
  if (name == "log1m") {
    want(0);
    return {builtin_log1m(arc), std::nullopt};
  }
  if (name == "artin_hasse_loderiv" || name == "artin_hasse_logderiv") {
    want(0);
    return {builtin_artin_hasse_logderiv(arc), std::nullopt};
  }
  if (name == "binom_t") {
    want(1);
    return {builtin_binom_t(arc, detail::parse_rational_at(parts[1], arg_pos(1))), std::nullopt};
  }
  if (name == "bernoulli_psi") {
    want(1);
    return {builtin_bernoulli_psi(arc, detail::parse_long_at(parts[1], arg_pos(1)), opt), std::nullopt};
  }
  if (name == "gap_series") {
    want(2);
    return {builtin_gap_series(arc, detail::parse_long_at(parts[1], arg_pos(1)),
                               detail::parse_rational_at(parts[2], arg_pos(2))),
            std::nullopt};
  }
  throw ParseFailure("unknown builtin '" + name + "'", 8);
}

}  // namespace padicline
