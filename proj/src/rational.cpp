#include "chernforge/rational.hpp"

#include <cctype>

namespace chernforge {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool valid_integer_text(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  std::string n(num.front() == '+' ? num.substr(1) : num);
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(n), d);
  q.canonicalize();
  return q;
}

Rational mod_one(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rational(fl);
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

std::string to_string(const Gauss& z) {
  std::string out = "(" + to_string(z.re());
  if (sgn(z.im()) < 0)
    out += "-" + to_string(Rational(-z.im()));
  else
    out += "+" + to_string(z.im());
  out += "i)";
  return out;
}

Gauss parse_gauss(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("malformed coefficient '" + std::string(text) + "'"); };
  if (text.size() < 5 || text.front() != '(' || text.substr(text.size() - 2) != "i)") throw fail();
  std::string_view body = text.substr(1, text.size() - 3);
  // The separator is the last sign that is not the leading sign of the real part.
  std::size_t sep = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      sep = k;
      break;
    }
  }
  if (sep == std::string_view::npos) throw fail();
  try {
    Rational re = parse_rational(body.substr(0, sep));
    std::string_view im_text = body.substr(sep + 1);
    if (im_text.empty() || im_text.front() == '+' || im_text.front() == '-') throw fail();
    Rational im = parse_rational(im_text);
    if (body[sep] == '-') im = -im;
    return Gauss(re, im);
  } catch (const std::invalid_argument&) {
    throw fail();
  }
}

}  // namespace chernforge
