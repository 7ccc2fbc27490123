#include "chernforge/forms.hpp"

#include <cctype>
#include <sstream>

namespace chernforge {

std::string to_text(const TorusForm& a) {
  std::ostringstream os;
  for (const auto& [key, c] : a.terms()) {
    os << to_string(c);
    if (a.has_t()) os << " t^" << key.t_exp;
    os << " exp[";
    for (int j = 0; j < a.dimension(); ++j) os << (j ? "," : "") << key.freq[static_cast<std::size_t>(j)];
    os << "] d{";
    bool first = true;
    if (key.mask & kDtBit) {
      os << "t";
      first = false;
    }
    for (int j : mask_coords(key.mask)) {
      os << (first ? "" : ",") << j + 1;
      first = false;
    }
    os << "}\n";
  }
  return os.str();
}

namespace {

class TermLineParser {
 public:
  TermLineParser(std::string_view line, int n, bool has_t, int line_no, int col0)
      : line_(line), n_(n), has_t_(has_t), line_no_(line_no), col0_(col0) {}

  std::pair<TermKey, Gauss> parse() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() != '(') fail("expected '(' starting a coefficient", start);
    std::size_t close = line_.find(')', pos_);
    if (close == std::string_view::npos) fail("unterminated coefficient", start);
    Gauss c;
    try {
      c = parse_gauss(line_.substr(pos_, close - pos_ + 1));
    } catch (const std::invalid_argument& e) {
      fail(e.what(), start);
    }
    pos_ = close + 1;
    TermKey key;
    bool seen_t = false, seen_exp = false, seen_d = false;
    while (true) {
      skip_ws();
      if (pos_ >= line_.size() || peek() == '#') break;
      std::size_t at = pos_;
      if (line_.substr(pos_, 2) == "t^") {
        if (seen_t || seen_exp || seen_d) fail("unexpected t^ factor", at);
        if (!has_t_) fail("t^ factor on a form without an interval factor", at);
        pos_ += 2;
        key.t_exp = parse_int(at);
        if (key.t_exp < 0) fail("negative t exponent", at);
        seen_t = true;
      } else if (line_.substr(pos_, 4) == "exp[") {
        if (seen_exp || seen_d) fail("unexpected exp[...] factor", at);
        pos_ += 4;
        int j = 0;
        skip_ws();
        if (peek() != ']') {
          while (true) {
            std::size_t entry = pos_;
            long k = parse_int(entry);
            if (j >= n_) fail("frequency vector longer than the dimension", entry);
            key.freq[static_cast<std::size_t>(j++)] = static_cast<std::int32_t>(k);
            skip_ws();
            if (peek() == ',') {
              ++pos_;
              skip_ws();
              continue;
            }
            break;
          }
        }
        if (peek() != ']') fail("expected ']'", pos_);
        ++pos_;
        if (j != n_) fail("frequency vector length must equal the dimension", at);
        seen_exp = true;
      } else if (line_.substr(pos_, 2) == "d{") {
        if (seen_d) fail("duplicate d{...} factor", at);
        pos_ += 2;
        int last = -1;
        skip_ws();
        if (peek() != '}') {
          while (true) {
            std::size_t entry = pos_;
            int idx;
            if (peek() == 't') {
              if (!has_t_) fail("dt on a form without an interval factor", entry);
              ++pos_;
              idx = 0;
            } else {
              long v = parse_int(entry);
              if (v < 1 || v > n_) fail("coordinate index out of range", entry);
              idx = static_cast<int>(v);
            }
            if (idx <= last) fail("differentials must be strictly increasing with t first", entry);
            last = idx;
            key.mask |= IndexMask{1} << idx;
            skip_ws();
            if (peek() == ',') {
              ++pos_;
              skip_ws();
              continue;
            }
            break;
          }
        }
        if (peek() != '}') fail("expected '}'", pos_);
        ++pos_;
        seen_d = true;
      } else {
        fail("unexpected text", at);
      }
    }
    return {key, c};
  }

 private:
  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) ++pos_;
  }
  long parse_int(std::size_t at) {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    std::size_t digits = pos_;
    while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    if (pos_ == digits || pos_ - start > 9) fail("expected an integer", at);
    return std::stol(std::string(line_.substr(start, pos_ - start)));
  }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw ParseError(what, line_no_, col0_ + static_cast<int>(at));
  }

  std::string_view line_;
  int n_;
  bool has_t_;
  int line_no_;
  int col0_;
  std::size_t pos_ = 0;
};

}  // namespace

TorusForm parse_form(std::string_view text, int n, bool has_t, int first_line, int first_column) {
  TorusForm out(n, has_t);
  std::size_t start = 0;
  int line_no = first_line;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      auto [key, c] = TermLineParser(line, n, has_t, line_no, first_column).parse();
      out.add_term(key, c);
    }
    if (end == text.size()) break;
    start = end + 1;
    ++line_no;
  }
  return out;
}

std::string to_pretty(const TorusForm& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : a.terms()) {
    std::vector<std::string> factors;
    if (key.t_exp == 1) factors.emplace_back("t");
    if (key.t_exp > 1) factors.push_back("t^" + std::to_string(key.t_exp));
    if (!key.zero_frequency()) {
      std::string e = "e[";
      for (int j = 0; j < a.dimension(); ++j)
        e += (j ? "," : "") + std::to_string(key.freq[static_cast<std::size_t>(j)]);
      factors.push_back(e + "]");
    }
    if (key.mask) {
      std::string d;
      if (key.mask & kDtBit) d = "dt";
      for (int j : mask_coords(key.mask)) d += (d.empty() ? "" : "∧") + std::string("dx") + std::to_string(j + 1);
      factors.push_back(d);
    }
    std::string coeff;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      Rational mag = abs(c.re());
      if (mag != 1 || factors.empty()) coeff = to_string(mag);
    } else {
      coeff = to_string(c);
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool need_dot = false;
    if (!coeff.empty()) {
      os << coeff;
      need_dot = true;
    }
    for (const auto& f : factors) {
      if (need_dot) os << "·";
      os << f;
      need_dot = true;
    }
  }
  return os.str();
}

}  // namespace chernforge
