#include "chernforge/config.hpp"

#include <charconv>
#include <sstream>

namespace chernforge {

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::text:
      return "text";
    case OutputFormat::json:
      return "json";
    case OutputFormat::csv:
      return "csv";
  }
  return "text";
}

std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  return std::nullopt;
}

DiagBundle Config::bundle() const {
  if (lines.empty()) return DiagBundle::trivial(dimension);
  return DiagBundle(lines);
}

KCycle Config::cycle() const { return KCycle(bundle(), rho.dimension() == dimension ? rho : TorusForm(dimension)); }

OddKCycle Config::odd_cycle() const { return OddKCycle(dimension, odd); }

namespace {

struct Token {
  std::string_view text;
  int column;
};

struct Line {
  std::string_view raw;
  int number;
  std::vector<Token> tokens;
};

std::vector<Token> tokenize(std::string_view raw) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
    if (i >= raw.size() || raw[i] == '#') break;
    std::size_t j = i;
    while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
    out.push_back(Token{raw.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

class ConfigParser {
 public:
  explicit ConfigParser(std::string_view text) {
    std::size_t start = 0;
    int number = 1;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(start, end - start);
      lines_.push_back(Line{raw, number, tokenize(raw)});
      if (end == text.size()) break;
      start = end + 1;
      ++number;
    }
  }

  Config parse() {
    Config cfg;
    bool have_dimension = false;
    while (next_nonblank()) {
      const Line& line = lines_[pos_];
      const Token& key = line.tokens.front();
      if (key.text == "dimension") {
        if (have_dimension) fail(line, key, "duplicate 'dimension'");
        cfg.dimension = static_cast<int>(integer_arg(line, 1, 0, kMaxTorusDim));
        cfg.rho = TorusForm(cfg.dimension);
        have_dimension = true;
        expect_args(line, 1);
        ++pos_;
      } else if (key.text == "degree") {
        if (cfg.degree) fail(line, key, "duplicate 'degree'");
        cfg.degree = static_cast<int>(integer_arg(line, 1, 1, 15));
        expect_args(line, 1);
        ++pos_;
      } else if (key.text == "seed") {
        if (cfg.seed) fail(line, key, "duplicate 'seed'");
        cfg.seed = unsigned_arg(line, 1);
        expect_args(line, 1);
        ++pos_;
      } else if (key.text == "cases") {
        if (cfg.cases) fail(line, key, "duplicate 'cases'");
        cfg.cases = static_cast<int>(integer_arg(line, 1, 0, 1000000));
        expect_args(line, 1);
        ++pos_;
      } else if (key.text == "format") {
        if (cfg.format) fail(line, key, "duplicate 'format'");
        expect_args(line, 1);
        cfg.format = parse_output_format(line.tokens[1].text);
        if (!cfg.format) fail(line, line.tokens[1], "format must be text, json or csv");
        ++pos_;
      } else if (key.text == "chern" || key.text == "odd-chern") {
        auto& list = key.text == "chern" ? cfg.chern : cfg.odd_chern;
        if (line.tokens.size() < 2) fail(line, key, "expected at least one index");
        for (std::size_t k = 1; k < line.tokens.size(); ++k)
          list.push_back(static_cast<int>(integer_arg(line, k, 1, 64)));
        ++pos_;
      } else if (key.text == "line" || key.text == "rho" || key.text == "odd") {
        if (!have_dimension) fail(line, key, "'dimension' must precede '" + std::string(key.text) + "'");
        expect_args(line, 0);
        if (key.text == "line") cfg.lines.push_back(parse_line_block(cfg.dimension));
        if (key.text == "odd") cfg.odd.push_back(parse_odd_block(cfg.dimension));
        if (key.text == "rho") {
          const Line& head = lines_[pos_];
          TorusForm rho = parse_form_block(cfg.dimension);
          if (!rho.only_odd_degrees() || !rho.is_real()) fail(head, head.tokens.front(), "rho must be a real odd form");
          cfg.rho += rho;
        }
      } else {
        fail(line, key, "unknown keyword '" + std::string(key.text) + "'");
      }
    }
    if (!have_dimension) throw ParseError("missing 'dimension'", lines_.back().number, 1);
    return cfg;
  }

 private:
  [[noreturn]] static void fail(const Line& line, const Token& tok, const std::string& what) {
    throw ParseError(what, line.number, tok.column);
  }

  bool next_nonblank() {
    while (pos_ < lines_.size() && lines_[pos_].tokens.empty()) ++pos_;
    return pos_ < lines_.size();
  }

  static void expect_args(const Line& line, std::size_t count) {
    if (line.tokens.size() < count + 1) {
      Token end{"", static_cast<int>(line.raw.size()) + 1};
      fail(line, end, "missing argument to '" + std::string(line.tokens.front().text) + "'");
    }
    if (line.tokens.size() > count + 1) fail(line, line.tokens[count + 1], "unexpected token");
  }

  static std::int64_t integer_arg(const Line& line, std::size_t k, std::int64_t lo, std::int64_t hi) {
    if (k >= line.tokens.size()) {
      Token end{"", static_cast<int>(line.raw.size()) + 1};
      fail(line, end, "missing integer");
    }
    const Token& tok = line.tokens[k];
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
      fail(line, tok, "expected an integer, got '" + std::string(tok.text) + "'");
    if (v < lo || v > hi)
      fail(line, tok, "value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  static std::uint64_t unsigned_arg(const Line& line, std::size_t k) {
    if (k >= line.tokens.size()) fail(line, line.tokens.front(), "missing integer");
    const Token& tok = line.tokens[k];
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
      fail(line, tok, "expected a nonnegative integer, got '" + std::string(tok.text) + "'");
    return v;
  }

  // pos_ is at the block header; consumes through the matching `end`.
  TorusForm parse_form_block(int n) {
    const Line& head = lines_[pos_];
    ++pos_;
    std::string body;
    const int first = pos_ < lines_.size() ? lines_[pos_].number : head.number;
    while (true) {
      if (pos_ >= lines_.size()) fail(head, head.tokens.front(), "block is missing 'end'");
      const Line& line = lines_[pos_];
      if (line.tokens.size() == 1 && line.tokens.front().text == "end") break;
      body += std::string(line.raw) + "\n";
      ++pos_;
    }
    ++pos_;
    return parse_form(body, n, false, first, 1);
  }

  LineBundle parse_line_block(int n) {
    const Line& head = lines_[pos_];
    ++pos_;
    std::vector<std::int64_t> K;
    std::vector<Rational> theta(static_cast<std::size_t>(n), Rational(0));
    TorusForm beta(n);
    bool have_theta = false, have_beta = false;
    while (true) {
      if (!next_nonblank()) fail(head, head.tokens.front(), "'line' block is missing 'end'");
      const Line& line = lines_[pos_];
      const Token& key = line.tokens.front();
      if (key.text == "end") {
        expect_args(line, 0);
        ++pos_;
        break;
      }
      if (key.text == "K") {
        if (static_cast<int>(K.size()) >= n * n) fail(line, key, "too many K rows");
        expect_args(line, static_cast<std::size_t>(n));
        for (int l = 1; l <= n; ++l) K.push_back(integer_arg(line, static_cast<std::size_t>(l), -1000000, 1000000));
        ++pos_;
      } else if (key.text == "theta") {
        if (have_theta) fail(line, key, "duplicate 'theta'");
        have_theta = true;
        expect_args(line, static_cast<std::size_t>(n));
        for (int l = 0; l < n; ++l) {
          const Token& tok = line.tokens[static_cast<std::size_t>(l + 1)];
          try {
            theta[static_cast<std::size_t>(l)] = parse_rational(tok.text);
          } catch (const std::invalid_argument& e) {
            fail(line, tok, e.what());
          }
        }
        ++pos_;
      } else if (key.text == "beta") {
        if (have_beta) fail(line, key, "duplicate 'beta'");
        have_beta = true;
        expect_args(line, 0);
        beta = parse_form_block(n);
      } else {
        fail(line, key, "unknown keyword '" + std::string(key.text) + "' in 'line' block");
      }
    }
    if (K.empty()) K.assign(static_cast<std::size_t>(n * n), 0);
    if (static_cast<int>(K.size()) != n * n) fail(head, head.tokens.front(), "'line' block needs " + std::to_string(n) + " K rows");
    try {
      return LineBundle(n, std::move(K), std::move(theta), std::move(beta));
    } catch (const PreconditionError& e) {
      fail(head, head.tokens.front(), e.what());
    }
  }

  OddComponent parse_odd_block(int n) {
    const Line& head = lines_[pos_];
    ++pos_;
    OddComponent comp;
    comp.phase = TorusForm(n);
    bool have_winding = false, have_phase = false;
    while (true) {
      if (!next_nonblank()) fail(head, head.tokens.front(), "'odd' block is missing 'end'");
      const Line& line = lines_[pos_];
      const Token& key = line.tokens.front();
      if (key.text == "end") {
        expect_args(line, 0);
        ++pos_;
        break;
      }
      if (key.text == "winding") {
        if (have_winding) fail(line, key, "duplicate 'winding'");
        have_winding = true;
        expect_args(line, static_cast<std::size_t>(n));
        for (int l = 1; l <= n; ++l)
          comp.winding.push_back(integer_arg(line, static_cast<std::size_t>(l), -1000000, 1000000));
        ++pos_;
      } else if (key.text == "phase") {
        if (have_phase) fail(line, key, "duplicate 'phase'");
        have_phase = true;
        expect_args(line, 0);
        comp.phase = parse_form_block(n);
      } else {
        fail(line, key, "unknown keyword '" + std::string(key.text) + "' in 'odd' block");
      }
    }
    if (!have_winding) comp.winding.assign(static_cast<std::size_t>(n), 0);
    try {
      OddKCycle(n, {comp});
    } catch (const PreconditionError& e) {
      fail(head, head.tokens.front(), e.what());
    }
    return comp;
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

void write_form(std::ostream& os, const TorusForm& f, const std::string& indent) {
  std::istringstream in(to_text(f));
  for (std::string term; std::getline(in, term);) os << indent << term << "\n";
}

void write_line_block(std::ostream& os, const LineBundle& line) {
  const int n = line.dimension();
  os << "line\n";
  for (int j = 0; j < n; ++j) {
    os << "  K";
    for (int l = 0; l < n; ++l) os << " " << line.K(j, l);
    os << "\n";
  }
  os << "  theta";
  for (const auto& q : line.theta()) os << " " << to_string(q);
  os << "\n";
  if (!line.beta().is_zero()) {
    os << "  beta\n";
    write_form(os, line.beta(), "    ");
    os << "  end\n";
  }
  os << "end\n";
}

void write_odd_block(std::ostream& os, const OddComponent& comp) {
  os << "odd\n  winding";
  for (auto m : comp.winding) os << " " << m;
  os << "\n";
  if (!comp.phase.is_zero()) {
    os << "  phase\n";
    write_form(os, comp.phase, "    ");
    os << "  end\n";
  }
  os << "end\n";
}

void write_rho(std::ostream& os, const TorusForm& rho) {
  if (rho.is_zero()) return;
  os << "rho\n";
  write_form(os, rho, "  ");
  os << "end\n";
}

}  // namespace

Config parse_config(std::string_view text) { return ConfigParser(text).parse(); }

std::string serialize_config(const Config& config) {
  std::ostringstream os;
  os << "dimension " << config.dimension << "\n";
  if (config.degree) os << "degree " << *config.degree << "\n";
  if (config.format) os << "format " << to_string(*config.format) << "\n";
  if (config.seed) os << "seed " << *config.seed << "\n";
  if (config.cases) os << "cases " << *config.cases << "\n";
  for (const auto& line : config.lines) write_line_block(os, line);
  write_rho(os, config.rho);
  for (const auto& comp : config.odd) write_odd_block(os, comp);
  auto write_list = [&](const char* key, const std::vector<int>& list) {
    if (list.empty()) return;
    os << key;
    for (int i : list) os << " " << i;
    os << "\n";
  };
  write_list("chern", config.chern);
  write_list("odd-chern", config.odd_chern);
  return os.str();
}

std::string describe(const KCycle& w) {
  std::ostringstream os;
  os << "dimension " << w.dimension() << "\n";
  for (const auto& line : w.bundle.lines()) write_line_block(os, line);
  write_rho(os, w.rho);
  return os.str();
}

std::string describe(const OddKCycle& x) {
  std::ostringstream os;
  os << "dimension " << x.dimension() << "\n";
  for (const auto& comp : x.components()) write_odd_block(os, comp);
  return os.str();
}

}  // namespace chernforge
