#include "chernforge/config.hpp"
#include "chernforge/generate.hpp"

#include <doctest.h>

using namespace chernforge;

namespace {

std::pair<int, int> error_position(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return {e.line, e.column};
  }
  return {0, 0};
}

const char* kSample = R"(# sample
dimension 2
format json
seed 7
line
  K 0 3
  K -3 0
  theta 1/3 0
  beta
    (1/2+0i) exp[1,0] d{2}
    (1/2+0i) exp[-1,0] d{2}
  end
end
rho
  (1/3+0i) exp[0,0] d{1}
end
chern 1
)";

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("parses the documented sample") {
    Config c = parse_config(kSample);
    CHECK(c.dimension == 2);
    CHECK(c.format == OutputFormat::json);
    CHECK(c.seed == 7u);
    CHECK_FALSE(c.cases);
    REQUIRE(c.lines.size() == 1);
    CHECK(c.lines[0].K(0, 1) == 3);
    CHECK(c.lines[0].theta()[0] == Rational(1, 3));
    CHECK(c.lines[0].beta().size() == 2);
    CHECK(c.rho == TorusForm::dx(2, 0) * Gauss(Rational(1, 3)));
    CHECK(c.chern == std::vector<int>{1});
    CHECK(c.cycle().bundle.rank() == 1);
  }

  TEST_CASE("serialize round trip") {
    Config c = parse_config(kSample);
    std::string text = serialize_config(c);
    Config back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }

  TEST_CASE("generated cycles round trip through describe") {
    CaseGenerator gen(31);
    for (int k = 0; k < 50; ++k) {
      KCycle w = gen.cycle(static_cast<int>(gen.uniform(1, 6)), k % 2 == 0);
      Config c = parse_config(describe(w));
      KCycle back = c.cycle();
      CHECK(back.bundle == w.bundle);
      CHECK(back.rho == w.rho);
      OddKCycle x = gen.odd_cycle(static_cast<int>(gen.uniform(1, 4)));
      CHECK(parse_config(describe(x)).odd_cycle() == x);
    }
  }

  TEST_CASE("defaults") {
    Config c = parse_config("dimension 3\n");
    CHECK(c.cycle().bundle == DiagBundle::trivial(3));
    CHECK(c.cycle().rho.is_zero());
    CHECK(c.chern.empty());
    CHECK_FALSE(c.degree);
    Config l = parse_config("dimension 2\nline\nend\n");
    CHECK(l.lines[0] == LineBundle(2));
  }

  TEST_CASE("diagnostics carry line and column") {
    CHECK(error_position("line\nend\n") == std::pair{1, 1});
    CHECK(error_position("dimension 2\ndimension 3\n") == std::pair{2, 1});
    CHECK(error_position("dimension 2\nbogus 1\n") == std::pair{2, 1});
    CHECK(error_position("dimension 2\nformat xml\n") == std::pair{2, 8});
    CHECK(error_position("dimension 2\ndegree x\n") == std::pair{2, 8});
    CHECK(error_position("dimension 2\nline\n  K 0 1\n  K -1 0\n  theta 1/3\nend\n") == std::pair{5, 12});
    CHECK(error_position("dimension 2\nline\n  K 0 1\nend\n").first == 2);
    CHECK(error_position("dimension 2\nline\n  K 0 1\n  K -1 0\n").first == 2);
    CHECK(error_position("dimension 2\nrho\n  (1+0i) d{3}\nend\n") == std::pair{3, 12});
    CHECK(error_position("dimension 2\nrho\n  (1+0i) exp[0,0] d{1,2}\nend\n").first == 2);
    CHECK(error_position("dimension 2\nline\n  K 0 1\n  K 1 0\nend\n").first == 2);
    CHECK(error_position("dimension 2\nodd\n  winding 1\nend\n") == std::pair{3, 12});
    CHECK(error_position("dimension 2\nseed 1 2\n") == std::pair{2, 8});
    CHECK(error_position("# nothing\n").first >= 1);
  }

  TEST_CASE("output format names") {
    for (auto f : {OutputFormat::text, OutputFormat::json, OutputFormat::csv})
      CHECK(parse_output_format(to_string(f)) == f);
    CHECK_FALSE(parse_output_format("yaml"));
  }
}
