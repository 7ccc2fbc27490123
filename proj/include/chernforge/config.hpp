#pragma once

// Line-based configuration format for the command-line tool.
//
//   # comment
//   dimension 2
//   degree 8
//   format json
//   seed 42
//   cases 100
//   line
//     K 0 3
//     K -3 0
//     theta 1/3 0
//     beta
//       (1/2+0i) exp[1,0] d{2}
//       (1/2+0i) exp[-1,0] d{2}
//     end
//   end
//   rho
//     (1/3+0i) exp[0,0] d{1}
//   end
//   odd
//     winding 1 0
//     phase
//       ...
//     end
//   end
//   chern 1
//   odd-chern 1
//
// `dimension` must precede every block. Each `line` block is one line bundle of
// the diagonal bundle; K rows, theta and beta default to zero. Form blocks use the
// term grammar of to_text. serialize_config emits the canonical form, which
// parses back to an equal Config.

#include "chernforge/bundles.hpp"
#include "chernforge/chern.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chernforge {

enum class OutputFormat { text, json, csv };

std::string to_string(OutputFormat f);
std::optional<OutputFormat> parse_output_format(std::string_view s);

struct Config {
  int dimension = 0;
  std::vector<LineBundle> lines;
  TorusForm rho;
  std::vector<OddComponent> odd;
  std::vector<int> chern;
  std::vector<int> odd_chern;
  std::optional<int> degree;
  std::optional<OutputFormat> format;
  std::optional<std::uint64_t> seed;
  std::optional<int> cases;

  /// The diagonal bundle; a flat trivial line when no line block is given.
  DiagBundle bundle() const;
  KCycle cycle() const;
  OddKCycle odd_cycle() const;

  friend bool operator==(const Config&, const Config&) = default;
};

/// Throws ParseError with the line and column of the offending token.
Config parse_config(std::string_view text);

std::string serialize_config(const Config& config);

/// Config text describing a single cycle (dimension, line blocks, rho).
std::string describe(const KCycle& w);
std::string describe(const OddKCycle& x);

}  // namespace chernforge
