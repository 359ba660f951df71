#include "fedchain/experiment/optdigits.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "fedchain/common/error.h"

namespace fedchain::experiment {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

model::Dataset ParseOptdigits(std::istream& in, const std::string& source) {
  model::Dataset data(kOptdigitsFeatures, kOptdigitsClasses);
  std::vector<double> row(kOptdigitsFeatures);
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(source + ":" + std::to_string(lineno) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest = Trim(line);
    if (rest.empty()) continue;
    std::size_t field = 0;
    int label = -1;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view tok = Trim(rest.substr(0, comma));
      int value = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw fail("field " + std::to_string(field + 1) + " is not an integer: '" +
                   std::string(tok) + "'");
      }
      if (field < kOptdigitsFeatures) {
        if (value < 0 || value > kOptdigitsMaxPixel) {
          throw fail("pixel " + std::to_string(field + 1) + " out of range [0, 16]: " +
                     std::to_string(value));
        }
        row[field] = static_cast<double>(value) / kOptdigitsMaxPixel;
      } else if (field == kOptdigitsFeatures) {
        if (value < 0 || value >= kOptdigitsClasses) {
          throw fail("label out of range [0, 9]: " + std::to_string(value));
        }
        label = value;
      }
      ++field;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (field != kOptdigitsFeatures + 1) {
      throw fail("expected 65 fields, found " + std::to_string(field));
    }
    data.Append(row, label);
  }
  if (data.empty()) throw ParseError(source + ": no data rows");
  return data;
}

model::Dataset LoadOptdigits(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return ParseOptdigits(in, path.string());
}

void WriteOptdigits(std::ostream& out, const model::Dataset& data) {
  if (data.num_features() != kOptdigitsFeatures) {
    throw InvalidArgument("optdigits rows have 64 features");
  }
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (double x : data.row(r)) {
      const double pixel = x * kOptdigitsMaxPixel;
      if (!(pixel >= 0.0 && pixel <= kOptdigitsMaxPixel) || pixel != static_cast<int>(pixel)) {
        throw InvalidArgument("row " + std::to_string(r) + " is not representable as pixels");
      }
      out << static_cast<int>(pixel) << ',';
    }
    out << data.label(r) << '\n';
  }
}

}  // namespace fedchain::experiment
