#ifndef FEDCHAIN_EXPERIMENT_OPTDIGITS_H_
#define FEDCHAIN_EXPERIMENT_OPTDIGITS_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fedchain/model/dataset.h"

namespace fedchain::experiment {

inline constexpr std::size_t kOptdigitsFeatures = 64;
inline constexpr int kOptdigitsClasses = 10;
inline constexpr int kOptdigitsMaxPixel = 16;

// Lines of 64 integer pixels in [0, 16] followed by a label in [0, 9],
// comma separated. Pixels are scaled by 1/16; row order is kept. Blank lines
// are skipped, an input with no rows is an error. `source` names the input in
// error messages.
model::Dataset ParseOptdigits(std::istream& in, const std::string& source = "<input>");
model::Dataset LoadOptdigits(const std::filesystem::path& path);

// Inverse of the loader. Throws InvalidArgument unless every feature is an
// exact multiple of 1/16 in [0, 1], so a written file reloads bit-identically.
void WriteOptdigits(std::ostream& out, const model::Dataset& data);

}  // namespace fedchain::experiment

#endif  // FEDCHAIN_EXPERIMENT_OPTDIGITS_H_
