#pragma once

#include <string>
#include <utility>
#include <vector>

namespace poncelet::embedded {

// Contents of data/centers.txt at build time.
const char* centers_table();

// (family name, fixture text) for every file in data/fixtures.
const std::vector<std::pair<std::string, std::string>>& fixtures();

}  // namespace poncelet::embedded
