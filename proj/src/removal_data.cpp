#include "removal_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace epirate {

RemovalData RemovalData::from_times(std::vector<double> times, bool normalize) {
  if (times.empty()) throw std::runtime_error("removal data: need at least one removal time");
  for (double t : times)
    if (!std::isfinite(t)) throw std::runtime_error("removal data: non-finite time");
  std::sort(times.begin(), times.end());
  if (normalize) {
    const double shift = times.front();
    for (double& t : times) t -= shift;
  }
  RemovalData d;
  d.removals_ = std::move(times);
  return d;
}

RemovalData RemovalData::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open removal CSV: " + path);
  std::vector<double> times;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    // tolerate \r\n and blank lines
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || (end && *end != '\0' && *end != ',')) {
      if (first) {
        first = false;  // header line
        continue;
      }
      throw std::runtime_error("bad row in removal CSV: '" + line + "'");
    }
    first = false;
    times.push_back(v);
  }
  if (times.empty()) throw std::runtime_error("removal CSV has no data rows: " + path);
  return from_times(std::move(times));
}

}  // namespace epirate
