#ifndef PHIMDP_TEXT_IO_HPP_
#define PHIMDP_TEXT_IO_HPP_

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace phimdp {

/// Shortest decimal form of a double that round-trips exactly. Keeps CSV and
/// manifest output byte-stable without printing 17 digits for values like 0.1.
inline std::string fmt_double(double x) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

/// Parses the first `count` comma-separated fields of `line` as integers.
inline std::vector<int> split_csv_ints(const std::string& line, int count) {
  auto fields = split_csv(line);
  if (static_cast<int>(fields.size()) < count)
    throw std::runtime_error("expected at least " + std::to_string(count) +
                             " fields in line: " + line);
  std::vector<int> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(fields[i], &used);
    } catch (const std::exception&) {
      throw std::runtime_error("bad integer field '" + fields[i] +
                               "' in line: " + line);
    }
    if (used != fields[i].size())
      throw std::runtime_error("bad integer field '" + fields[i] +
                               "' in line: " + line);
    out.push_back(v);
  }
  return out;
}

}  // namespace phimdp

#endif  // PHIMDP_TEXT_IO_HPP_
