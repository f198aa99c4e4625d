#ifndef ECSENSE_NUMERIC_FORMAT_HPP
#define ECSENSE_NUMERIC_FORMAT_HPP

#include <cstdio>
#include <string>

namespace ecsense {

// 12 significant digits, locale-independent; shared by every CSV and report
// writer so identical inputs give byte-identical output.
inline std::string fmt12(double v) {
  if (v == 0.0) v = 0.0;  // fold negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace ecsense

#endif  // ECSENSE_NUMERIC_FORMAT_HPP
