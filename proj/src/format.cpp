#include "nehari/format.hpp"

#include <charconv>

namespace nehari {

namespace {

std::string general(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string fmt17(double v) { return general(v, 17); }
std::string fmt6(double v) { return general(v, 6); }

}  // namespace nehari
