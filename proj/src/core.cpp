#include "shapecur/core.hpp"

#include <sstream>

namespace shapecur {

namespace {

std::string describe_point(std::size_t index, const Vec2& p) {
  std::ostringstream os;
  os.precision(17);
  os << "point " << index << " (" << p.x() << ", " << p.y() << ") lies outside the domain";
  return os.str();
}

}  // namespace

OutOfDomain::OutOfDomain(std::size_t index, const Vec2& p)
    : Error(describe_point(index, p)), index_(index) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : IoError("line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace shapecur
