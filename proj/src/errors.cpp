#include "bscroll/errors.hpp"

#include <sstream>

namespace bscroll {

namespace {

std::string domain_message(const std::string& fn, double point, const std::string& detail,
                           std::size_t offset) {
  std::ostringstream os;
  os.precision(17);
  os << "domain error in " << fn << " at s = " << point;
  if (!detail.empty()) os << " (" << detail << ")";
  if (offset != DomainError::npos) os << " [expression offset " << offset << "]";
  return os.str();
}

std::string syntax_message(std::size_t offset, const std::vector<std::string>& expected,
                           const std::string& found) {
  std::ostringstream os;
  os << "syntax error at offset " << offset << ": found " << found << ", expected one of {";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << ", ";
    os << expected[i];
  }
  os << "}";
  return os.str();
}

}  // namespace

DomainError::DomainError(std::string function, double point, std::string detail)
    : InputError(domain_message(function, point, detail, npos)),
      function_(std::move(function)),
      point_(point),
      detail_(std::move(detail)) {}

DomainError DomainError::with_offset(std::size_t offset) const {
  DomainError e(function_, point_, detail_);
  e.offset_ = offset;
  static_cast<InputError&>(e) = InputError(domain_message(function_, point_, detail_, offset));
  return e;
}

DegenerateGenerator::DegenerateGenerator(double s, double derivative)
    : DomainError("generator", s,
                  "h'(s) = " + std::to_string(derivative) + " vanishes; degenerate generator") {}

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& found)
    : InputError(syntax_message(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownFunction::UnknownFunction(std::string name, std::size_t offset)
    : InputError("unknown function '" + name + "' at offset " + std::to_string(offset)),
      name_(std::move(name)),
      offset_(offset) {}

NotLorentz::NotLorentz(double residual)
    : InputError("matrix is not in O(2,1): residual " + std::to_string(residual)),
      residual_(residual) {}

NoSolutionFound::NoSolutionFound(double best_r1, double best_r2)
    : NumericError("no Lorentz transform found; best residuals r1 = " +
                   std::to_string(best_r1) + ", r2 = " + std::to_string(best_r2)),
      best_r1_(best_r1),
      best_r2_(best_r2) {}

}  // namespace bscroll
