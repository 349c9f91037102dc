#ifndef OAD_IO_H_
#define OAD_IO_H_

// Text format for problems (grammar in docs/format.md):
//
//   values 1..7
//   var X1 [1..4]
//   var X2 {1,2}
//   overlapping_alldifferent (X1 X2 X3) (X3 X4)
//   alldifferent X1 X2
//   less_than X1 X2
//
// File values lo..hi are stored internally as 1..hi-lo+1.

#include <stdexcept>
#include <string>
#include <string_view>

#include "oad/solver.h"

namespace oad {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct InstanceFile {
  Problem problem;
  int offset = 0;  // file value = internal value + offset

  int ToFileValue(int v) const { return v + offset; }
  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

InstanceFile ParseInstance(std::string_view text);
InstanceFile ReadInstanceFile(const std::string& path);

// Canonical form: one declaration per line, variables in declaration order,
// then constraints in order.
std::string SerializeInstance(const InstanceFile& file);
inline std::string SerializeProblem(const Problem& problem) {
  return SerializeInstance(InstanceFile{problem, 0});
}

// "[a..b]" or "{a,b,c}" in file values.
std::string FormatDomain(const Domain& domain, int offset);

}  // namespace oad

#endif  // OAD_IO_H_
