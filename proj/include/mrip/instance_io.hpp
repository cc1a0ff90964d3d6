#pragma once

#include <stdexcept>
#include <string>

#include "mrip/oracle3sat.hpp"

namespace mrip {

// Parse/serialize errors that carry "file:line: message" in what().
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& file, int line, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// Instance file format:
//   {"r": int, "s": int, "clauses": [[int,int,int], ...]}
// Rejects out-of-range literal indices (and malformed JSON) with a
// line-precise ParseError. `origin` is the name used in error messages.
Oracle3SatInstance parse_instance_json(const std::string& text,
                                       const std::string& origin = "<string>",
                                       const DeskBounds& bounds = DeskBounds{});

Oracle3SatInstance load_instance_file(const std::string& path,
                                      const DeskBounds& bounds = DeskBounds{});

// Canonical serialization: one clause per line, stable field order, so
// generated corpora are byte-identical across runs.
std::string instance_to_json(const Oracle3SatInstance& instance);

}  // namespace mrip
