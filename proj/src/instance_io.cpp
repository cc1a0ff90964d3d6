#include "mrip/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mrip {

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Finds the byte offset where the k-th (0-based) clause array starts, by
// scanning the JSON text for the '[' tokens nested inside the "clauses"
// array. Only used to attach a line number to semantic errors; the actual
// parsing is done by the JSON library.
std::size_t offset_of_clause(const std::string& text, std::size_t k) {
  std::size_t pos = text.find("\"clauses\"");
  if (pos == std::string::npos) return 0;
  int depth = 0;
  bool in_string = false;
  std::size_t seen = 0;
  for (std::size_t i = pos; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_string) {
      if (ch == '\\') ++i;
      else if (ch == '"') in_string = false;
      continue;
    }
    if (ch == '"') { in_string = true; continue; }
    if (ch == '[') {
      ++depth;
      if (depth == 2) {
        if (seen == k) return i;
        ++seen;
      }
    } else if (ch == ']') {
      --depth;
      if (depth == 0) break;
    }
  }
  return pos;
}

}  // namespace

Oracle3SatInstance parse_instance_json(const std::string& text,
                                       const std::string& origin,
                                       const DeskBounds& bounds) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin, line_of_offset(text, e.byte), e.what());
  }
  if (!doc.is_object() || !doc.contains("r") || !doc.contains("s") || !doc.contains("clauses"))
    throw ParseError(origin, 1, "instance object must have fields r, s, clauses");

  Oracle3SatInstance instance;
  try {
    instance.r = doc.at("r").get<int>();
    instance.s = doc.at("s").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin, 1, std::string("r and s must be integers: ") + e.what());
  }
  const auto& clauses = doc.at("clauses");
  if (!clauses.is_array())
    throw ParseError(origin, 1, "clauses must be an array of 3-literal arrays");

  const int max_var = instance.num_vars();
  for (std::size_t k = 0; k < clauses.size(); ++k) {
    const auto& c = clauses[k];
    const int line = line_of_offset(text, offset_of_clause(text, k));
    if (!c.is_array() || c.size() != 3)
      throw ParseError(origin, line, "clause " + std::to_string(k + 1) +
                                         " must have exactly 3 literals");
    std::array<int, 3> lits{};
    for (int j = 0; j < 3; ++j) {
      if (!c[j].is_number_integer())
        throw ParseError(origin, line, "clause " + std::to_string(k + 1) +
                                           " literal " + std::to_string(j + 1) +
                                           " must be a signed integer");
      lits[j] = c[j].get<int>();
      const int var = std::abs(lits[j]);
      if (var == 0 || var > max_var)
        throw ParseError(origin, line,
                         "clause " + std::to_string(k + 1) + " literal " +
                             std::to_string(lits[j]) + " out of range 1.." +
                             std::to_string(max_var));
    }
    instance.clauses.push_back(lits);
  }
  try {
    instance.validate(bounds);
  } catch (const std::invalid_argument& e) {
    throw ParseError(origin, 1, e.what());
  }
  return instance;
}

Oracle3SatInstance load_instance_file(const std::string& path, const DeskBounds& bounds) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str(), path, bounds);
}

std::string instance_to_json(const Oracle3SatInstance& instance) {
  std::ostringstream out;
  out << "{\n  \"r\": " << instance.r << ",\n  \"s\": " << instance.s
      << ",\n  \"clauses\": [";
  for (std::size_t k = 0; k < instance.clauses.size(); ++k) {
    const auto& c = instance.clauses[k];
    out << (k == 0 ? "\n" : ",\n") << "    [" << c[0] << ", " << c[1] << ", " << c[2] << "]";
  }
  out << (instance.clauses.empty() ? "]" : "\n  ]") << "\n}\n";
  return out.str();
}

}  // namespace mrip
