#pragma once

#include "cubictsp/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace cubictsp {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Line format:  c <comment> | p ftsp <n> <m> | e <u> <v> <num>[/<den>] [F]
// Vertices are 1-indexed in text and 0-indexed in the Instance.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);
Instance read_instance(const std::filesystem::path& path);

// Alive vertices are renumbered densely in id order; edges keep id order.
std::string serialize(const Instance& inst, const std::string& comment = "");
void write_instance(const std::filesystem::path& path, const Instance& inst, const std::string& comment = "");

}  // namespace cubictsp
