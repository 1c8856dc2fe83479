#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sumkit/types.hpp"

namespace sumkit {

// Text formats shared by all CLI tooling, written bit-exactly:
//   instance:  "d U n" then n lines of d space-separated integers
//   sequence:  "n c" then n integers, one per line
//   string:    "n alphabet" then the string of digits

PointSet read_instance(std::istream& in);
PointSet read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const PointSet& s);
void write_instance_file(const std::string& path, const PointSet& s);

struct SequenceFile {
  std::vector<i64> values;
  i64 c = 1;
};
SequenceFile read_sequence(std::istream& in);
SequenceFile read_sequence_file(const std::string& path);
void write_sequence(std::ostream& out, const std::vector<i64>& values, i64 c);
void write_sequence_file(const std::string& path, const std::vector<i64>& values, i64 c);

struct StringFile {
  std::string text;
  int alphabet = 2;
};
StringFile read_string(std::istream& in);
StringFile read_string_file(const std::string& path);
void write_string(std::ostream& out, const std::string& text, int alphabet);
void write_string_file(const std::string& path, const std::string& text, int alphabet);

}  // namespace sumkit
