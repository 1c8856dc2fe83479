#include "sumkit/io.hpp"

#include <fstream>
#include <sstream>

namespace sumkit {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

}  // namespace

PointSet read_instance(std::istream& in) {
  int d;
  i64 U, n;
  if (!(in >> d >> U >> n)) throw std::runtime_error("instance: bad header");
  if (d < 1 || n < 0) throw std::runtime_error("instance: bad header values");
  std::vector<i64> flat;
  flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (i64 i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      i64 v;
      if (!(in >> v)) throw std::runtime_error("instance: truncated point list");
      flat.push_back(v);
    }
  }
  return PointSet(d, U, std::move(flat));
}

PointSet read_instance_file(const std::string& path) {
  auto f = open_in(path);
  return read_instance(f);
}

void write_instance(std::ostream& out, const PointSet& s) {
  out << s.dim() << ' ' << s.universe() << ' ' << s.size() << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out << ' ';
      out << p[j];
    }
    out << '\n';
  }
}

void write_instance_file(const std::string& path, const PointSet& s) {
  auto f = open_out(path);
  write_instance(f, s);
}

SequenceFile read_sequence(std::istream& in) {
  SequenceFile sf;
  i64 n;
  if (!(in >> n >> sf.c)) throw std::runtime_error("sequence: bad header");
  sf.values.resize(static_cast<std::size_t>(n));
  for (auto& v : sf.values)
    if (!(in >> v)) throw std::runtime_error("sequence: truncated value list");
  return sf;
}

SequenceFile read_sequence_file(const std::string& path) {
  auto f = open_in(path);
  return read_sequence(f);
}

void write_sequence(std::ostream& out, const std::vector<i64>& values, i64 c) {
  out << values.size() << ' ' << c << '\n';
  for (i64 v : values) out << v << '\n';
}

void write_sequence_file(const std::string& path, const std::vector<i64>& values, i64 c) {
  auto f = open_out(path);
  write_sequence(f, values, c);
}

StringFile read_string(std::istream& in) {
  StringFile sf;
  i64 n;
  if (!(in >> n >> sf.alphabet)) throw std::runtime_error("string: bad header");
  if (!(in >> sf.text)) throw std::runtime_error("string: missing text line");
  if (static_cast<i64>(sf.text.size()) != n)
    throw std::runtime_error("string: length does not match header");
  for (char ch : sf.text)
    if (ch < '0' || ch >= '0' + sf.alphabet)
      throw std::runtime_error("string: character outside alphabet");
  return sf;
}

StringFile read_string_file(const std::string& path) {
  auto f = open_in(path);
  return read_string(f);
}

void write_string(std::ostream& out, const std::string& text, int alphabet) {
  out << text.size() << ' ' << alphabet << '\n' << text << '\n';
}

void write_string_file(const std::string& path, const std::string& text, int alphabet) {
  auto f = open_out(path);
  write_string(f, text, alphabet);
}

}  // namespace sumkit
