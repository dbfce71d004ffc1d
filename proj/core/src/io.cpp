#include "mtsolve/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mtsolve/errors.hpp"

namespace mtsolve {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  const std::string content = line.substr(0, line.find('#'));
  std::istringstream ss(content);
  std::vector<std::string> tokens;
  for (std::string tok; ss >> tok;) tokens.push_back(tok);
  return tokens;
}

long parse_integer(const std::string& tok, int line) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + tok + "'", line);
  }
  return value;
}

double parse_real(const std::string& tok, int line) {
  // Trailing characters are rejected below.
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a real number, got '" + tok + "'", line);
  }
  if (used != tok.size()) throw ParseError("expected a real number, got '" + tok + "'", line);
  return value;
}

}  // namespace

DenseTensor read_tensor(std::istream& in, std::size_t max_entries) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    header = tokenize(line);
  }
  if (header.empty()) throw ParseError("missing 'l n' header", 0);
  if (header.size() != 2) throw ParseError("header must be 'l n'", line_no);
  const long order = parse_integer(header[0], line_no);
  const long dim = parse_integer(header[1], line_no);
  if (order < 2 || order > 64) throw ParseError("order must be in [2, 64]", line_no);
  if (dim < 1 || dim > (1L << 30)) throw ParseError("dimension must be positive", line_no);
  try {
    check_memory_budget(static_cast<int>(order), static_cast<int>(dim), max_entries);
  } catch (const Error& e) {
    throw ParseError(e.what(), line_no);
  }

  DenseTensor t(static_cast<int>(order), static_cast<int>(dim));
  std::vector<char> seen(t.size(), 0);
  std::vector<int> index(static_cast<std::size_t>(order));
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != static_cast<std::size_t>(order) + 1) {
      throw ParseError("expected " + std::to_string(order) + " indices and a value, got " +
                           std::to_string(tokens.size()) + " fields",
                       line_no);
    }
    for (long k = 0; k < order; ++k) {
      const long i = parse_integer(tokens[k], line_no);
      if (i < 1 || i > dim) {
        throw ParseError("index " + std::to_string(i) + " out of range 1.." +
                             std::to_string(dim),
                         line_no);
      }
      index[k] = static_cast<int>(i - 1);
    }
    const std::size_t off = t.offset(index);
    if (seen[off]) throw ParseError("duplicate entry", line_no);
    seen[off] = 1;
    t.entries()[off] = parse_real(tokens[order], line_no);
  }
  return t;
}

DenseTensor load_tensor(const std::filesystem::path& path, std::size_t max_entries) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tensor file " + path.string());
  return read_tensor(in, max_entries);
}

void write_tensor(std::ostream& out, const DenseTensor& t) {
  out << t.order() << ' ' << t.dim() << '\n';
  const auto data = t.entries();
  std::vector<int> index(t.order());
  char buf[32];
  for (std::size_t off = 0; off < data.size(); ++off) {
    if (data[off] == 0.0) continue;
    std::size_t rem = off;
    for (int k = t.order() - 1; k >= 0; --k) {
      index[k] = static_cast<int>(rem % static_cast<std::size_t>(t.dim()));
      rem /= static_cast<std::size_t>(t.dim());
    }
    for (int i : index) out << i + 1 << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", data[off]);
    out << buf << '\n';
  }
}

void save_tensor(const DenseTensor& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write tensor file " + path.string());
  write_tensor(out, t);
  if (!out) throw Error("error while writing " + path.string());
}

void write_trace(std::ostream& out, const IterationTrace& trace) {
  out << "iter,res,elapsed_s,step_kind\n";
  char buf[96];
  for (const auto& r : trace.records) {
    std::snprintf(buf, sizeof buf, "%d,%.6e,%.9f,%s\n", r.k, r.res, r.elapsed,
                  to_string(r.step_kind));
    out << buf;
  }
}

void save_trace(const IterationTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trace file " + path.string());
  write_trace(out, trace);
  if (!out) throw Error("error while writing " + path.string());
}

}  // namespace mtsolve
