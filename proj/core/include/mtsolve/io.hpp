#pragma once

#include <filesystem>
#include <iosfwd>

#include "mtsolve/solver.hpp"
#include "mtsolve/tensor.hpp"

namespace mtsolve {

/// COO text format, 1-based indices:
///
///   # comment lines and trailing comments start with '#'
///   l n
///   i1 i2 ... il value
///   ...
///
/// Unlisted entries are zero. Duplicate index tuples, out-of-range indices
/// and malformed lines raise ParseError with the offending line number.
DenseTensor read_tensor(std::istream& in, std::size_t max_entries = kDefaultMaxEntries);
DenseTensor load_tensor(const std::filesystem::path& path,
                        std::size_t max_entries = kDefaultMaxEntries);

/// Writes the nonzero entries with 17 significant digits, so a load
/// reproduces the tensor bit for bit.
void write_tensor(std::ostream& out, const DenseTensor& t);
void save_tensor(const DenseTensor& t, const std::filesystem::path& path);

/// CSV with header iter,res,elapsed_s,step_kind; res as %.6e.
void write_trace(std::ostream& out, const IterationTrace& trace);
void save_trace(const IterationTrace& trace, const std::filesystem::path& path);

}  // namespace mtsolve
