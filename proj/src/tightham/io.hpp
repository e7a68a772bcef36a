#pragma once

#include <iosfwd>
#include <string>

#include "tightham/hypergraph.hpp"

namespace tightham::io {

// Text: "n m" then m lines "a b c" with 0 <= a < b < c < n, edges in colex order.
// Binary: "H3G1", u32 little-endian n, ceil(C(n,3)/8) bytes of the colex bitmap
// (bit r is bit r%8 of byte r/8).
inline constexpr char kBinaryMagic[4] = {'H', '3', 'G', '1'};

Hypergraph3 read_text(std::istream& in);
void write_text(std::ostream& out, const Hypergraph3& h);

Hypergraph3 read_binary(std::istream& in);
void write_binary(std::ostream& out, const Hypergraph3& h);

// Sniffs the magic to pick the format.
Hypergraph3 read_file(const std::string& path);
void write_file(const std::string& path, const Hypergraph3& h, bool binary);

}  // namespace tightham::io
