#include "tightham/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "tightham/error.hpp"

namespace tightham::io {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
  fail(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

// Splits a line into unsigned integers; rejects anything else.
std::vector<std::uint64_t> parse_numbers(const std::string& text, std::size_t line) {
  std::vector<std::uint64_t> out;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    std::uint64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t' && *next != '\r'))
      parse_error(line, "expected unsigned integers, got '" + text + "'");
    out.push_back(v);
    p = next;
  }
  return out;
}

}  // namespace

Hypergraph3 read_text(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, text)) {
      ++line;
      if (text.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) parse_error(line + 1, "missing header 'n m'");
  auto header = parse_numbers(text, line);
  if (header.size() != 2) parse_error(line, "header must be 'n m'");
  if (header[0] > kMaxVertices) parse_error(line, "n=" + std::to_string(header[0]) + " exceeds the build cap");
  const std::size_t n = header[0];
  const std::uint64_t m = header[1];
  if (m > choose3(n)) parse_error(line, "more edges than C(n,3)");
  Hypergraph3 h(n);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!next_line()) parse_error(line + 1, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    auto e = parse_numbers(text, line);
    if (e.size() != 3) parse_error(line, "edge line must have three vertices");
    if (!(e[0] < e[1] && e[1] < e[2])) parse_error(line, "edge vertices must satisfy a < b < c");
    if (e[2] >= n) parse_error(line, "vertex " + std::to_string(e[2]) + " >= n");
    auto a = static_cast<Vertex>(e[0]), b = static_cast<Vertex>(e[1]), c = static_cast<Vertex>(e[2]);
    if (h.has_edge(a, b, c)) parse_error(line, "duplicate edge");
    h.add_edge(a, b, c);
  }
  if (next_line()) parse_error(line, "trailing content after " + std::to_string(m) + " edges");
  return h;
}

void write_text(std::ostream& out, const Hypergraph3& h) {
  out << h.order() << ' ' << h.size() << '\n';
  h.for_each_edge([&](const Triple& t) { out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n'; });
}

Hypergraph3 read_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kBinaryMagic, 4) != 0) fail(ErrorCode::Parse, "binary: bad magic");
  unsigned char nb[4];
  if (!in.read(reinterpret_cast<char*>(nb), 4)) fail(ErrorCode::Parse, "binary: truncated header");
  const std::uint32_t n = nb[0] | (nb[1] << 8) | (nb[2] << 16) | (static_cast<std::uint32_t>(nb[3]) << 24);
  if (n > kMaxVertices) fail(ErrorCode::Parse, "binary: n=" + std::to_string(n) + " exceeds the build cap");
  const std::uint64_t bits = choose3(n);
  const std::uint64_t bytes = (bits + 7) / 8;
  std::vector<unsigned char> buf(bytes);
  if (bytes && !in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes)))
    fail(ErrorCode::Parse, "binary: truncated bitmap");
  if (in.peek() != std::char_traits<char>::eof()) fail(ErrorCode::Parse, "binary: trailing bytes");
  std::vector<std::uint64_t> words((bits + 63) / 64, 0);
  for (std::uint64_t i = 0; i < bytes; ++i) words[i / 8] |= static_cast<std::uint64_t>(buf[i]) << (8 * (i % 8));
  return Hypergraph3::from_words(n, std::move(words));
}

void write_binary(std::ostream& out, const Hypergraph3& h) {
  out.write(kBinaryMagic, 4);
  const auto n = static_cast<std::uint32_t>(h.order());
  const unsigned char nb[4] = {static_cast<unsigned char>(n), static_cast<unsigned char>(n >> 8),
                               static_cast<unsigned char>(n >> 16), static_cast<unsigned char>(n >> 24)};
  out.write(reinterpret_cast<const char*>(nb), 4);
  const std::uint64_t bytes = (choose3(h.order()) + 7) / 8;
  auto words = h.words();
  for (std::uint64_t i = 0; i < bytes; ++i) {
    const char byte = static_cast<char>((words[i / 8] >> (8 * (i % 8))) & 0xff);
    out.put(byte);
  }
}

Hypergraph3 read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  char magic[4] = {};
  in.read(magic, 4);
  const bool binary = in.gcount() == 4 && std::memcmp(magic, kBinaryMagic, 4) == 0;
  in.clear();
  in.seekg(0);
  try {
    return binary ? read_binary(in) : read_text(in);
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Hypergraph3& h, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
  binary ? write_binary(out, h) : write_text(out, h);
  if (!out) fail(ErrorCode::Io, "write failed for '" + path + "'");
}

}  // namespace tightham::io
