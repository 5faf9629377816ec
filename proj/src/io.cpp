#include "redblue/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace redblue::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw std::runtime_error("parse error: " + what);
}

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) parse_fail(std::string("missing ") + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& s, const char* what) {
  double v = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    parse_fail(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    parse_fail(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_u64(std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void write_header_and_points(std::ostream& out, const SeparatedSet& set,
                             const ColoringConfig* config) {
  out << set.dim() << ' ' << format_double(set.spec().period) << ' '
      << format_double(set.separation()) << ' ' << set.size() << '\n';
  if (config) {
    out << format_double(config->sample_probability) << ' ' << format_u64(config->seed)
        << ' ' << format_double(config->tie_tol) << '\n';
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto p = set.point(i);
    for (int a = 0; a < set.dim(); ++a) {
      if (a) out << ' ';
      out << format_double(p[a]);
    }
    out << '\n';
  }
}

SeparatedSet read_header_and_points(std::istream& in, ColoringConfig* config) {
  const auto head = tokens(next_line(in, "header line"));
  if (head.size() != 4) parse_fail("header must be 'n R t count'");
  const auto dim = static_cast<int>(parse_u64(head[0], "dimension"));
  const double period = parse_double(head[1], "period");
  const double separation = parse_double(head[2], "separation");
  const auto count = parse_u64(head[3], "count");
  if (dim < 1 || dim > 64) parse_fail("unreasonable dimension");

  if (config) {
    const auto cfg = tokens(next_line(in, "coloring header line"));
    if (cfg.size() != 3) parse_fail("coloring header must be 'x seed tie_tol'");
    config->sample_probability = parse_double(cfg[0], "sample probability");
    config->seed = parse_u64(cfg[1], "seed");
    config->tie_tol = parse_double(cfg[2], "tie tolerance");
    config->separation = separation;
  }

  std::vector<double> flat;
  flat.reserve(count * static_cast<std::size_t>(dim));
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto coords = tokens(next_line(in, "coordinate line"));
    if (coords.size() != static_cast<std::size_t>(dim)) {
      parse_fail("coordinate line " + std::to_string(i) + " has " +
                 std::to_string(coords.size()) + " fields, expected " +
                 std::to_string(dim));
    }
    for (const auto& c : coords) flat.push_back(parse_double(c, "coordinate"));
  }
  return SeparatedSet(TorusSpec{dim, period}, separation, std::move(flat));
}

std::vector<std::uint8_t> read_id_line(std::istream& in, std::size_t count,
                                       const char* what) {
  std::vector<std::uint8_t> bits(count, 0);
  for (const auto& tok : tokens(next_line(in, what))) {
    const auto id = parse_u64(tok, what);
    if (id >= count) parse_fail(std::string(what) + " id out of range");
    bits[id] = 1;
  }
  return bits;
}

}  // namespace

void save_point_set(std::ostream& out, const SeparatedSet& set) {
  write_header_and_points(out, set, nullptr);
}

SeparatedSet load_point_set(std::istream& in) {
  return read_header_and_points(in, nullptr);
}

void save_coloring(std::ostream& out, const Coloring& coloring) {
  write_header_and_points(out, coloring.set(), &coloring.config());
  bool first = true;
  for (const auto id : coloring.q_ids()) {
    if (!first) out << ' ';
    out << id;
    first = false;
  }
  out << '\n';
  first = true;
  for (const auto id : coloring.s_ids()) {
    if (!first) out << ' ';
    out << id;
    first = false;
  }
  out << '\n';
}

Coloring load_coloring(std::istream& in) {
  ColoringConfig config;
  auto set = std::make_shared<SeparatedSet>(read_header_and_points(in, &config));
  auto q = read_id_line(in, set->size(), "Q id line");
  auto s = read_id_line(in, set->size(), "S id line");
  return Coloring::from_parts(std::move(set), config, std::move(q), std::move(s));
}

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}
std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}
}  // namespace

void save_point_set_file(const std::string& path, const SeparatedSet& set) {
  auto out = open_out(path);
  save_point_set(out, set);
  if (!out) throw std::runtime_error("write failed: " + path);
}

SeparatedSet load_point_set_file(const std::string& path) {
  auto in = open_in(path);
  return load_point_set(in);
}

void save_coloring_file(const std::string& path, const Coloring& coloring) {
  auto out = open_out(path);
  save_coloring(out, coloring);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Coloring load_coloring_file(const std::string& path) {
  auto in = open_in(path);
  return load_coloring(in);
}

}  // namespace redblue::io
