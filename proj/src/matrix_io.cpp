#include "amgm/matrix_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace amgm {

std::string format_double(double v) {
  std::array<char, 40> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw DomainError("cannot parse number: '" + std::string(token) + "'");
  }
  return v;
}

namespace {

std::string next_line(std::istream& is, const char* what) {
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  throw DomainError(std::string("unexpected end of input reading ") + what);
}

std::size_t parse_count(const std::string& line, const char* what) {
  std::size_t n = 0;
  auto res = std::from_chars(line.data(), line.data() + line.size(), n);
  if (res.ec != std::errc{} || res.ptr != line.data() + line.size() || n == 0) {
    throw DomainError(std::string("invalid ") + what + " line: '" + line + "'");
  }
  return n;
}

}  // namespace

void write_matrix(std::ostream& os, const Matrix& m) {
  os << m.dim() << '\n';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is) {
  const std::size_t d = parse_count(next_line(is, "matrix dimension"), "dimension");
  std::vector<double> data;
  data.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::string line = next_line(is, "matrix row");
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t sp = line.find(' ', pos);
      const std::size_t end = sp == std::string::npos ? line.size() : sp;
      data.push_back(parse_double(std::string_view(line).substr(pos, end - pos)));
      ++count;
      if (sp == std::string::npos) break;
      pos = sp + 1;
    }
    if (count != d) throw DomainError("matrix row has wrong number of entries");
  }
  return Matrix(d, std::move(data));
}

std::string matrix_to_string(const Matrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

Matrix matrix_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

void write_family(std::ostream& os, const std::vector<Matrix>& members) {
  os << members.size() << '\n';
  for (const auto& m : members) write_matrix(os, m);
}

std::vector<Matrix> read_family(std::istream& is) {
  const std::size_t n = parse_count(next_line(is, "family size"), "family size");
  std::vector<Matrix> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(read_matrix(is));
  return out;
}

}  // namespace amgm
