#include "streamkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sk {
namespace io {

namespace {

std::ifstream open_in(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

// Data lines only: blanks and '#' comments dropped.
std::vector<std::string> data_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    std::istringstream probe(line);
    std::string token;
    if (probe >> token) lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::vector<double> read_dat(const std::string& path) {
  auto in = open_in(path);
  std::vector<double> out;
  for (const auto& line : data_lines(in)) {
    std::istringstream row(line);
    double v;
    if (!(row >> v)) throw std::runtime_error("bad sample in '" + path + "': " + line);
    out.push_back(v);
  }
  return out;
}

void write_dat(const std::string& path, const std::vector<double>& values) {
  auto out = open_out(path);
  out << std::setprecision(17);
  for (double v : values) out << v << "\n";
}

fft::Spectrum read_dat_complex(const std::string& path) {
  auto in = open_in(path);
  fft::Spectrum out;
  for (const auto& line : data_lines(in)) {
    std::istringstream row(line);
    double re, im = 0.0;
    if (!(row >> re)) throw std::runtime_error("bad sample in '" + path + "': " + line);
    row >> im;  // single-column data reads as purely real
    out.real.push_back(re);
    out.imag.push_back(im);
  }
  return out;
}

void write_dat_complex(const std::string& path, const fft::Spectrum& values) {
  auto out = open_out(path);
  out << std::setprecision(17);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << values.real[i] << " " << values.imag[i] << "\n";
  }
}

la::Matrix read_matrix(const std::string& path) {
  auto in = open_in(path);
  auto lines = data_lines(in);
  if (lines.empty()) throw std::runtime_error("empty matrix file '" + path + "'");
  std::istringstream head(lines[0]);
  std::size_t rows = 0, cols = 0;
  if (!(head >> rows >> cols)) throw std::runtime_error("bad matrix header in '" + path + "'");
  if (lines.size() != rows + 1) {
    throw std::runtime_error("matrix file '" + path + "' expects " + std::to_string(rows) +
                             " rows");
  }
  la::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::istringstream row(lines[r + 1]);
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(row >> m.at(r, c))) {
        throw std::runtime_error("short matrix row in '" + path + "'");
      }
    }
  }
  return m;
}

void write_matrix(const std::string& path, const la::Matrix& m) {
  auto out = open_out(path);
  out << m.rows << " " << m.cols << "\n" << std::setprecision(17);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      out << m.at(r, c) << (c + 1 == m.cols ? "\n" : " ");
    }
  }
}

la::CrsMatrix read_crs(const std::string& path) {
  auto in = open_in(path);
  auto lines = data_lines(in);
  if (lines.size() < 4) throw std::runtime_error("crs file '" + path + "' needs 4 lines");
  la::CrsMatrix m;
  std::size_t nnz = 0;
  {
    std::istringstream head(lines[0]);
    if (!(head >> m.rows >> m.cols >> nnz)) {
      throw std::runtime_error("bad crs header in '" + path + "'");
    }
  }
  auto parse_row = [&](const std::string& line, std::size_t count, auto& dst) {
    std::istringstream row(line);
    for (std::size_t i = 0; i < count; ++i) {
      typename std::remove_reference_t<decltype(dst)>::value_type v;
      if (!(row >> v)) throw std::runtime_error("short crs row in '" + path + "'");
      dst.push_back(v);
    }
  };
  parse_row(lines[1], m.rows + 1, m.row_ptr);
  parse_row(lines[2], nnz, m.column_index);
  parse_row(lines[3], nnz, m.values);
  m.validate();
  return m;
}

void write_crs(const std::string& path, const la::CrsMatrix& m) {
  auto out = open_out(path);
  out << m.rows << " " << m.cols << " " << m.values.size() << "\n";
  for (std::size_t i = 0; i < m.row_ptr.size(); ++i) {
    out << m.row_ptr[i] << (i + 1 == m.row_ptr.size() ? "\n" : " ");
  }
  for (std::size_t i = 0; i < m.column_index.size(); ++i) {
    out << m.column_index[i] << (i + 1 == m.column_index.size() ? "\n" : " ");
  }
  out << std::setprecision(17);
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    out << m.values[i] << (i + 1 == m.values.size() ? "\n" : " ");
  }
  if (m.values.empty()) out << "\n\n";
}

img::Frame read_ppm(const std::string& path) {
  auto in = open_in(path, true);
  std::string magic;
  in >> magic;
  if (magic != "P6") throw std::runtime_error("'" + path + "' is not a binary PPM");
  // Header tokens may be separated by comments.
  auto next_int = [&in, &path]() {
    for (;;) {
      int c = in.peek();
      if (c == '#') {
        std::string comment;
        std::getline(in, comment);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    std::size_t v;
    if (!(in >> v)) throw std::runtime_error("bad PPM header in '" + path + "'");
    return v;
  };
  std::size_t width = next_int();
  std::size_t height = next_int();
  std::size_t maxval = next_int();
  if (maxval != 255) throw std::runtime_error("PPM '" + path + "' must be 8-bit");
  in.get();  // single whitespace before pixel data
  img::Frame f(height, width);
  std::vector<char> buf(height * width * 3);
  in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
    throw std::runtime_error("short pixel data in '" + path + "'");
  }
  for (std::size_t i = 0; i < height * width; ++i) {
    f.data[i].r = static_cast<std::uint8_t>(buf[3 * i]);
    f.data[i].g = static_cast<std::uint8_t>(buf[3 * i + 1]);
    f.data[i].b = static_cast<std::uint8_t>(buf[3 * i + 2]);
  }
  return f;
}

void write_ppm(const std::string& path, const img::Frame& f) {
  auto out = open_out(path, true);
  out << "P6\n" << f.width << " " << f.height << "\n255\n";
  std::vector<char> buf(f.height * f.width * 3);
  for (std::size_t i = 0; i < f.height * f.width; ++i) {
    buf[3 * i] = static_cast<char>(f.data[i].r);
    buf[3 * i + 1] = static_cast<char>(f.data[i].g);
    buf[3 * i + 2] = static_cast<char>(f.data[i].b);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_csv(const std::string& path, const std::vector<double>& values) {
  auto out = open_out(path);
  out << "index,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < values.size(); ++i) out << i << "," << values[i] << "\n";
}

void write_csv(const std::string& path, const fft::Spectrum& values) {
  auto out = open_out(path);
  out << "index,value,imag\n" << std::setprecision(17);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << "," << values.real[i] << "," << values.imag[i] << "\n";
  }
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace io
}  // namespace sk
