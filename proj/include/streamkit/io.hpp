#ifndef STREAMKIT_IO_HPP
#define STREAMKIT_IO_HPP

#include <string>
#include <vector>

#include "streamkit/fft.hpp"
#include "streamkit/img.hpp"
#include "streamkit/la.hpp"

namespace sk {
namespace io {

// .dat: UTF-8 text, one sample per line; complex data uses two
// whitespace-separated columns (i q). Blank lines and '#' comments skipped.
std::vector<double> read_dat(const std::string& path);
void write_dat(const std::string& path, const std::vector<double>& values);

fft::Spectrum read_dat_complex(const std::string& path);
void write_dat_complex(const std::string& path, const fft::Spectrum& values);

// Matrix text format: first line "rows cols", then one row per line.
la::Matrix read_matrix(const std::string& path);
void write_matrix(const std::string& path, const la::Matrix& m);

// .crs text format: line 1 "n m nnz", line 2 rowPtr, line 3 columnIndex,
// line 4 values.
la::CrsMatrix read_crs(const std::string& path);
void write_crs(const std::string& path, const la::CrsMatrix& m);

// Binary PPM (P6), 8-bit channels.
img::Frame read_ppm(const std::string& path);
void write_ppm(const std::string& path, const img::Frame& f);

// index,value[,imag] rows for external plotting.
void write_csv(const std::string& path, const std::vector<double>& values);
void write_csv(const std::string& path, const fft::Spectrum& values);

// Largest absolute difference between two sample files (elementwise; a
// length mismatch is reported as infinity).
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace io
}  // namespace sk

#endif
