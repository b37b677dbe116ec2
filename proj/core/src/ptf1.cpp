// Copyright 2026 The ptr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ptr/ptf1.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ptr/errors.hpp"

namespace ptr::ptf1 {

namespace {

using json = nlohmann::json;

void put_double(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  }
  out.write(bytes, 8);
}

double get_double(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw FormatError("PTF1: truncated payload");
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return std::bit_cast<double>(bits);
}

void put_payload(std::ostream& out, const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      put_double(out, m(i, j).real());
      put_double(out, m(i, j).imag());
    }
  }
  if (!out) throw FormatError("PTF1: write failed");
}

ComplexMatrix get_payload(std::istream& in, std::size_t rows,
                          std::size_t cols) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows),
                  static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = get_double(in);
      const double im = get_double(in);
      m(i, j) = cd(re, im);
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("PTF1: trailing bytes after payload");
  }
  return m;
}

json read_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("PTF1: missing header");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("PTF1: malformed header: ") + e.what());
  }
  if (!header.is_object() || header.value("format", "") != "PTF1") {
    throw FormatError("PTF1: not a PTF1 file");
  }
  return header;
}

template <class T>
T field(const json& header, const char* name) {
  try {
    return header.at(name).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("PTF1: missing or invalid field '") + name +
                      "'");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("PTF1: cannot open " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("PTF1: cannot open " + path.string());
  return in;
}

}  // namespace

void write(std::ostream& out, const ProcessTensor& pt) {
  json header = {{"format", "PTF1"},
                 {"kind", "process_tensor"},
                 {"system_dim", pt.system_dim()},
                 {"k", pt.steps()},
                 {"times", pt.times()},
                 {"leg_labels", pt.legs().labels()},
                 {"leg_dims", pt.legs().dims()},
                 {"trace_convention", "tp_choi_trace_d"}};
  out << header.dump() << '\n';
  put_payload(out, pt.choi());
}

void write(const std::filesystem::path& path, const ProcessTensor& pt) {
  auto out = open_out(path);
  write(out, pt);
}

ProcessTensor read(std::istream& in) {
  const json header = read_header(in);
  if (header.value("kind", "process_tensor") != "process_tensor") {
    throw FormatError("PTF1: file does not hold a process tensor");
  }
  if (header.value("trace_convention", "") != "tp_choi_trace_d") {
    throw FormatError("PTF1: unsupported trace convention");
  }
  const auto d = field<std::size_t>(header, "system_dim");
  const auto k = field<std::size_t>(header, "k");
  auto times = field<std::vector<double>>(header, "times");
  const auto labels = field<std::vector<std::string>>(header, "leg_labels");
  const auto dims = field<std::vector<std::size_t>>(header, "leg_dims");
  if (d == 0 || k > 16 || times.size() != k + 1) {
    throw FormatError("PTF1: inconsistent system_dim, k or times");
  }
  const LegShape expected = ProcessTensor::canonical_legs(d, k);
  if (labels != expected.labels() || dims != expected.dims()) {
    throw FormatError("PTF1: leg labels or dims do not match canonical order");
  }
  const std::size_t n = expected.total_dim();
  ComplexMatrix choi = get_payload(in, n, n);
  try {
    return ProcessTensor(std::move(choi), d, std::move(times));
  } catch (const DimensionError& e) {
    throw FormatError(std::string("PTF1: ") + e.what());
  }
}

ProcessTensor read(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read(in);
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  json header = {{"format", "PTF1"},
                 {"kind", "matrix"},
                 {"rows", m.rows()},
                 {"cols", m.cols()}};
  out << header.dump() << '\n';
  put_payload(out, m);
}

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m) {
  auto out = open_out(path);
  write_matrix(out, m);
}

ComplexMatrix read_matrix(std::istream& in) {
  const json header = read_header(in);
  if (header.value("kind", "") != "matrix") {
    throw FormatError("PTF1: file does not hold a plain matrix");
  }
  const auto rows = field<std::size_t>(header, "rows");
  const auto cols = field<std::size_t>(header, "cols");
  if (rows == 0 || cols == 0 || rows > 4096 || cols > 4096) {
    throw FormatError("PTF1: implausible matrix shape");
  }
  return get_payload(in, rows, cols);
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

}  // namespace ptr::ptf1
