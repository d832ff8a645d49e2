#include "manybeam/csvio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "manybeam/types.hpp"

namespace manybeam {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14E", v);
  std::string s(buf);
  std::replace(s.begin(), s.end(), ',', '.');  // immune to an embedding app's locale
  return s;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

double parse_double(const std::string& field, const char* what) {
  if (field == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
  if (ec != std::errc() || ptr != last)
    throw IoError(std::string("curve csv: bad ") + what + " value '" + field + "'");
  return v;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

void write_curve_csv(std::ostream& os, const RockingCurve& curve) {
  os << "# manybeam-curve v1\n";
  os << "# method: " << curve.method << "\n";
  os << "# dz: " << format_full(curve.dz) << "\n";
  if (curve.method != "conventional") {
    os << "# rhst_threshold: "
       << (std::isinf(curve.rhst_threshold) ? std::string("inf")
                                            : format_full(curve.rhst_threshold))
       << "\n";
  }
  os << "# rods: " << curve.rod_count() << "\n";
  os << "theta0,theta1";
  for (const auto& label : curve.rod_labels) os << ",eta" << label;
  os << "\n";
  for (long r = 0; r < curve.rows(); ++r) {
    os << format_full(curve.theta0[(std::size_t)r]) << ','
       << format_full(curve.theta1[(std::size_t)r]);
    for (int c = 0; c < curve.eta.cols(); ++c) os << ',' << format_full(curve.eta(r, c));
    os << "\n";
  }
}

void write_curve_csv(const std::string& path, const RockingCurve& curve) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_curve_csv(os, curve);
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed");
}

RockingCurve read_curve_csv(std::istream& is) {
  RockingCurve curve;
  std::string line;
  bool saw_header = false;
  int ncols = 0;
  std::vector<double> etas;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      auto grab = [&](const char* key) -> std::optional<std::string> {
        const std::string pat = std::string("# ") + key + ":";
        if (t.rfind(pat, 0) == 0) return trim(t.substr(pat.size()));
        return std::nullopt;
      };
      if (auto v = grab("method")) curve.method = *v;
      if (auto v = grab("dz")) curve.dz = parse_double(*v, "dz");
      if (auto v = grab("rhst_threshold")) curve.rhst_threshold = parse_double(*v, "threshold");
      continue;
    }
    std::vector<std::string> fields = split_csv(t);
    if (!saw_header) {
      if (fields.size() < 3 || fields[0] != "theta0" || fields[1] != "theta1")
        throw IoError("curve csv: expected header starting with theta0,theta1");
      for (std::size_t i = 2; i < fields.size(); ++i) {
        if (fields[i].rfind("eta", 0) != 0)
          throw IoError("curve csv: intensity columns must be named eta(...)");
        curve.rod_labels.push_back(fields[i].substr(3));
      }
      ncols = (int)fields.size();
      saw_header = true;
      continue;
    }
    if ((int)fields.size() != ncols)
      throw IoError("curve csv: row has " + std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(ncols));
    curve.theta0.push_back(parse_double(fields[0], "theta0"));
    curve.theta1.push_back(parse_double(fields[1], "theta1"));
    for (int c = 2; c < ncols; ++c) etas.push_back(parse_double(fields[(std::size_t)c], "eta"));
  }
  if (!saw_header) throw IoError("curve csv: missing header row");
  const long rows = (long)curve.theta0.size();
  if (rows == 0) throw IoError("curve csv: no data rows");
  const int nrods = ncols - 2;
  curve.eta = RealMatrix(rows, nrods);
  for (long r = 0; r < rows; ++r)
    for (int c = 0; c < nrods; ++c) curve.eta(r, c) = etas[(std::size_t)(r * nrods + c)];
  return curve;
}

RockingCurve read_curve_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "'");
  return read_curve_csv(is);
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "# manybeam-bench v1\n";
  os << "method,dz,repeats,median_seconds,err_reference,err_baseline,status,detail\n";
  for (const auto& rec : records) {
    os << rec.method << ',' << format_full(rec.dz) << ',' << rec.repeats << ','
       << format_full(rec.median_seconds) << ','
       << (std::isinf(rec.err_reference) ? std::string("inf") : format_full(rec.err_reference))
       << ',';
    if (rec.err_baseline)
      os << (std::isinf(*rec.err_baseline) ? std::string("inf") : format_full(*rec.err_baseline));
    os << ',' << rec.status << ',' << sanitize(rec.detail) << "\n";
  }
}

void write_bench_csv(const std::string& path, const std::vector<BenchRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_bench_csv(os, records);
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed");
}

}  // namespace manybeam
