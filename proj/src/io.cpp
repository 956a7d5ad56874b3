#include "uc/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uc/errors.hpp"

namespace uc {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file: " + path);
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_double(const std::string& field, std::size_t line_no) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{}) {
    std::ostringstream msg;
    msg << "cannot parse number '" << field << "' on line " << line_no;
    throw UsageError(msg.str());
  }
  (void)ptr;
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Distribution read_distribution_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  long long prev_k = -1;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      continue;  // header row `k,p`
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      std::ostringstream msg;
      msg << "missing comma on line " << line_no;
      throw UsageError(msg.str());
    }
    const long long k =
        static_cast<long long>(parse_double(line.substr(0, comma), line_no));
    const double p = parse_double(line.substr(comma + 1), line_no);
    if (k <= prev_k) {
      std::ostringstream msg;
      msg << "indices must increase (line " << line_no << ")";
      throw UsageError(msg.str());
    }
    prev_k = k;
    values.resize(static_cast<std::size_t>(k) + 1, 0.0);
    values[static_cast<std::size_t>(k)] = p;
  }
  if (values.empty()) throw UsageError("no data rows in distribution file");
  return Distribution::from_values(std::move(values));
}

Distribution read_distribution_csv(const std::string& path) {
  auto in = open_input(path);
  return read_distribution_csv(in);
}

void write_distribution_csv(std::ostream& out, const Distribution& p) {
  out << "k,p\n";
  const auto& v = p.values();
  for (std::size_t k = 0; k < v.size(); ++k)
    out << k << ',' << format_double(v[k]) << '\n';
}

void write_distribution_csv(const std::string& path, const Distribution& p) {
  auto out = open_output(path);
  write_distribution_csv(out, p);
}

void write_coeffs_csv(std::ostream& out, const CoeffVector& a) {
  out << "k,a\n";
  for (std::size_t k = 0; k < a.size(); ++k)
    out << k << ',' << format_double(a.values[k]) << '\n';
}

void write_coeffs_csv(const std::string& path, const CoeffVector& a) {
  auto out = open_output(path);
  write_coeffs_csv(out, a);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,mean,M1,Mr,tv_to_target,tail_mass\n";
  for (const auto& s : traj.samples) {
    out << format_double(s.t) << ',' << format_double(s.mean) << ','
        << format_double(s.M1) << ',' << format_double(s.Mr) << ',';
    if (s.tv_to_target) out << format_double(*s.tv_to_target);
    out << ',' << format_double(s.tail_mass) << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_output(path);
  write_trajectory_csv(out, traj);
}

}  // namespace uc
