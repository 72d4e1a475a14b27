#include "escom/bench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "escom/error.hpp"

namespace escom::bench {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) fail(Errc::io_error, "write to '" + path + "' failed");
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

template <class T>
T parse_field(const std::string& s, std::size_t line, const char* what) {
  T v{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    fail(Errc::io_error, "line " + std::to_string(line) + ": bad " + what +
                             " '" + s + "'");
  }
  return v;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
  if (rows.empty()) fail(Errc::io_error, "no rows to write");
  out << kAggregateHeader << '\n';
  for (const AggregateRow& r : rows) {
    out << r.method << ',' << r.param_name << ',' << format_real(r.param_value)
        << ',' << format_real(r.mean_iterations) << ',' << fixed4(r.mean_time_s)
        << ',' << r.samples << ',' << r.flagged_runs << '\n';
  }
}

void write_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
  auto out = open_out(path);
  write_csv(rows, out);
  finish(out, path);
}

std::vector<AggregateRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split(line, ',').size() != 7 ||
      line.rfind(kAggregateHeader, 0) != 0) {
    fail(Errc::io_error, "missing aggregate CSV header");
  }
  std::vector<AggregateRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line, ',');
    if (f.size() != 7) {
      fail(Errc::io_error, "line " + std::to_string(line_no) +
                               ": expected 7 fields, got " +
                               std::to_string(f.size()));
    }
    AggregateRow r;
    r.method = f[0];
    r.param_name = f[1];
    r.param_value = parse_field<double>(f[2], line_no, "param_value");
    r.mean_iterations = parse_field<double>(f[3], line_no, "mean_iterations");
    r.mean_time_s = parse_field<double>(f[4], line_no, "mean_time_s");
    r.samples = parse_field<std::size_t>(f[5], line_no, "samples");
    r.flagged_runs = parse_field<std::size_t>(f[6], line_no, "flagged_runs");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<AggregateRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
  return read_csv(in);
}

void write_svg_lines(const std::vector<AggregateRow>& rows, std::ostream& out,
                     const std::string& title) {
  if (rows.empty()) fail(Errc::io_error, "no rows to plot");
  constexpr double kW = 640, kH = 400, kL = 70, kR = 130, kT = 40, kB = 50;
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                        "#9467bd", "#ff7f0e", "#8c564b"};

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double x0 = rows[0].param_value, x1 = x0;
  double y0 = 0.0, y1 = rows[0].mean_iterations;
  for (const AggregateRow& r : rows) {
    if (!series.count(r.method)) order.push_back(r.method);
    series[r.method].emplace_back(r.param_value, r.mean_iterations);
    x0 = std::min(x0, r.param_value);
    x1 = std::max(x1, r.param_value);
    y1 = std::max(y1, r.mean_iterations);
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  auto px = [&](double x) { return kL + (x - x0) / (x1 - x0) * (kW - kL - kR); };
  auto py = [&](double y) { return kH - kB - (y - y0) / (y1 - y0) * (kH - kT - kB); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\">"
        << escape_xml(title) << "</text>\n";
  }
  out << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\""
      << kW - kR << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL
      << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << kH - kB + 18
        << "\" text-anchor=\"middle\">" << format_real(xv) << "</text>\n";
    out << "<text x=\"" << kL - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\">" << format_real(yv) << "</text>\n";
  }
  out << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 10
      << "\" text-anchor=\"middle\">" << escape_xml(rows[0].param_name)
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << (kT + kH - kB) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (kT + kH - kB) / 2 << ")\">mean iterations</text>\n";

  std::size_t idx = 0;
  for (const std::string& method : order) {
    const char* color = kColors[idx % std::size(kColors)];
    out << "<polyline data-method=\"" << escape_xml(method)
        << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& [x, y] : series[method]) {
      out << (first ? "" : " ") << px(x) << ',' << py(y);
      first = false;
    }
    out << "\"/>\n";
    for (const auto& [x, y] : series[method]) {
      out << "<circle data-method=\"" << escape_xml(method) << "\" data-x=\""
          << format_real(x) << "\" data-y=\"" << format_real(y) << "\" cx=\""
          << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
    const double ly = kT + 18.0 * static_cast<double>(idx);
    out << "<text x=\"" << kW - kR + 10 << "\" y=\"" << ly + 4 << "\" fill=\""
        << color << "\">" << escape_xml(method) << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
}

void write_svg_lines(const std::vector<AggregateRow>& rows,
                     const std::string& path, const std::string& title) {
  auto out = open_out(path);
  write_svg_lines(rows, out, title);
  finish(out, path);
}

void write_trace_csv(const RunRecord& record, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const IterationRow& r : record.rows) {
    out << r.n << ',' << format_real(r.norm_x) << ','
        << format_real(r.step_norm) << ',' << format_real(r.sigma) << ','
        << format_real(r.beta) << ',' << format_real(r.phi) << '\n';
  }
}

void write_trace_csv(const RunRecord& record, const std::string& path) {
  auto out = open_out(path);
  write_trace_csv(record, out);
  finish(out, path);
}

}  // namespace escom::bench
