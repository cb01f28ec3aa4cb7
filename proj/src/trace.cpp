#include "milplan/trace.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace milplan {

TraceFormat trace_format_from_string(const std::string& s) {
  if (s == "csv") return TraceFormat::Csv;
  if (s == "json") return TraceFormat::Json;
  throw std::invalid_argument("unknown trace format: " + s);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> column_names(Eigen::Index k, const GermSpec* germ) {
  std::vector<std::string> cols;
  cols.push_back("t");
  for (Eigen::Index i = 0; i < k; ++i) cols.push_back("x" + std::to_string(i + 1));
  if (germ != nullptr)
    for (int i = 0; i < germ->map.codomain_dim(); ++i) cols.push_back("f" + std::to_string(i + 1));
  return cols;
}

}  // namespace

void write_trace(std::ostream& out, const Path& path, const TraceOptions& opts,
                 TraceFormat format) {
  if (opts.samples < 2) throw std::invalid_argument("write_trace: need at least 2 samples");
  if (opts.germ != nullptr && opts.germ->map.domain_dim() != path.dim())
    throw std::invalid_argument("write_trace: germ domain does not match path dimension");

  const std::vector<std::string> cols = column_names(path.dim(), opts.germ);

  if (format == TraceFormat::Csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i > 0) out << ',';
      out << cols[i];
    }
    out << '\n';
  } else {
    out << "{\"columns\":[";
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i > 0) out << ',';
      out << '"' << cols[i] << '"';
    }
    out << "],\"rows\":[";
  }

  for (int i = 0; i < opts.samples; ++i) {
    const double t = static_cast<double>(i) / (opts.samples - 1);
    const Eigen::VectorXd x = path(t);

    std::vector<std::string> fields;
    fields.push_back(format_double(t));
    for (Eigen::Index j = 0; j < x.size(); ++j) fields.push_back(format_double(x[j]));
    if (opts.germ != nullptr) {
      const Eigen::VectorXd fx = opts.germ->map.eval(x);
      for (Eigen::Index j = 0; j < fx.size(); ++j) fields.push_back(format_double(fx[j]));
    }

    if (format == TraceFormat::Csv) {
      for (std::size_t j = 0; j < fields.size(); ++j) {
        if (j > 0) out << ',';
        out << fields[j];
      }
      out << '\n';
    } else {
      if (i > 0) out << ',';
      out << '[';
      for (std::size_t j = 0; j < fields.size(); ++j) {
        if (j > 0) out << ',';
        out << fields[j];
      }
      out << ']';
    }
  }
  if (format == TraceFormat::Json) out << "]}\n";
}

void export_trace(const Path& path, const TraceOptions& opts, const std::string& file,
                  TraceFormat format) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("export_trace: cannot open " + file);
  write_trace(out, path, opts, format);
  out.flush();
  if (!out) throw std::runtime_error("export_trace: write failed for " + file);
}

}  // namespace milplan
