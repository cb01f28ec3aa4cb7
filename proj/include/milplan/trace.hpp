#pragma once

#include <ostream>
#include <string>

#include "milplan/germ.hpp"
#include "milplan/path.hpp"

namespace milplan {

enum class TraceFormat { Csv, Json };

TraceFormat trace_format_from_string(const std::string& s);

struct TraceOptions {
  int samples = 256;                // >= 2, includes both endpoints
  const GermSpec* germ = nullptr;   // appends f1..fp columns when set
};

// Shortest exact decimal is not what we want for byte-stable files across
// writers; traces pin 17 significant digits instead.
std::string format_double(double v);

// Columns: t, x1..xk and optionally f1..fp. Rows at t_i = i/(samples-1);
// deterministic bytes for fixed inputs. '.' decimal separator, '\n' line
// ends, no locale involvement.
void write_trace(std::ostream& out, const Path& path, const TraceOptions& opts, TraceFormat format);

void export_trace(const Path& path, const TraceOptions& opts, const std::string& file,
                  TraceFormat format);

}  // namespace milplan
