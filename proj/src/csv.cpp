#include "hjsplit/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hjsplit/errors.hpp"

namespace hjsplit {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_trace_csv(const Trace& trace, const std::string& path) {
  if (trace.empty()) throw Error("emit_trace_csv: trace is empty");
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw Error("emit_trace_csv: cannot open " + path);
  out << "iter,objective,residual,t_k,delta_k,samples,wall_ms\n";
  for (const auto& r : trace.rows) {
    out << r.iter << ',' << format_g17(r.objective) << ',';
    if (r.residual) out << format_g17(*r.residual);
    out << ',' << format_g17(r.t_k) << ',' << format_g17(r.delta_k) << ',' << r.samples_used << ','
        << format_g17(r.wall_ms) << '\n';
  }
  if (!out) throw Error("emit_trace_csv: write failed for " + path);
}

Trace parse_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("parse_trace_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "iter,objective,residual,t_k,delta_k,samples,wall_ms")
    throw Error("parse_trace_csv: bad header in " + path);
  Trace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    while (fields.size() < 7) fields.push_back("");
    TraceRow r;
    r.iter = std::stoi(fields[0]);
    r.objective = std::stod(fields[1]);
    if (!fields[2].empty()) r.residual = std::stod(fields[2]);
    r.t_k = std::stod(fields[3]);
    r.delta_k = std::stod(fields[4]);
    r.samples_used = std::stol(fields[5]);
    r.wall_ms = std::stod(fields[6]);
    trace.push(std::move(r));
  }
  return trace;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_summary_csv: cannot open " + path);
  out << "config,status,iters,final_objective,final_residual,final_violation,wall_ms,instance_hash\n";
  for (const auto& r : rows) {
    out << r.config << ',' << r.status << ',' << r.iters << ',' << format_g17(r.final_objective)
        << ',';
    if (r.final_residual) out << format_g17(*r.final_residual);
    out << ',' << format_g17(r.final_violation) << ',' << format_g17(r.wall_ms) << ','
        << r.instance_hash << '\n';
  }
  if (!out) throw Error("write_summary_csv: write failed for " + path);
}

namespace {

void polyline(std::ostream& out, const std::vector<double>& xs, const std::vector<double>& ys,
              double w, double h, const char* color) {
  if (xs.size() < 2) return;
  double xmin = xs.front(), xmax = xs.back();
  double ymin = ys[0], ymax = ys[0];
  for (double y : ys) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double px = 40 + (w - 50) * (xs[i] - xmin) / (xmax - xmin);
    const double py = h - 30 - (h - 50) * (ys[i] - ymin) / (ymax - ymin);
    out << px << ',' << py << ' ';
  }
  out << "\"/>\n";
}

}  // namespace

void write_trace_svg(const Trace& trace, const std::string& title, const std::string& path) {
  const double w = 640, h = 360;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_trace_svg: cannot open " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n";
  out << "<text x=\"40\" y=\"18\" font-size=\"13\">" << title
      << " (objective: blue; log10 residual: red)</text>\n";
  std::vector<double> xs, obj, res_x, res;
  for (const auto& r : trace.rows) {
    xs.push_back(r.iter);
    obj.push_back(r.objective);
    if (r.residual && *r.residual > 0) {
      res_x.push_back(r.iter);
      res.push_back(std::log10(*r.residual));
    }
  }
  polyline(out, xs, obj, w, h, "#1f77b4");
  polyline(out, res_x, res, w, h, "#d62728");
  out << "</svg>\n";
}

}  // namespace hjsplit
