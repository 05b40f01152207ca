#include "sbrl/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sbrl/text.hpp"

namespace sbrl {

void write_csv(std::ostream& out, const EpisodeLog& log) {
  out << kCsvHeader << '\n';
  for (const auto& r : log) {
    out << r.episode << ',' << format_double(r.reward) << ',' << r.steps << ','
        << format_double(r.epsilon) << ',' << (r.mean_loss ? format_double(*r.mean_loss) : "")
        << ',' << (r.passed ? 1 : 0) << '\n';
  }
}

EpisodeLog parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw std::invalid_argument("csv: missing header '" + std::string(kCsvHeader) + "'");
  }
  EpisodeLog log;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto cells = split(trim(line), ',');
    if (cells.size() != 6) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected 6 fields");
    }
    try {
      EpisodeRecord r;
      r.episode = parse_integer(cells[0]);
      r.reward = parse_double(cells[1]);
      r.steps = parse_integer(cells[2]);
      r.epsilon = parse_double(cells[3]);
      if (!trim(cells[4]).empty()) {
        r.mean_loss = parse_double(cells[4]);
      }
      const auto passed = parse_integer(cells[5]);
      if (passed != 0 && passed != 1) {
        throw std::invalid_argument("passed must be 0 or 1");
      }
      r.passed = passed == 1;
      log.push_back(r);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("error while writing " + path.string());
  }
}

}  // namespace

void export_csv(const EpisodeLog& log, const std::filesystem::path& path) {
  if (log.empty()) {
    throw std::invalid_argument("export_csv: empty log");
  }
  auto out = open_for_write(path);
  write_csv(out, log);
  finish(out, path);
}

EpisodeLog read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  try {
    return parse_csv(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

/// Round step (1, 2 or 5 times a power of ten) giving roughly `target` ticks.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

std::string tick_label(double v) {
  if (std::abs(v - std::round(v)) < 1e-9) {
    return std::to_string(static_cast<long long>(std::round(v)));
  }
  return format_double(v);
}

}  // namespace

std::string render_reward_svg(const std::vector<NamedLog>& logs, const PlotOptions& options) {
  if (logs.empty()) {
    throw std::invalid_argument("render_reward_plot: no logs");
  }
  double x_max = 1.0;
  double y_lo = options.y_min.value_or(0.0);
  double y_hi = options.y_max.value_or(1.0);
  for (const auto& named : logs) {
    if (named.log.empty()) {
      throw std::invalid_argument("render_reward_plot: log '" + named.name + "' is empty");
    }
    for (const auto& r : named.log) {
      x_max = std::max(x_max, static_cast<double>(r.episode));
      y_lo = std::min(y_lo, r.reward);
      y_hi = std::max(y_hi, r.reward);
    }
  }
  if (y_hi <= y_lo) {
    y_hi = y_lo + 1.0;
  }

  const double w = options.width;
  const double h = options.height;
  const double left = 70, right = 170, top = 40, bottom = 50;
  const double pw = w - left - right;
  const double ph = h - top - bottom;
  auto sx = [&](double x) { return left + pw * x / x_max; };
  auto sy = [&](double y) { return top + ph * (1.0 - (y - y_lo) / (y_hi - y_lo)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height
      << "\" font-family=\"sans-serif\" font-size=\"12\" data-y-min=\"" << format_double(y_lo)
      << "\" data-y-max=\"" << format_double(y_hi) << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(options.title) << "</text>\n";

  // Axes and ticks.
  svg << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  svg << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(left + pw)
      << "\" y2=\"" << fixed(top + ph) << "\"/>\n";
  svg << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left)
      << "\" y2=\"" << fixed(top + ph) << "\"/>\n";
  svg << "</g>\n<g class=\"ticks\">\n";
  const double xs = nice_step(x_max, 8);
  for (double x = 0.0; x <= x_max + 1e-9; x += xs) {
    svg << "<line x1=\"" << fixed(sx(x)) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(sx(x))
        << "\" y2=\"" << fixed(top + ph + 5) << "\" stroke=\"black\"/>"
        << "<text x=\"" << fixed(sx(x)) << "\" y=\"" << fixed(top + ph + 18)
        << "\" text-anchor=\"middle\">" << tick_label(x) << "</text>\n";
  }
  const double ys = nice_step(y_hi - y_lo, 8);
  for (double y = std::ceil(y_lo / ys) * ys; y <= y_hi + 1e-9; y += ys) {
    svg << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(sy(y)) << "\" x2=\"" << fixed(left)
        << "\" y2=\"" << fixed(sy(y)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(sy(y) + 4)
        << "\" text-anchor=\"end\">" << tick_label(y) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(h - 10)
      << "\" text-anchor=\"middle\">Episode</text>\n";
  svg << "<text x=\"16\" y=\"" << fixed(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fixed(top + ph / 2) << ")\">Accumulated reward</text>\n";

  for (std::size_t i = 0; i < logs.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (const auto& r : logs[i].log) {
      svg << (first ? "" : " ") << fixed(sx(static_cast<double>(r.episode))) << ','
          << fixed(sy(r.reward));
      first = false;
    }
    svg << "\"/>\n";
  }

  svg << "<g class=\"legend\">\n";
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double ly = top + 10 + 20.0 * static_cast<double>(i);
    const double lx = left + pw + 15;
    svg << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 25)
        << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << kPalette[i % std::size(kPalette)]
        << "\" stroke-width=\"2\"/><text x=\"" << fixed(lx + 30) << "\" y=\"" << fixed(ly + 4)
        << "\">" << escape_xml(logs[i].name) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void render_reward_plot(const std::vector<NamedLog>& logs, const std::filesystem::path& path,
                        const PlotOptions& options) {
  const auto svg = render_reward_svg(logs, options);
  auto out = open_for_write(path);
  out << svg;
  finish(out, path);
}

}  // namespace sbrl
