#include "rht/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>

#include <json.hpp>

namespace rht {

namespace {

std::string sig6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Per-method series of (fraction, percent error), fractions ascending.
std::map<std::string, std::vector<std::pair<double, double>>> series(const std::vector<ExperimentResult>& results) {
  std::map<std::string, std::vector<std::pair<double, double>>> out;
  for (const auto& point : results) {
    for (const auto& m : point.methods) out[m.method].emplace_back(m.malicious_fraction, 100.0 * m.error_rate);
  }
  for (auto& [_, s] : out) std::stable_sort(s.begin(), s.end());
  return out;
}

}  // namespace

std::string format_csv(const std::vector<ExperimentResult>& results) {
  std::vector<const MethodResult*> rows;
  for (const auto& point : results) {
    for (const auto& m : point.methods) rows.push_back(&m);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const MethodResult* l, const MethodResult* r) {
    if (l->method != r->method) return l->method < r->method;
    return l->malicious_fraction < r->malicious_fraction;
  });
  std::uint64_t seed = results.empty() ? 0 : results.front().seed;
  std::string out = "method,malicious_fraction,trials,error_rate,fa_rate,md_rate,seed\n";
  for (const MethodResult* m : rows) {
    out += m->method + "," + sig6(m->malicious_fraction) + "," + std::to_string(m->trials) + "," +
           sig6(m->error_rate) + "," + sig6(m->fa_rate) + "," + sig6(m->md_rate) + "," + std::to_string(seed) + "\n";
  }
  return out;
}

void emit_csv(const std::vector<ExperimentResult>& results, const std::filesystem::path& path) {
  write_file(path, format_csv(results));
}

std::string format_plot(const std::vector<ExperimentResult>& results) {
  const auto lines = series(results);
  if (results.empty() || lines.empty()) throw OutputError("nothing to plot");

  constexpr double kWidth = 720, kHeight = 460;
  constexpr double kLeft = 70, kRight = 190, kTop = 30, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double fraction) { return kLeft + fraction * plot_w; };
  const auto py = [&](double percent) { return kTop + (1.0 - percent / 100.0) * plot_h; };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
                                  "#7f7f7f"};

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed2(kWidth) + "\" height=\"" + fixed2(kHeight) +
         "\" viewBox=\"0 0 " + fixed2(kWidth) + " " + fixed2(kHeight) + "\" font-family=\"sans-serif\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int tick = 0; tick <= 10; ++tick) {
    const double f = tick / 10.0;
    const double pct = tick * 10.0;
    svg += "<line x1=\"" + fixed2(px(f)) + "\" y1=\"" + fixed2(py(0)) + "\" x2=\"" + fixed2(px(f)) + "\" y2=\"" +
           fixed2(py(0) + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed2(px(f)) + "\" y=\"" + fixed2(py(0) + 20) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + sig6(f) + "</text>\n";
    svg += "<line x1=\"" + fixed2(px(0)) + "\" y1=\"" + fixed2(py(pct)) + "\" x2=\"" + fixed2(px(1)) + "\" y2=\"" +
           fixed2(py(pct)) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + fixed2(px(0) - 8) + "\" y=\"" + fixed2(py(pct) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + sig6(pct) + "</text>\n";
  }
  svg += "<rect x=\"" + fixed2(kLeft) + "\" y=\"" + fixed2(kTop) + "\" width=\"" + fixed2(plot_w) + "\" height=\"" +
         fixed2(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + fixed2(kLeft + plot_w / 2) + "\" y=\"" + fixed2(kHeight - 15) +
         "\" font-size=\"13\" text-anchor=\"middle\">Proportion of malicious robots</text>\n";
  svg += "<text x=\"18\" y=\"" + fixed2(kTop + plot_h / 2) + "\" font-size=\"13\" text-anchor=\"middle\" " +
         "transform=\"rotate(-90 18 " + fixed2(kTop + plot_h / 2) + ")\">Percent error</text>\n";

  std::size_t index = 0;
  for (const auto& [name, points] : lines) {
    const char* color = kColors[index % std::size(kColors)];
    std::string pts;
    for (const auto& [f, pct] : points) pts += (pts.empty() ? "" : " ") + fixed2(px(f)) + "," + fixed2(py(pct));
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" + pts +
           "\"/>\n";
    for (const auto& [f, pct] : points) {
      svg += "<circle cx=\"" + fixed2(px(f)) + "\" cy=\"" + fixed2(py(pct)) + "\" r=\"2.5\" fill=\"" + color +
             "\"/>\n";
    }
    const double ly = kTop + 10 + 20.0 * static_cast<double>(index);
    const double lx = kLeft + plot_w + 15;
    svg += "<line x1=\"" + fixed2(lx) + "\" y1=\"" + fixed2(ly) + "\" x2=\"" + fixed2(lx + 25) + "\" y2=\"" +
           fixed2(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed2(lx + 32) + "\" y=\"" + fixed2(ly + 4) + "\" font-size=\"12\">" + xml_escape(name) +
           "</text>\n";
    ++index;
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::vector<ExperimentResult>& results, const std::filesystem::path& path) {
  write_file(path, format_plot(results));
}

std::string format_table(const std::vector<ExperimentResult>& results) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-22s %9s %8s %10s %9s %9s\n", "method", "fraction", "trials", "error[%]", "FA[%]",
                "MD[%]");
  out += buf;
  for (const auto& point : results) {
    for (const auto& m : point.methods) {
      std::snprintf(buf, sizeof buf, "%-22s %9.3f %8zu %10.2f %9.2f %9.2f\n", m.method.c_str(), m.malicious_fraction,
                    m.trials, 100.0 * m.error_rate, 100.0 * m.fa_rate, 100.0 * m.md_rate);
      out += buf;
    }
  }
  return out;
}

std::string format_manifest(const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["config_digest"] = manifest.config_digest;
  j["seed"] = manifest.seed;
  j["trials"] = manifest.trials;
  j["tool_version"] = manifest.tool_version;
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  j["outputs"] = manifest.outputs;
  return j.dump(2) + "\n";
}

void emit_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  write_file(path, format_manifest(manifest));
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace rht
