// Copyright 2026 The drne Authors.
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

#include "drne/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "drne/errors.hpp"
#include "json.hpp"

namespace drne {
namespace {

constexpr char kMagic[8] = {'D', 'R', 'N', 'E', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kCheckpointVersion = 1;

void PutU64(std::string& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

void PutU32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

void PutF64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  PutU64(out, bits);
}

class ByteReader {
 public:
  ByteReader(const std::string& data, const std::string& path) : data_(data), path_(path) {}

  std::uint64_t U64() { return Take(8); }
  std::uint32_t U32() { return static_cast<std::uint32_t>(Take(4)); }
  double F64() {
    const std::uint64_t bits = Take(8);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  bool AtEnd() const { return pos_ == data_.size(); }

 private:
  std::uint64_t Take(int bytes) {
    if (pos_ + static_cast<std::size_t>(bytes) > data_.size())
      Fail(ErrorCode::kIo, "checkpoint '" + path_ + "' is truncated");
    std::uint64_t v = 0;
    for (int k = 0; k < bytes; ++k)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + k])) << (8 * k);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }

  const std::string& data_;
  const std::string& path_;
  std::size_t pos_ = 8;
};

double MeanEntropy(const GameDefinition& game, const Vector& p) {
  double total = 0.0;
  for (int i = 0; i < game.players(); ++i) {
    for (int j = 0; j < game.scenarios(); ++j) {
      const double w = p[game.weight_offset(i) + j];
      if (w > 0.0) total -= w * std::log(w);
    }
  }
  return total / game.players();
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string FormatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string GapCurveCsv(std::span<const GapCurveRow> rows) {
  std::string out = "batch_size,seed,T,gap,residual\n";
  for (const auto& r : rows) {
    out += std::to_string(r.batch_size) + "," + std::to_string(r.seed) + "," +
           std::to_string(r.iterations) + "," + FormatReal(r.gap) + "," +
           FormatReal(r.residual) + "\n";
  }
  return out;
}

std::vector<GapCurveRow> ParseGapCurveCsv(std::string_view text) {
  std::vector<GapCurveRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "batch_size,seed,T,gap,residual")
    Fail(ErrorCode::kIo, "gap curve CSV has an unexpected header");
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    GapCurveRow r;
    unsigned long long seed = 0;
    long long t = 0;
    if (std::sscanf(line.c_str(), "%d,%llu,%lld,%lf,%lf", &r.batch_size, &seed, &t, &r.gap,
                    &r.residual) != 5) {
      Fail(ErrorCode::kIo, "gap curve CSV line " + std::to_string(line_no) + " is malformed");
    }
    r.seed = seed;
    r.iterations = t;
    rows.push_back(r);
  }
  return rows;
}

std::string GapSummaryCsv(std::span<const GapCurveRow> rows) {
  struct Acc {
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    int count = 0;
  };
  std::map<std::pair<int, std::int64_t>, Acc> acc;
  for (const auto& r : rows) {
    Acc& a = acc[{r.batch_size, r.iterations}];
    a.sum += r.gap;
    a.lo = std::min(a.lo, r.gap);
    a.hi = std::max(a.hi, r.gap);
    ++a.count;
  }
  std::string out = "batch_size,T,mean_gap,min_gap,max_gap,runs\n";
  for (const auto& [key, a] : acc) {
    out += std::to_string(key.first) + "," + std::to_string(key.second) + "," +
           FormatReal(a.sum / a.count) + "," + FormatReal(a.lo) + "," + FormatReal(a.hi) + "," +
           std::to_string(a.count) + "\n";
  }
  return out;
}

std::string HistoryCsv(const GameDefinition& game, const RunHistory& history) {
  std::string out = "t,lambda,x_norm,p_entropy,dist_to_final\n";
  for (const auto& e : history.entries) {
    out += std::to_string(e.t) + "," +
           FormatReal(StepValue(history.options.primal_schedule, e.t)) + "," +
           FormatReal(e.z.x.norm()) + "," + FormatReal(MeanEntropy(game, e.z.p)) + "," +
           FormatReal(Distance(e.z, history.final_iterate)) + "\n";
  }
  return out;
}

std::string ScenarioCsv(const GameDefinition& game) {
  const ScenarioSet& s = game.scenario_set();
  std::string out = "player,j,xi1,xi2\n";
  for (int i = 0; i < game.players(); ++i) {
    for (int j = 0; j < game.scenarios(); ++j) {
      out += std::to_string(i) + "," + std::to_string(j) + "," + FormatReal(s.xi1(i, j)) + "," +
             FormatReal(s.xi2(i, j)) + "\n";
    }
  }
  return out;
}

std::string CostVectorCsv(const GameDefinition& game) {
  const Vector& c = game.scenario_set().c;
  std::string out = "index,c\n";
  for (Eigen::Index k = 0; k < c.size(); ++k)
    out += std::to_string(k) + "," + FormatReal(c[k]) + "\n";
  return out;
}

std::string RenderGapSvg(std::span<const GapCurveRow> rows) {
  // Seed-averaged curves keyed by batch size.
  std::map<int, std::map<std::int64_t, std::pair<double, int>>> curves;
  for (const auto& r : rows) {
    auto& cell = curves[r.batch_size][r.iterations];
    cell.first += r.gap;
    ++cell.second;
  }
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& [b, curve] : curves) {
    for (const auto& [t, cell] : curve) {
      const double mean = cell.first / cell.second;
      if (t < 1 || !(mean > 0.0)) continue;
      x_lo = std::min(x_lo, std::log10(static_cast<double>(t)));
      x_hi = std::max(x_hi, std::log10(static_cast<double>(t)));
      y_lo = std::min(y_lo, std::log10(mean));
      y_hi = std::max(y_hi, std::log10(mean));
    }
  }
  if (!(x_lo <= x_hi)) x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  x_lo = std::floor(x_lo);
  x_hi = std::max(std::ceil(x_hi), x_lo + 1.0);
  y_lo = std::floor(y_lo);
  y_hi = std::max(std::ceil(y_hi), y_lo + 1.0);

  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 130, kTop = 20, kBottom = 50;
  const auto px = [&](double lx) { return kLeft + (lx - x_lo) / (x_hi - x_lo) * (kW - kLeft - kRight); };
  const auto py = [&](double ly) { return kTop + (y_hi - ly) / (y_hi - y_lo) * (kH - kTop - kBottom); };
  static constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                         "#9467bd", "#ff7f0e", "#17becf"};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
         "font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  svg += "<g stroke=\"#ddd\">\n";
  for (double d = x_lo; d <= x_hi + 1e-9; d += 1.0)
    svg += "<line x1=\"" + Fixed(px(d)) + "\" y1=\"" + Fixed(py(y_lo)) + "\" x2=\"" + Fixed(px(d)) +
           "\" y2=\"" + Fixed(py(y_hi)) + "\"/>\n";
  for (double d = y_lo; d <= y_hi + 1e-9; d += 1.0)
    svg += "<line x1=\"" + Fixed(px(x_lo)) + "\" y1=\"" + Fixed(py(d)) + "\" x2=\"" + Fixed(px(x_hi)) +
           "\" y2=\"" + Fixed(py(d)) + "\"/>\n";
  svg += "</g>\n";
  for (double d = x_lo; d <= x_hi + 1e-9; d += 1.0)
    svg += "<text x=\"" + Fixed(px(d)) + "\" y=\"" + Fixed(kH - kBottom + 16) +
           "\" text-anchor=\"middle\">1e" + std::to_string(static_cast<int>(d)) + "</text>\n";
  for (double d = y_lo; d <= y_hi + 1e-9; d += 1.0)
    svg += "<text x=\"" + Fixed(kLeft - 6) + "\" y=\"" + Fixed(py(d) + 4) +
           "\" text-anchor=\"end\">1e" + std::to_string(static_cast<int>(d)) + "</text>\n";
  svg += "<text x=\"" + Fixed((kLeft + kW - kRight) / 2) + "\" y=\"" + Fixed(kH - 12) +
         "\" text-anchor=\"middle\">iteration T</text>\n";
  svg += "<text x=\"16\" y=\"" + Fixed((kTop + kH - kBottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + Fixed((kTop + kH - kBottom) / 2) +
         ")\">restricted gap (mean over seeds)</text>\n";

  std::size_t series = 0;
  for (const auto& [b, curve] : curves) {
    const char* color = kColors[series % kColors.size()];
    std::string points;
    for (const auto& [t, cell] : curve) {
      const double mean = cell.first / cell.second;
      if (t < 1 || !(mean > 0.0)) continue;
      if (!points.empty()) points += " ";
      points += Fixed(px(std::log10(static_cast<double>(t)))) + "," + Fixed(py(std::log10(mean)));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(series);
    svg += "<line x1=\"" + Fixed(kW - kRight + 12) + "\" y1=\"" + Fixed(ly) + "\" x2=\"" +
           Fixed(kW - kRight + 36) + "\" y2=\"" + Fixed(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + Fixed(kW - kRight + 42) + "\" y=\"" + Fixed(ly + 4) + "\">b = " +
           std::to_string(b) + "</text>\n";
    ++series;
  }
  svg += "</svg>\n";
  return svg;
}

void WriteCheckpoint(const std::string& path, int players, const JointPoint& z) {
  std::string bytes(kMagic, sizeof kMagic);
  PutU32(bytes, kCheckpointVersion);
  PutU32(bytes, static_cast<std::uint32_t>(players));
  PutU64(bytes, static_cast<std::uint64_t>(z.x.size()));
  PutU64(bytes, static_cast<std::uint64_t>(z.p.size()));
  for (Eigen::Index k = 0; k < z.x.size(); ++k) PutF64(bytes, z.x[k]);
  for (Eigen::Index k = 0; k < z.p.size(); ++k) PutF64(bytes, z.p[k]);
  WriteTextFile(path, bytes);
}

Checkpoint ReadCheckpoint(const std::string& path) {
  const std::string data = ReadTextFile(path);
  if (data.size() < sizeof kMagic || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0)
    Fail(ErrorCode::kIo, "'" + path + "' is not a drne checkpoint");
  ByteReader r(data, path);
  const std::uint32_t version = r.U32();
  if (version != kCheckpointVersion)
    Fail(ErrorCode::kIo, "checkpoint '" + path + "' has unsupported version " + std::to_string(version));
  Checkpoint c;
  c.players = static_cast<int>(r.U32());
  const std::uint64_t nx = r.U64();
  const std::uint64_t np = r.U64();
  if (data.size() != 32 + 8 * (nx + np))
    Fail(ErrorCode::kIo, "checkpoint '" + path + "' has inconsistent length");
  c.z.x.resize(static_cast<Eigen::Index>(nx));
  c.z.p.resize(static_cast<Eigen::Index>(np));
  for (Eigen::Index k = 0; k < c.z.x.size(); ++k) c.z.x[k] = r.F64();
  for (Eigen::Index k = 0; k < c.z.p.size(); ++k) c.z.p[k] = r.F64();
  return c;
}

std::string DiagnosticsReportJson(const AssumptionReport& report,
                                  std::span<const RatePoint> gap_curve, double slope,
                                  std::span<const std::uint64_t> seeds) {
  nlohmann::ordered_json j;
  j["monotonicity_min"] = report.monotonicity_min;
  j["nu1_sq"] = report.nu1_sq;
  j["nu2_sq"] = report.nu2_sq;
  j["Mx_sq"] = report.mx_sq;
  j["Mp_sq"] = report.mp_sq;
  nlohmann::ordered_json variance = nlohmann::ordered_json::array();
  for (const auto& row : report.variance) {
    variance.push_back({{"batch_size", row.batch_size},
                        {"nu1_sq", row.nu1_sq},
                        {"nu2_sq", row.nu2_sq},
                        {"m1_sq", row.m1_sq},
                        {"m2_sq", row.m2_sq}});
  }
  j["variance"] = variance;
  nlohmann::ordered_json curve = nlohmann::ordered_json::array();
  for (const auto& pt : gap_curve) curve.push_back({pt.iterations, pt.value});
  j["gap_curve"] = curve;
  j["slope"] = slope;
  j["seeds"] = std::vector<std::uint64_t>(seeds.begin(), seeds.end());
  j["probe_seed"] = report.seed;
  j["samples"] = report.samples;
  j["variance_points"] = report.variance_points;
  j["draws"] = report.draws;
  return j.dump(2) + "\n";
}

void WriteTextFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) Fail(ErrorCode::kIo, "failed writing '" + path + "'");
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace drne
