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

#ifndef DRNE_IO_HPP_
#define DRNE_IO_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drne/diagnostics.hpp"
#include "drne/game.hpp"
#include "drne/solver.hpp"

namespace drne {

// Reals in every CSV are printed as "%.12e"; integers are printed plainly.
std::string FormatReal(double v);

// One row of gap_curve.csv: batch_size,seed,T,gap,residual
struct GapCurveRow {
  int batch_size = 0;
  std::uint64_t seed = 0;
  std::int64_t iterations = 0;
  double gap = 0.0;
  double residual = 0.0;
};

std::string GapCurveCsv(std::span<const GapCurveRow> rows);
std::vector<GapCurveRow> ParseGapCurveCsv(std::string_view text);

// batch_size,T,mean_gap,min_gap,max_gap,runs  (aggregated over seeds)
std::string GapSummaryCsv(std::span<const GapCurveRow> rows);

// t,lambda,x_norm,p_entropy,dist_to_final over the logged iterates.
// p_entropy is the mean Shannon entropy (nats) of the players' weight blocks.
std::string HistoryCsv(const GameDefinition& game, const RunHistory& history);

// player,j,xi1,xi2  (0-based indices)
std::string ScenarioCsv(const GameDefinition& game);
// index,c
std::string CostVectorCsv(const GameDefinition& game);

// Seed-averaged gap against iteration, one polyline per batch size, log-log
// axes. Depends only on the rows, so plots can be rebuilt from gap_curve.csv.
std::string RenderGapSvg(std::span<const GapCurveRow> rows);

// Binary checkpoint, little-endian:
//   8 bytes  magic "DRNECKPT"
//   u32      format version (1)
//   u32      player count
//   u64      x dimension, u64 p dimension
//   f64[x dimension] x, f64[p dimension] p
struct Checkpoint {
  int players = 0;
  JointPoint z;
};

void WriteCheckpoint(const std::string& path, int players, const JointPoint& z);
Checkpoint ReadCheckpoint(const std::string& path);

// Diagnostics report:
//   {monotonicity_min, nu1_sq, nu2_sq, Mx_sq, Mp_sq, variance: [...],
//    gap_curve: [[T, value], ...], slope, seeds}
std::string DiagnosticsReportJson(const AssumptionReport& report,
                                  std::span<const RatePoint> gap_curve,
                                  double slope,
                                  std::span<const std::uint64_t> seeds);

void WriteTextFile(const std::string& path, std::string_view content);
std::string ReadTextFile(const std::string& path);

}  // namespace drne

#endif  // DRNE_IO_HPP_
