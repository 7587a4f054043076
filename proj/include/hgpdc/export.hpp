#pragma once

// On-disk formats consumed by the plotting scripts:
//   sweep CSV     fixed header kSweepHeader, one row per power, %.17g numbers
//   metadata JSON resolved config, version, grid checksums, derived geometry
//   .cmat         binary complex matrix with its two frequency axes
//   modes CSV     Schmidt mode profiles on the grid

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hgpdc/config.hpp"
#include "hgpdc/lowgain.hpp"
#include "hgpdc/runner.hpp"

namespace hgpdc {

inline constexpr const char* kSweepHeader =
    "power_w,gain,gain_db,purity,p1,p2,p3,r1,r2,r3,res_aa,res_bb,res_ab,wall_s";

std::string format_row(const SweepRow& row);
SweepRow parse_row(const std::string& line);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);

/// Append-only sweep table; every row is flushed as soon as it is written.
class SweepCsvAppender {
public:
  explicit SweepCsvAppender(const std::filesystem::path& path);
  void append(const SweepRow& row);

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

/// Resolved config as JSON (also the input of config_fingerprint).
std::string config_json(const ExperimentConfig& cfg);
std::uint64_t config_fingerprint(const ExperimentConfig& cfg);

/// Metadata for a run or sweep: config, code version, theta, poling period,
/// time window, grid sizes and checksums.
void write_metadata(const std::filesystem::path& path, const ExperimentConfig& cfg,
                    const std::vector<double>& powers);

// Binary matrix dump. Layout, little endian:
//   char[8] "HGPDCMAT", uint32 version (1), uint32 reserved,
//   uint64 rows, uint64 cols, double row_axis[rows], double col_axis[cols],
//   then rows * cols (re, im) double pairs in row-major order.
struct MatrixDump {
  CMatrix matrix;
  RVector row_axis;
  RVector col_axis;
};

void write_matrix(const std::filesystem::path& path, const CMatrix& m, const RVector& row_axis,
                  const RVector& col_axis);
MatrixDump read_matrix(const std::filesystem::path& path);

/// Columns: axis,index,omega,mode,re,im,abs. `count` leading modes.
void write_modes_csv(const std::filesystem::path& path, const SchmidtDecomposition& dec,
                     const FrequencyGrid& grid, int count);

void write_trajectory_csv(const std::filesystem::path& path, const std::vector<TrajectoryRow>& rows);

void write_lowgain_csv(const std::filesystem::path& path, const std::string& preset,
                       const LowgainReport& report);

/// Per-power artifacts: moment and reconstructed JSA dumps plus mode profiles.
void write_run_artifacts(const std::filesystem::path& dir, const RunRecord& rec, int modes);

std::string power_tag(double power);

}  // namespace hgpdc
