#pragma once

// PFNS binary snapshots. Layout, all integers and floats little-endian:
//
//   "PFNS"  u16 version (= 1)  u32 nx  u32 ny  f64 lx  f64 ly  f64 time
//   u32 field_count, then per field: u16 name_len, name bytes, nx*ny f64
//
// Field samples use the grid layout (index j*nx + i).

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseflow/grid.hpp"

namespace phaseflow {

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SnapshotField {
  std::string name;
  std::vector<double> values;
};

struct Snapshot {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;
  double time = 0.0;
  std::vector<SnapshotField> fields;

  /// Throws SnapshotError if absent.
  const SnapshotField& field(const std::string& name) const;
  bool has_field(const std::string& name) const;
  /// Field values as a ScalarField on `grid` (sizes must agree).
  ScalarField scalar(const std::string& name, const Grid& grid) const;
};

inline constexpr std::uint16_t kSnapshotVersion = 1;

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace phaseflow
