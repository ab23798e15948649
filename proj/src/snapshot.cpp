#include "phaseflow/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

namespace phaseflow {

static_assert(std::endian::native == std::endian::little, "PFNS I/O assumes a little-endian host");

const SnapshotField& Snapshot::field(const std::string& name) const
{
  for (const auto& f : fields)
    if (f.name == name) return f;
  throw SnapshotError("snapshot has no field '" + name + "'");
}

bool Snapshot::has_field(const std::string& name) const
{
  for (const auto& f : fields)
    if (f.name == name) return true;
  return false;
}

ScalarField Snapshot::scalar(const std::string& name, const Grid& grid) const
{
  if (grid.nx() != nx || grid.ny() != ny) throw SnapshotError("snapshot grid does not match the configured grid");
  return ScalarField(grid, field(name).values);
}

namespace {

template <class T>
void put(std::ostream& os, T v)
{
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  os.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& is, const char* what)
{
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw SnapshotError(std::string("truncated snapshot while reading ") + what);
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap)
{
  const std::size_t n = static_cast<std::size_t>(snap.nx) * snap.ny;
  for (const auto& f : snap.fields) {
    if (f.values.size() != n) throw SnapshotError("field '" + f.name + "' has the wrong number of samples");
    if (f.name.size() > std::numeric_limits<std::uint16_t>::max()) throw SnapshotError("field name too long");
  }
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw SnapshotError("cannot open " + tmp + " for writing");
    os.write("PFNS", 4);
    put<std::uint16_t>(os, kSnapshotVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(snap.nx));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(snap.ny));
    put<double>(os, snap.lx);
    put<double>(os, snap.ly);
    put<double>(os, snap.time);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(snap.fields.size()));
    for (const auto& f : snap.fields) {
      put<std::uint16_t>(os, static_cast<std::uint16_t>(f.name.size()));
      os.write(f.name.data(), static_cast<std::streamsize>(f.name.size()));
      os.write(reinterpret_cast<const char*>(f.values.data()), static_cast<std::streamsize>(n * sizeof(double)));
    }
    if (!os) throw SnapshotError("write to " + tmp + " failed");
  }
  std::filesystem::rename(tmp, path);
}

Snapshot read_snapshot(const std::filesystem::path& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("cannot open snapshot " + path.string());
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "PFNS", 4) != 0) throw SnapshotError("not a PFNS snapshot: " + path.string());
  const auto version = get<std::uint16_t>(is, "version");
  if (version != kSnapshotVersion) throw SnapshotError("unsupported PFNS version " + std::to_string(version));
  Snapshot s;
  s.nx = static_cast<int>(get<std::uint32_t>(is, "nx"));
  s.ny = static_cast<int>(get<std::uint32_t>(is, "ny"));
  s.lx = get<double>(is, "lx");
  s.ly = get<double>(is, "ly");
  s.time = get<double>(is, "time");
  const auto count = get<std::uint32_t>(is, "field count");
  const std::size_t n = static_cast<std::size_t>(s.nx) * s.ny;
  for (std::uint32_t k = 0; k < count; ++k) {
    SnapshotField f;
    const auto len = get<std::uint16_t>(is, "field name length");
    f.name.resize(len);
    if (!is.read(f.name.data(), len)) throw SnapshotError("truncated snapshot while reading field name");
    f.values.resize(n);
    if (!is.read(reinterpret_cast<char*>(f.values.data()), static_cast<std::streamsize>(n * sizeof(double))))
      throw SnapshotError("truncated snapshot in field '" + f.name + "'");
    s.fields.push_back(std::move(f));
  }
  return s;
}

}  // namespace phaseflow
