#ifndef ZETALAB_GRID_IO_HPP
#define ZETALAB_GRID_IO_HPP

// ZGRID1 binary grid files and the on-disk grid cache.
//
// Layout (little-endian): magic "ZGRID1" (6 bytes), f64 t0, f64 dt,
// u64 count, then count f64 values.  Writes are atomic (temp file + rename);
// readers reject a bad magic or a truncated payload.

#include "zetalab/zeta_eval.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace zetalab {

void write_zgrid(const std::filesystem::path& path, const ZetaGrid& grid);
ZetaGrid read_zgrid(const std::filesystem::path& path);

// Deterministic cache file name for (t0, dt, count, accuracy); the floats are
// encoded as hex literals so the key is exact.
std::string zgrid_cache_name(double t0, double dt, std::uint64_t count, double accuracy);

// Returns a grid covering [t0, t1]: reuses any cached grid with identical dt
// and accuracy whose span covers the request at matching ordinates (bumping
// its mtime for LRU), otherwise samples and stores one.  An empty cache_dir
// disables caching.
ZetaGrid cached_abs2_grid(const std::filesystem::path& cache_dir, double t0, double t1,
                          double dt, double accuracy, int workers = 0);

struct CacheGcReport {
    std::uint64_t scanned_files = 0;
    std::uint64_t evicted_files = 0;
    std::uint64_t evicted_bytes = 0;
    std::uint64_t skipped_locked = 0;
    std::uint64_t remaining_bytes = 0;
};

// Evicts least-recently-used *.zgrid files until the directory is under
// max_bytes.  Files holding an advisory lock (in use by a running job) are
// never evicted.
CacheGcReport cache_gc(const std::filesystem::path& cache_dir, std::uint64_t max_bytes);

} // namespace zetalab

#endif
