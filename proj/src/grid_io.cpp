#include "zetalab/grid_io.hpp"

#include "zetalab/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

namespace zetalab {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[6] = {'Z', 'G', 'R', 'I', 'D', '1'};

struct FileCloser {
    std::FILE* f = nullptr;
    ~FileCloser() {
        if (f) std::fclose(f);
    }
};

void write_u64(std::FILE* f, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (unsigned char)(v >> (8 * i));
    if (std::fwrite(b, 1, 8, f) != 8) throw io_error("short write");
}

std::uint64_t read_u64(std::FILE* f) {
    unsigned char b[8];
    if (std::fread(b, 1, 8, f) != 8) throw io_error("short read");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

void write_f64(std::FILE* f, double x) {
    std::uint64_t v;
    std::memcpy(&v, &x, 8);
    write_u64(f, v);
}

double read_f64(std::FILE* f) {
    const std::uint64_t v = read_u64(f);
    double x;
    std::memcpy(&x, &v, 8);
    return x;
}

std::string hex_double(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

} // namespace

void write_zgrid(const fs::path& path, const ZetaGrid& grid) {
    const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        FileCloser fc{std::fopen(tmp.c_str(), "wb")};
        if (!fc.f) throw io_error("cannot open for write: " + tmp.string());
        if (std::fwrite(kMagic, 1, 6, fc.f) != 6) throw io_error("short write: " + tmp.string());
        write_f64(fc.f, grid.t0);
        write_f64(fc.f, grid.dt);
        write_u64(fc.f, std::uint64_t(grid.count()));
        static_assert(sizeof(double) == 8);
        // host is little-endian; raw dump matches the wire format
        const std::size_t n = std::size_t(grid.count());
        if (n && std::fwrite(grid.values.data(), 8, n, fc.f) != n)
            throw io_error("short write: " + tmp.string());
        if (std::fflush(fc.f) != 0) throw io_error("flush failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw io_error("rename failed: " + path.string());
    }
}

ZetaGrid read_zgrid(const fs::path& path) {
    FileCloser fc{std::fopen(path.c_str(), "rb")};
    if (!fc.f) throw io_error("cannot open: " + path.string());
    ::flock(::fileno(fc.f), LOCK_SH); // released on close

    char magic[6];
    if (std::fread(magic, 1, 6, fc.f) != 6 || std::memcmp(magic, kMagic, 6) != 0)
        throw io_error("bad ZGRID1 magic: " + path.string());
    ZetaGrid g;
    g.t0 = read_f64(fc.f);
    g.dt = read_f64(fc.f);
    const std::uint64_t count = read_u64(fc.f);
    if (!(g.dt > 0.0) || !std::isfinite(g.t0) || count < 1 || count > (1ull << 40))
        throw io_error("corrupt ZGRID1 header: " + path.string());
    g.values.resize(Eigen::Index(count));
    if (std::fread(g.values.data(), 8, count, fc.f) != count)
        throw io_error("truncated ZGRID1 payload: " + path.string());
    for (std::uint64_t k = 0; k < count; ++k)
        if (!(g.values[Eigen::Index(k)] >= 0.0))
            throw io_error("corrupt ZGRID1 payload (negative value): " + path.string());
    return g;
}

std::string zgrid_cache_name(double t0, double dt, std::uint64_t count, double accuracy) {
    return "zgrid_" + hex_double(t0) + "_" + hex_double(dt) + "_" + std::to_string(count) + "_" +
           hex_double(accuracy) + ".zgrid";
}

namespace {

struct CacheEntry {
    fs::path path;
    double t0 = 0, dt = 0, acc = 0;
    std::uint64_t count = 0;
};

bool parse_cache_name(const fs::path& p, CacheEntry& e) {
    const std::string name = p.filename().string();
    if (name.rfind("zgrid_", 0) != 0 || p.extension() != ".zgrid") return false;
    std::string body = name.substr(6, name.size() - 6 - 6); // strip prefix and ".zgrid"
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto us = body.find('_', pos);
        if (us == std::string::npos) {
            parts.push_back(body.substr(pos));
            break;
        }
        parts.push_back(body.substr(pos, us - pos));
        pos = us + 1;
    }
    if (parts.size() != 4) return false;
    char* end = nullptr;
    e.t0 = std::strtod(parts[0].c_str(), &end);
    if (end == parts[0].c_str()) return false;
    e.dt = std::strtod(parts[1].c_str(), &end);
    if (end == parts[1].c_str()) return false;
    e.count = std::strtoull(parts[2].c_str(), &end, 10);
    e.acc = std::strtod(parts[3].c_str(), &end);
    e.path = p;
    return e.dt > 0 && e.count > 0;
}

void touch(const fs::path& p) {
    struct timespec times[2];
    times[0].tv_nsec = UTIME_NOW;
    times[0].tv_sec = 0;
    times[1].tv_nsec = UTIME_NOW;
    times[1].tv_sec = 0;
    ::utimensat(AT_FDCWD, p.c_str(), times, 0);
}

} // namespace

ZetaGrid cached_abs2_grid(const fs::path& cache_dir, double t0, double t1, double dt,
                          double accuracy, int workers) {
    if (cache_dir.empty()) return sample_abs2_grid(t0, t1, dt, accuracy, workers);

    std::error_code ec;
    fs::create_directories(cache_dir, ec);

    const std::int64_t count = std::int64_t(std::floor((t1 - t0) / dt + 1e-9)) + 1;
    const double t_end = t0 + double(count - 1) * dt;

    // candidates: same dt and accuracy bits, span covers, ordinates aligned
    std::vector<CacheEntry> candidates;
    for (const auto& de : fs::directory_iterator(cache_dir, ec)) {
        CacheEntry e;
        if (!parse_cache_name(de.path(), e)) continue;
        if (e.dt != dt || e.acc != accuracy) continue;
        const double e_end = e.t0 + double(e.count - 1) * e.dt;
        if (e.t0 > t0 + 1e-9 * dt || e_end < t_end - 1e-9 * dt) continue;
        const double off = (t0 - e.t0) / dt;
        if (std::abs(off - std::round(off)) > 1e-6) continue;
        candidates.push_back(e);
    }
    std::sort(candidates.begin(), candidates.end(), [](const CacheEntry& a, const CacheEntry& b) {
        if (a.count != b.count) return a.count < b.count;
        return a.path.string() < b.path.string();
    });

    for (const auto& e : candidates) {
        try {
            ZetaGrid full = read_zgrid(e.path);
            touch(e.path);
            const std::int64_t off = std::int64_t(std::llround((t0 - full.t0) / full.dt));
            if (off == 0 && full.count() == count) return full;
            ZetaGrid g;
            g.dt = full.dt;
            g.t0 = full.t_at(off);
            g.values = full.values.segment(off, count);
            return g;
        } catch (const io_error&) {
            continue; // stale or corrupt entry; fall through to rebuild
        }
    }

    ZetaGrid g = sample_abs2_grid(t0, t1, dt, accuracy, workers);
    write_zgrid(cache_dir / zgrid_cache_name(g.t0, g.dt, std::uint64_t(g.count()), accuracy), g);
    return g;
}

CacheGcReport cache_gc(const fs::path& cache_dir, std::uint64_t max_bytes) {
    CacheGcReport rep;
    if (!fs::exists(cache_dir)) throw io_error("cache directory missing: " + cache_dir.string());

    struct Item {
        fs::path path;
        std::uint64_t size;
        fs::file_time_type mtime;
    };
    std::vector<Item> items;
    std::uint64_t total = 0;
    std::error_code ec;
    for (const auto& de : fs::directory_iterator(cache_dir, ec)) {
        if (de.path().extension() != ".zgrid") continue;
        std::error_code sec;
        const auto size = fs::file_size(de.path(), sec);
        if (sec) continue;
        items.push_back({de.path(), size, fs::last_write_time(de.path(), sec)});
        total += size;
        ++rep.scanned_files;
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.mtime != b.mtime) return a.mtime < b.mtime;
        return a.path.string() < b.path.string();
    });

    for (const auto& it : items) {
        if (total <= max_bytes) break;
        const int fd = ::open(it.path.c_str(), O_RDONLY);
        if (fd < 0) continue;
        if (::flock(fd, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd);
            ++rep.skipped_locked;
            continue; // in use by a running job
        }
        std::error_code rec;
        if (fs::remove(it.path, rec) && !rec) {
            total -= it.size;
            rep.evicted_bytes += it.size;
            ++rep.evicted_files;
        }
        ::flock(fd, LOCK_UN);
        ::close(fd);
    }
    rep.remaining_bytes = total;
    return rep;
}

} // namespace zetalab
