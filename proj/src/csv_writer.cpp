#include "zetalab/csv_writer.hpp"

#include "zetalab/errors.hpp"

#include <unistd.h>

namespace zetalab {

namespace fs = std::filesystem;

AtomicCsvWriter::AtomicCsvWriter(fs::path path) : path_(std::move(path)) {
    tmp_ = path_.string() + ".tmp." + std::to_string(::getpid());
    f_ = std::fopen(tmp_.c_str(), "wb");
    if (!f_) throw io_error("cannot open for write: " + tmp_.string());
}

AtomicCsvWriter::~AtomicCsvWriter() {
    if (f_) {
        std::fclose(f_);
        std::error_code ec;
        fs::remove(tmp_, ec);
    }
}

void AtomicCsvWriter::raw_line(const std::string& line) {
    if (std::fputs(line.c_str(), f_) == EOF || std::fputc('\n', f_) == EOF)
        throw io_error("short write: " + tmp_.string());
}

void AtomicCsvWriter::commit() {
    if (std::fflush(f_) != 0) throw io_error("flush failed: " + tmp_.string());
    std::fclose(f_);
    f_ = nullptr;
    std::error_code ec;
    fs::rename(tmp_, path_, ec);
    if (ec) {
        fs::remove(tmp_, ec);
        throw io_error("rename failed: " + path_.string());
    }
}

std::string AtomicCsvWriter::num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace zetalab
