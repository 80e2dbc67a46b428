#ifndef ZETALAB_CSV_WRITER_HPP
#define ZETALAB_CSV_WRITER_HPP

// CSV emission with atomic replace semantics: rows go to <path>.tmp.<pid>,
// commit() renames onto the destination.  A writer destroyed without commit
// leaves no partial output behind.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>

namespace zetalab {

class AtomicCsvWriter {
public:
    explicit AtomicCsvWriter(std::filesystem::path path);
    ~AtomicCsvWriter();

    AtomicCsvWriter(const AtomicCsvWriter&) = delete;
    AtomicCsvWriter& operator=(const AtomicCsvWriter&) = delete;

    void raw_line(const std::string& line);
    void commit();

    // full f64 round-trip formatting
    static std::string num(double x);

private:
    std::filesystem::path path_;
    std::filesystem::path tmp_;
    std::FILE* f_ = nullptr;
};

} // namespace zetalab

#endif
