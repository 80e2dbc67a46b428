#ifndef ZETALAB_ERRORS_HPP
#define ZETALAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zetalab {

// Violated precondition on an operation's inputs.
struct rejected_input : std::invalid_argument {
    explicit rejected_input(const std::string& what) : std::invalid_argument(what) {}
};

// Least-squares design too ill-conditioned to trust.
struct fit_degenerate : std::runtime_error {
    explicit fit_degenerate(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / serialization failure, carries the offending path in the message.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw rejected_input(msg);
}

} // namespace zetalab

#endif
