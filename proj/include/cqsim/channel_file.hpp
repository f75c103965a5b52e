#pragma once

#include <stdexcept>
#include <string>

#include "cqsim/noise.hpp"

namespace cqsim {

/// Parse or validation failure for a channel description file. `line` is
/// 1-based; 0 means the problem is not tied to a single line (e.g. a CPTP
/// violation or an unreadable file).
class ChannelFileError : public std::runtime_error {
public:
    ChannelFileError(const std::string& message, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Reads a channel description:
///
///   # comment (also allowed after a directive)
///   d=<levels>
///   eta <from> <to> <rate>
///
/// The d= line must come first; each eta line declares one decay path
/// (from > to). The parsed channel must pass validate_cptp; otherwise
/// the first violation is raised as a ChannelFileError.
MadChannel parse_channel_file(const std::string& path);

/// Same grammar, from an in-memory string (tests).
MadChannel parse_channel_text(const std::string& text);

} // namespace cqsim
