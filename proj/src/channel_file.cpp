#include "cqsim/channel_file.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace cqsim {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<std::uint64_t> parse_uint(const std::string& tok) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return value;
}

std::optional<double> parse_double(const std::string& tok) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return value;
}

MadChannel parse_stream(std::istream& in) {
    std::optional<std::uint64_t> levels;
    std::vector<DecayRate> rates;
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.rfind("d", 0) == 0 && line.find('=') != std::string::npos) {
            if (trim(line.substr(0, line.find('='))) != "d") {
                throw ChannelFileError("unrecognized directive: " + line, line_no);
            }
            if (levels) {
                throw ChannelFileError("duplicate d directive", line_no);
            }
            const auto value = parse_uint(trim(line.substr(line.find('=') + 1)));
            if (!value || *value < 1) {
                throw ChannelFileError("d must be a positive integer", line_no);
            }
            levels = *value;
            continue;
        }

        std::istringstream tokens(line);
        std::string keyword;
        tokens >> keyword;
        if (keyword != "eta") {
            throw ChannelFileError("unrecognized directive: " + keyword, line_no);
        }
        if (!levels) {
            throw ChannelFileError("d must be declared before decay paths", line_no);
        }
        std::string from_tok, to_tok, rate_tok, extra;
        tokens >> from_tok >> to_tok >> rate_tok;
        if (rate_tok.empty() || (tokens >> extra)) {
            throw ChannelFileError("expected: eta <from> <to> <rate>", line_no);
        }
        const auto from = parse_uint(from_tok);
        const auto to = parse_uint(to_tok);
        const auto rate = parse_double(rate_tok);
        if (!from || !to || !rate) {
            throw ChannelFileError("expected: eta <from> <to> <rate>", line_no);
        }
        if (*from >= *levels) {
            throw ChannelFileError("source level " + std::to_string(*from) +
                                       " out of range for d=" + std::to_string(*levels),
                                   line_no);
        }
        if (*to >= *from) {
            throw ChannelFileError("decay path must go downward (from > to)", line_no);
        }
        if (!seen.insert({*from, *to}).second) {
            throw ChannelFileError("duplicate decay path " + std::to_string(*from) + " -> " +
                                       std::to_string(*to),
                                   line_no);
        }
        rates.push_back(DecayRate{*from, *to, *rate});
    }

    if (!levels) {
        throw ChannelFileError("missing d directive", 0);
    }

    MadChannel channel = [&] {
        try {
            return MadChannel(*levels, std::move(rates));
        } catch (const std::invalid_argument& e) {
            throw ChannelFileError(e.what(), 0);
        }
    }();

    const CptpReport report = validate_cptp(channel);
    if (!report.pass) {
        throw ChannelFileError("channel is not CPTP: " + report.violations.front(), 0);
    }
    return channel;
}

} // namespace

MadChannel parse_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ChannelFileError("cannot open channel file: " + path, 0);
    }
    return parse_stream(in);
}

MadChannel parse_channel_text(const std::string& text) {
    std::istringstream in(text);
    return parse_stream(in);
}

} // namespace cqsim
