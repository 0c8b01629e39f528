#ifndef TWINS_TEXT_IO_HPP
#define TWINS_TEXT_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "twins/permutation.hpp"

namespace twins {

struct ParseError : Error {
    using Error::Error;
};

// Permutation text:
//
//     # n=<ground_bound>        optional; defaults to the maximum value
//     3 1 2 ...                 whitespace/newline separated values
//
// Other lines starting with '#' are ignored.
Permutation read_permutation(std::istream& in);
Permutation read_permutation_file(const std::string& path);
void write_permutation(std::ostream& out, const Permutation& p);

// Twin pair text: three keyword lines, optionally preceded by '#' directives.
//
//     # n=<ground_bound>        optional, applies to an inline host
//     # tau=<closeness bound>   optional
//     host 1 3 5 6 4 2          inline values, or `host @<path>`, or `host @`
//     first 1 3 6               1-based positions
//     second 2 4 5
//
// `host @` means the host is supplied separately (e.g. `verify --perm`).
struct TwinFile {
    std::optional<Permutation> inline_host;
    std::optional<std::string> host_ref;  // empty string for bare `@`
    PositionSubsequence first;
    PositionSubsequence second;
    std::optional<Value> closeness_bound;
};

TwinFile read_twin_file(std::istream& in);
TwinFile read_twin_file(const std::string& path);

/// Resolves the host: explicit override, then inline values, then the
/// referenced file (relative to base_dir). Throws ParseError when none.
TwinPair resolve_twins(const TwinFile& f, const std::optional<Permutation>& host_override,
                       const std::string& base_dir = ".");

/// Writes the inline form, or `host @<host_ref>` when host_ref is given.
void write_twins(std::ostream& out, const TwinPair& t, const std::optional<std::string>& host_ref = std::nullopt);

}  // namespace twins

#endif
