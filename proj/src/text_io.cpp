#include "twins/text_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace twins {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_int(std::string_view tok, std::string_view what) {
    T v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("bad " + std::string(what) + " token '" + std::string(tok) + "'");
    }
    return v;
}

template <typename T>
std::vector<T> parse_ints(std::string_view line, std::string_view what) {
    std::vector<T> out;
    std::istringstream ss{std::string(line)};
    std::string tok;
    while (ss >> tok) {
        out.push_back(parse_int<T>(tok, what));
    }
    return out;
}

// "# key=value" -> value if key matches.
std::optional<Value> directive(const std::string& line, std::string_view key) {
    auto body = trim(std::string_view(line).substr(1));
    std::string prefix = std::string(key) + "=";
    if (body.rfind(prefix, 0) != 0) {
        return std::nullopt;
    }
    return parse_int<Value>(trim(std::string_view(body).substr(prefix.size())), key);
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    return in;
}

}  // namespace

Permutation read_permutation(std::istream& in) {
    std::optional<Value> bound;
    std::vector<Value> values;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t[0] == '#') {
            if (auto n = directive(t, "n")) {
                bound = n;
            }
            continue;
        }
        auto vs = parse_ints<Value>(t, "value");
        values.insert(values.end(), vs.begin(), vs.end());
    }
    try {
        if (bound) {
            return Permutation(std::move(values), *bound);
        }
        return Permutation::from_values(std::move(values));
    } catch (const InvalidPermutation& e) {
        throw ParseError(std::string("invalid permutation: ") + e.what());
    }
}

Permutation read_permutation_file(const std::string& path) {
    auto in = open(path);
    return read_permutation(in);
}

void write_permutation(std::ostream& out, const Permutation& p) {
    out << "# n=" << p.ground_bound() << '\n';
    const auto vs = p.values();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        out << vs[i] << ((i + 1) % 20 == 0 || i + 1 == vs.size() ? '\n' : ' ');
    }
}

TwinFile read_twin_file(std::istream& in) {
    TwinFile f;
    std::optional<Value> bound;
    std::optional<std::vector<Value>> host_values;
    bool have_host = false, have_first = false, have_second = false;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t[0] == '#') {
            if (auto n = directive(t, "n")) {
                bound = n;
            } else if (auto tau = directive(t, "tau")) {
                f.closeness_bound = tau;
            }
            continue;
        }
        auto sp = t.find_first_of(" \t");
        std::string key = t.substr(0, sp);
        std::string rest = sp == std::string::npos ? std::string{} : trim(std::string_view(t).substr(sp));
        if (key == "host") {
            have_host = true;
            if (!rest.empty() && rest[0] == '@') {
                f.host_ref = trim(std::string_view(rest).substr(1));
            } else {
                host_values = parse_ints<Value>(rest, "host value");
            }
        } else if (key == "first") {
            have_first = true;
            f.first.positions = parse_ints<Position>(rest, "position");
        } else if (key == "second") {
            have_second = true;
            f.second.positions = parse_ints<Position>(rest, "position");
        } else {
            throw ParseError("unknown line key '" + key + "'");
        }
    }
    if (!have_host || !have_first || !have_second) {
        throw ParseError("twin file needs host, first and second lines");
    }
    if (host_values) {
        try {
            f.inline_host = bound ? Permutation(std::move(*host_values), *bound)
                                  : Permutation::from_values(std::move(*host_values));
        } catch (const InvalidPermutation& e) {
            throw ParseError(std::string("invalid host: ") + e.what());
        }
    }
    return f;
}

TwinFile read_twin_file(const std::string& path) {
    auto in = open(path);
    return read_twin_file(in);
}

TwinPair resolve_twins(const TwinFile& f, const std::optional<Permutation>& host_override,
                       const std::string& base_dir) {
    TwinPair t;
    if (host_override) {
        t.host = *host_override;
    } else if (f.inline_host) {
        t.host = *f.inline_host;
    } else if (f.host_ref && !f.host_ref->empty()) {
        std::filesystem::path ref(*f.host_ref);
        if (ref.is_relative()) {
            ref = std::filesystem::path(base_dir) / ref;
        }
        t.host = read_permutation_file(ref.string());
    } else {
        throw ParseError("twin file has no host and none was supplied");
    }
    t.first = f.first;
    t.second = f.second;
    t.closeness_bound = f.closeness_bound;
    return t;
}

void write_twins(std::ostream& out, const TwinPair& t, const std::optional<std::string>& host_ref) {
    out << "# n=" << t.host.ground_bound() << '\n';
    if (t.closeness_bound) {
        out << "# tau=" << *t.closeness_bound << '\n';
    }
    out << "# L=" << t.length() << '\n';
    if (host_ref) {
        out << "host @" << *host_ref << '\n';
    } else {
        out << "host";
        for (Value v : t.host.values()) {
            out << ' ' << v;
        }
        out << '\n';
    }
    auto line = [&](const char* key, const PositionSubsequence& s) {
        out << key;
        for (Position p : s.positions) {
            out << ' ' << p;
        }
        out << '\n';
    };
    line("first", t.first);
    line("second", t.second);
}

}  // namespace twins
