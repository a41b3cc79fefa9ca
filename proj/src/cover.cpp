#include "scoda/cover.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "scoda/error.hpp"

namespace scoda {

Cover::Cover(std::vector<Group> groups) : groups_(std::move(groups)) {
    for (auto& g : groups_) {
        if (g.empty()) throw ValidationError("cover contains an empty group");
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
    }
}

std::size_t Cover::membership_count() const noexcept {
    std::size_t total = 0;
    for (const auto& g : groups_) total += g.size();
    return total;
}

std::vector<std::uint64_t> Cover::nodes() const {
    std::vector<std::uint64_t> all;
    all.reserve(membership_count());
    for (const auto& g : groups_) all.insert(all.end(), g.begin(), g.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

Cover read_cover(std::istream& in) {
    std::vector<Group> groups;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        Group group;
        const char* p = line.data();
        const char* end = p + line.size();
        auto skip = [&] {
            while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
        };
        skip();
        if (p == end || *p == '#') continue;
        while (p < end) {
            std::uint64_t id = 0;
            auto [next, ec] = std::from_chars(p, end, id);
            if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t' && *next != '\r'))
                throw ParseError(line_no, "expected non-negative integer node ids");
            group.push_back(id);
            p = next;
            skip();
        }
        groups.push_back(std::move(group));
    }
    if (in.bad()) throw Error("I/O error while reading community file");
    return Cover(std::move(groups));
}

Cover read_cover_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open community file '" + path.string() + "'");
    return read_cover(in);
}

void write_cover(std::ostream& out, const Cover& cover) {
    for (const auto& g : cover.groups()) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i) out << ' ';
            out << g[i];
        }
        out << '\n';
    }
}

}  // namespace scoda
