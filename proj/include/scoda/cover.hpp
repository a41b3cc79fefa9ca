#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace scoda {

using Group = std::vector<std::uint64_t>;

/// A family of node groups. Groups may overlap; each is stored sorted and
/// without repeats, and none is empty.
class Cover {
public:
    Cover() = default;
    /// Normalizes every group. Throws ValidationError on an empty group.
    explicit Cover(std::vector<Group> groups);

    const std::vector<Group>& groups() const noexcept { return groups_; }
    const Group& operator[](std::size_t i) const { return groups_[i]; }
    std::size_t size() const noexcept { return groups_.size(); }
    bool empty() const noexcept { return groups_.empty(); }

    /// Sum of group sizes.
    std::size_t membership_count() const noexcept;
    /// Sorted distinct node ids over all groups.
    std::vector<std::uint64_t> nodes() const;

    friend bool operator==(const Cover&, const Cover&) = default;

private:
    std::vector<Group> groups_;
};

/// One group per line, whitespace-separated non-negative ids. Blank lines and
/// '#' comments are skipped.
Cover read_cover(std::istream& in);
Cover read_cover_file(const std::filesystem::path& path);
void write_cover(std::ostream& out, const Cover& cover);

}  // namespace scoda
