#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace expertrank {

/// Dense 32-bit identifier. The tag keeps author and document ids from mixing.
template <typename Tag>
class Id {
public:
    using value_type = std::uint32_t;

    constexpr Id() = default;
    constexpr explicit Id(value_type v) : value_(v) {}

    [[nodiscard]] constexpr value_type value() const { return value_; }
    [[nodiscard]] constexpr std::size_t index() const { return value_; }

    friend constexpr auto operator<=>(Id, Id) = default;

private:
    value_type value_ = 0;
};

/// Position of a publication in the corpus (not the dump's own #index key).
using DocId = Id<struct DocTag>;
using AuthorId = Id<struct AuthorTag>;

/// Input that cannot be read at all (missing file, unreadable persisted corpus).
class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input whose content makes the requested computation impossible.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration or command-line usage.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace expertrank

template <typename Tag>
struct std::hash<expertrank::Id<Tag>> {
    std::size_t operator()(expertrank::Id<Tag> id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value());
    }
};
