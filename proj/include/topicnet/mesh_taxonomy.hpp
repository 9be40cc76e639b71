#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topicnet {

/// Hierarchical MeSH tree number such as `C04.588.149`.
///
/// The first segment is a branch letter followed by digits; later segments are
/// digit strings. Ordering is lexicographic on the dotted string form, which is
/// the node ordering used by every network in this library.
class TreeCode {
public:
    TreeCode() = default;

    /// Parses a dotted code. Throws std::invalid_argument on empty segments or
    /// a malformed first segment.
    static TreeCode parse(std::string_view text);
    static std::optional<TreeCode> try_parse(std::string_view text);

    std::size_t level() const noexcept { return segments_.size(); }
    const std::vector<std::string>& segments() const noexcept { return segments_; }
    char branch() const noexcept { return segments_.empty() ? '\0' : segments_.front().front(); }

    /// First `n` segments; `n` is clamped to the code's level.
    TreeCode prefix(std::size_t n) const;

    const std::string& str() const noexcept { return text_; }

    friend bool operator==(const TreeCode& a, const TreeCode& b) { return a.text_ == b.text_; }
    friend std::strong_ordering operator<=>(const TreeCode& a, const TreeCode& b) {
        return a.text_ <=> b.text_;
    }

private:
    std::vector<std::string> segments_;
    std::string text_;
};

std::ostream& operator<<(std::ostream& os, const TreeCode& code);

/// One-segment ancestor: `C04.588` -> `C04`.
TreeCode first_level_parent(const TreeCode& code);

/// Descriptor -> tree number mapping loaded from the flattened TSV format:
/// header `descriptor_ui<TAB>descriptor_name<TAB>tree_numbers`, with
/// semicolon-separated tree numbers.
///
/// Lookups accept a descriptor UI (case-sensitive) or a descriptor name
/// (case-insensitive). Immutable after construction, so concurrent readers
/// are fine.
class MeshTaxonomy {
public:
    struct Descriptor {
        std::string ui;
        std::string name;
        std::set<TreeCode> codes;
    };

    MeshTaxonomy() = default;

    /// Adds (or merges into) a descriptor. Rows sharing a UI merge code sets.
    void add(std::string ui, std::string name, const std::set<TreeCode>& codes);

    /// nullptr when neither a UI nor a (case-folded) name matches.
    const Descriptor* find(std::string_view ui_or_name) const;
    bool contains(std::string_view ui_or_name) const { return find(ui_or_name) != nullptr; }

    /// Preferred term for a code, when some descriptor carries that code.
    std::optional<std::string> label(const TreeCode& code) const;
    /// Label or the code string itself.
    std::string label_or_code(const TreeCode& code) const;

    std::size_t size() const noexcept { return descriptors_.size(); }
    const std::map<std::string, Descriptor>& descriptors() const noexcept { return descriptors_; }

    friend bool operator==(const MeshTaxonomy& a, const MeshTaxonomy& b);

private:
    std::map<std::string, Descriptor> descriptors_;            // by UI
    std::map<std::string, std::string, std::less<>> by_name_;  // folded name -> UI
    std::map<TreeCode, std::string> labels_;
};

inline bool operator==(const MeshTaxonomy::Descriptor& a, const MeshTaxonomy::Descriptor& b) {
    return a.ui == b.ui && a.name == b.name && a.codes == b.codes;
}

MeshTaxonomy load_taxonomy(std::istream& in, const std::string& source_name = "<stream>");
MeshTaxonomy load_taxonomy(const std::filesystem::path& path);
void write_taxonomy(std::ostream& out, const MeshTaxonomy& tax);

class UnknownDescriptor : public std::out_of_range {
public:
    explicit UnknownDescriptor(std::string_view descriptor)
        : std::out_of_range("unknown MeSH descriptor: " + std::string(descriptor)) {}
};

/// Distinct level-2 prefixes of the descriptor's C-branch codes. Empty when the
/// descriptor is known but has no level >= 2 C code. Throws std::out_of_range
/// for an unknown descriptor.
std::set<TreeCode> second_level_c_codes(const MeshTaxonomy& tax, std::string_view descriptor);

/// The same projection applied to an already resolved code set.
std::set<TreeCode> second_level_c_codes(const std::set<TreeCode>& codes);

std::string fold_case(std::string_view s);

}  // namespace topicnet
