#include "topicnet/mesh_taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>

#include "topicnet/error.hpp"
#include "topicnet/text.hpp"

namespace topicnet {

namespace {

bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool valid_first_segment(std::string_view s) {
    return s.size() >= 2 && std::isupper(static_cast<unsigned char>(s.front())) && is_digits(s.substr(1));
}

}  // namespace

std::optional<TreeCode> TreeCode::try_parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    TreeCode code;
    for (std::string_view part : split(text, '.')) {
        if (part.empty()) return std::nullopt;
        if (code.segments_.empty() ? !valid_first_segment(part) : !is_digits(part)) return std::nullopt;
        code.segments_.emplace_back(part);
    }
    code.text_ = std::string(text);
    return code;
}

TreeCode TreeCode::parse(std::string_view text) {
    auto code = try_parse(text);
    if (!code) throw std::invalid_argument("malformed tree code '" + std::string(text) + "'");
    return *std::move(code);
}

TreeCode TreeCode::prefix(std::size_t n) const {
    n = std::min(n, segments_.size());
    TreeCode out;
    out.segments_.assign(segments_.begin(), segments_.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out.text_ += '.';
        out.text_ += out.segments_[i];
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const TreeCode& code) { return os << code.str(); }

TreeCode first_level_parent(const TreeCode& code) { return code.prefix(1); }

std::string fold_case(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void MeshTaxonomy::add(std::string ui, std::string name, const std::set<TreeCode>& codes) {
    auto [it, inserted] = descriptors_.try_emplace(ui);
    Descriptor& d = it->second;
    if (inserted) {
        d.ui = std::move(ui);
        d.name = name;
        by_name_.emplace(fold_case(name), d.ui);
    }
    for (const TreeCode& c : codes) {
        d.codes.insert(c);
        labels_.try_emplace(c, d.name);
    }
}

const MeshTaxonomy::Descriptor* MeshTaxonomy::find(std::string_view ui_or_name) const {
    if (auto it = descriptors_.find(std::string(ui_or_name)); it != descriptors_.end()) return &it->second;
    if (auto it = by_name_.find(fold_case(ui_or_name)); it != by_name_.end()) {
        return &descriptors_.at(it->second);
    }
    return nullptr;
}

std::optional<std::string> MeshTaxonomy::label(const TreeCode& code) const {
    if (auto it = labels_.find(code); it != labels_.end()) return it->second;
    return std::nullopt;
}

std::string MeshTaxonomy::label_or_code(const TreeCode& code) const {
    return label(code).value_or(code.str());
}

bool operator==(const MeshTaxonomy& a, const MeshTaxonomy& b) {
    return a.descriptors_ == b.descriptors_;
}

MeshTaxonomy load_taxonomy(std::istream& in, const std::string& source_name) {
    MeshTaxonomy tax;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("descriptor_ui\t", 0) == 0) continue;
        }
        auto cols = split(line, '\t');
        if (cols.size() != 3) {
            throw ParseError(source_name, line_no,
                             "expected 3 tab-separated columns, got " + std::to_string(cols.size()));
        }
        std::string ui(trim(cols[0]));
        std::string name(trim(cols[1]));
        if (ui.empty() || name.empty()) throw ParseError(source_name, line_no, "empty descriptor field");
        std::set<TreeCode> codes;
        for (std::string_view raw : split(cols[2], ';')) {
            auto code = TreeCode::try_parse(trim(raw));
            if (!code) throw ParseError(source_name, line_no, "unparsable tree code '" + std::string(raw) + "'");
            codes.insert(*std::move(code));
        }
        tax.add(std::move(ui), std::move(name), codes);
    }
    return tax;
}

MeshTaxonomy load_taxonomy(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open taxonomy file " + path.string());
    return load_taxonomy(in, path.string());
}

void write_taxonomy(std::ostream& out, const MeshTaxonomy& tax) {
    out << "descriptor_ui\tdescriptor_name\ttree_numbers\n";
    for (const auto& [ui, d] : tax.descriptors()) {
        out << ui << '\t' << d.name << '\t';
        bool first = true;
        for (const TreeCode& c : d.codes) {
            if (!first) out << ';';
            out << c;
            first = false;
        }
        out << '\n';
    }
}

std::set<TreeCode> second_level_c_codes(const std::set<TreeCode>& codes) {
    std::set<TreeCode> out;
    for (const TreeCode& c : codes) {
        if (c.branch() == 'C' && c.level() >= 2) out.insert(c.prefix(2));
    }
    return out;
}

std::set<TreeCode> second_level_c_codes(const MeshTaxonomy& tax, std::string_view descriptor) {
    const auto* d = tax.find(descriptor);
    if (!d) throw UnknownDescriptor(descriptor);
    return second_level_c_codes(d->codes);
}

}  // namespace topicnet
