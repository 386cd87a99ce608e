#include "okbc/types.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace okbc {

std::string lowercase(const std::string& text) {
    std::string out = text;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string> tokenize_lower(const std::string& text) {
    std::istringstream in(lowercase(text));
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

PhraseId PhraseTable::intern(PhraseKind kind, const std::string& surface) {
    std::string key = lowercase(surface);
    auto& index = kind == PhraseKind::NP ? np_index_ : rp_index_;
    auto& table = kind == PhraseKind::NP ? nps_ : rps_;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    Phrase p;
    p.id = static_cast<PhraseId>(table.size());
    p.kind = kind;
    p.surface = key;
    p.tokens = tokenize_lower(key);
    if (p.tokens.empty()) throw DomainError("phrase with no tokens: '" + surface + "'");
    index.emplace(std::move(key), p.id);
    table.push_back(std::move(p));
    return table.back().id;
}

const Phrase& PhraseTable::get(PhraseKind kind, PhraseId id) const {
    const auto& table = all(kind);
    if (id < 0 || static_cast<std::size_t>(id) >= table.size())
        throw LookupError("unknown phrase id " + std::to_string(id));
    return table[id];
}

PhraseId PhraseTable::find(PhraseKind kind, const std::string& surface) const {
    const auto& index = kind == PhraseKind::NP ? np_index_ : rp_index_;
    auto it = index.find(lowercase(surface));
    return it == index.end() ? -1 : it->second;
}

const SourceText& Dataset::source(int id) const {
    auto it = source_index.find(id);
    if (it == source_index.end())
        throw IntegrityError("dangling source reference " + std::to_string(id));
    return sources[it->second];
}

std::vector<std::vector<std::size_t>> Clustering::members() const {
    std::vector<std::vector<std::size_t>> out(k);
    for (std::size_t i = 0; i < assign.size(); ++i) out[assign[i]].push_back(i);
    return out;
}

Clustering Clustering::compacted() const {
    std::vector<int> remap(k, -1);
    int next = 0;
    Clustering out;
    out.element_ids = element_ids;
    out.assign.resize(assign.size());
    for (std::size_t i = 0; i < assign.size(); ++i) {
        int c = assign[i];
        if (remap[c] < 0) remap[c] = next++;
        out.assign[i] = remap[c];
    }
    out.k = next;
    return out;
}

std::vector<int> Clustering::canonical_labels() const {
    std::vector<int> remap(k, -1);
    std::vector<int> out(assign.size());
    int next = 0;
    for (std::size_t i = 0; i < assign.size(); ++i) {
        int c = assign[i];
        if (remap[c] < 0) remap[c] = next++;
        out[i] = remap[c];
    }
    return out;
}

void EmbeddingTable::add(PhraseId id, std::span<const double> v) {
    if (v.size() != dim_) throw DomainError("embedding dimension mismatch");
    if (has(id)) throw DomainError("duplicate embedding for id " + std::to_string(id));
    if (!all_finite(v)) throw DomainError("non-finite embedding for id " + std::to_string(id));
    index_.emplace(id, ids_.size());
    ids_.push_back(id);
    data_.rows += 1;
    data_.cols = dim_;
    data_.data.insert(data_.data.end(), v.begin(), v.end());
}

void EmbeddingTable::set(PhraseId id, std::span<const double> v) {
    auto it = index_.find(id);
    if (it == index_.end()) {
        add(id, v);
        return;
    }
    if (v.size() != dim_) throw DomainError("embedding dimension mismatch");
    data_.set_row(it->second, v);
}

std::span<const double> EmbeddingTable::vec(PhraseId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw LookupError("no embedding for id " + std::to_string(id));
    return data_.row_span(it->second);
}

void EmbeddingTable::normalize_all(Norm n) {
    for (std::size_t i = 0; i < data_.rows; ++i) normalize_in_place(data_.row_span(i), n);
}

Matrix EmbeddingTable::to_matrix(const std::vector<PhraseId>& order) const {
    Matrix m(order.size(), dim_);
    for (std::size_t i = 0; i < order.size(); ++i) m.set_row(i, vec(order[i]));
    return m;
}

} // namespace okbc
