// Domain data model: phrases, triples, source texts, clusterings,
// gold labels and per-view embedding tables.
#ifndef OKBC_TYPES_HPP
#define OKBC_TYPES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "okbc/vec.hpp"

namespace okbc {

using PhraseId = int;

enum class PhraseKind { NP, RP };

inline const char* to_string(PhraseKind k) { return k == PhraseKind::NP ? "NP" : "RP"; }

struct Phrase {
    PhraseId id = -1;
    PhraseKind kind = PhraseKind::NP;
    std::string surface;               // lowercased
    std::vector<std::string> tokens;   // lowercase whitespace tokens
};

struct Triple {
    int id = -1;
    PhraseId subject = -1;   // NP id
    PhraseId relation = -1;  // RP id
    PhraseId object = -1;    // NP id
    int source_id = -1;
    std::optional<std::string> gold_subject;
    std::optional<std::string> gold_object;
};

struct SourceText {
    int id = -1;
    std::string text;
};

// Subject/relation/object ids only; the unit fed to the fact-view trainer.
struct TrainTriple {
    PhraseId subject = -1;
    PhraseId relation = -1;
    PhraseId object = -1;

    friend bool operator==(const TrainTriple&, const TrainTriple&) = default;
    friend auto operator<=>(const TrainTriple&, const TrainTriple&) = default;
};

std::vector<std::string> tokenize_lower(const std::string& text);
std::string lowercase(const std::string& text);

// Interns phrases by (kind, lowercased surface); ids are dense per kind.
class PhraseTable {
public:
    PhraseId intern(PhraseKind kind, const std::string& surface);
    const Phrase& get(PhraseKind kind, PhraseId id) const;
    const std::vector<Phrase>& all(PhraseKind kind) const {
        return kind == PhraseKind::NP ? nps_ : rps_;
    }
    std::size_t count(PhraseKind kind) const { return all(kind).size(); }
    // -1 if the surface has not been interned.
    PhraseId find(PhraseKind kind, const std::string& surface) const;

private:
    std::vector<Phrase> nps_, rps_;
    std::unordered_map<std::string, PhraseId> np_index_, rp_index_;
};

struct Dataset {
    PhraseTable phrases;
    std::vector<Triple> triples;
    std::vector<SourceText> sources;
    std::unordered_map<int, std::size_t> source_index;  // source id -> position

    const SourceText& source(int id) const;
};

// Partition of an ordered element set. assign[i] is the cluster of
// element_ids[i], always in [0, k).
struct Clustering {
    std::vector<PhraseId> element_ids;
    std::vector<int> assign;
    int k = 0;

    std::vector<std::vector<std::size_t>> members() const;  // per-cluster element positions
    // Drop empty clusters and renumber by first appearance.
    Clustering compacted() const;
    // assign relabeled by first appearance; invariant under cluster-id permutation.
    std::vector<int> canonical_labels() const;
};

using GoldLabels = std::map<PhraseId, std::string>;

enum class View { Fact = 1, Context = 2, Base = 0 };

// Phrase id -> row of a dense matrix; insertion order is preserved so that
// iteration and serialization are deterministic.
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    EmbeddingTable(View view, std::size_t dim) : view_(view), dim_(dim) {}

    View view() const { return view_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return ids_.size(); }
    const std::vector<PhraseId>& ids() const { return ids_; }

    bool has(PhraseId id) const { return index_.count(id) > 0; }
    void add(PhraseId id, std::span<const double> v);
    void set(PhraseId id, std::span<const double> v);
    std::span<const double> vec(PhraseId id) const;

    void normalize_all(Norm n);

    // Rows in the order of the given ids (every id must be present).
    Matrix to_matrix(const std::vector<PhraseId>& order) const;
    const Matrix& raw() const { return data_; }

private:
    View view_ = View::Base;
    std::size_t dim_ = 0;
    std::vector<PhraseId> ids_;
    std::unordered_map<PhraseId, std::size_t> index_;
    Matrix data_;
};

} // namespace okbc

#endif
