// Seed pairs of synonymous phrases: generation from a mention-entity
// dictionary and URL profiles, ingestion from pair files, and connected
// components over the seed graph.
#ifndef OKBC_SEEDS_HPP
#define OKBC_SEEDS_HPP

#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "okbc/types.hpp"

namespace okbc {

struct SeedPairSet {
    PhraseKind kind = PhraseKind::NP;
    std::set<std::pair<PhraseId, PhraseId>> pairs;  // stored with first < second

    void insert(PhraseId a, PhraseId b);
    bool contains(PhraseId a, PhraseId b) const;
    std::size_t size() const { return pairs.size(); }
    void merge(const SeedPairSet& other);
};

struct MentionDictionary {
    // mention -> (entity id, prior); priors in [0, 1]
    std::unordered_map<std::string, std::vector<std::pair<std::string, double>>> entries;
};

struct UrlProfiles {
    // phrase id -> URL set
    std::unordered_map<PhraseId, std::unordered_set<std::string>> urls;
};

// Lines "mention \t entity_id \t prior".
MentionDictionary load_mention_dictionary(const std::string& path);

// Lines "phrase_surface \t url", aggregated per interned phrase. Surfaces
// not present in the phrase table are skipped.
UrlProfiles load_url_profiles(const std::string& path, const PhraseTable& phrases,
                              PhraseKind kind);

// Lines "surface_a \t surface_b"; pairs whose surfaces are unknown are
// skipped with a warning.
SeedPairSet load_seed_pair_file(const std::string& path, const PhraseTable& phrases,
                                PhraseKind kind);
void save_seed_pairs(const SeedPairSet& seeds, const PhraseTable& phrases,
                     const std::string& path);

// A pair is emitted when two phrases share the same argmax-prior entity.
// Ties on the prior break to the lexicographically smallest entity id.
SeedPairSet seeds_from_dictionary(const std::vector<Phrase>& phrases,
                                  const MentionDictionary& dict, PhraseKind kind);

// Pairs whose URL-set Jaccard similarity strictly exceeds the threshold.
SeedPairSet seeds_from_urls(const std::vector<Phrase>& phrases, const UrlProfiles& profiles,
                            PhraseKind kind, double threshold = 0.015);

// Connected components of the seed graph over the given universe; phrases
// in no pair become singletons. Cluster ids follow first appearance in the
// universe order.
Clustering seed_components(const std::vector<PhraseId>& universe, const SeedPairSet& seeds);

} // namespace okbc

#endif
