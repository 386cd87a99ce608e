#include "okbc/seeds.hpp"

#include <algorithm>
#include <fstream>

#include "okbc/error.hpp"
#include "okbc/io.hpp"
#include "okbc/kernels.hpp"

namespace okbc {

void SeedPairSet::insert(PhraseId a, PhraseId b) {
    if (a == b) return;  // no self-pairs
    if (a > b) std::swap(a, b);
    pairs.emplace(a, b);
}

bool SeedPairSet::contains(PhraseId a, PhraseId b) const {
    if (a > b) std::swap(a, b);
    return pairs.count({a, b}) > 0;
}

void SeedPairSet::merge(const SeedPairSet& other) {
    if (other.kind != kind) throw DomainError("merging seed sets of different kinds");
    pairs.insert(other.pairs.begin(), other.pairs.end());
}

MentionDictionary load_mention_dictionary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    MentionDictionary dict;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos)
            throw ParseError(path + " line " + std::to_string(lineno) +
                             ": expected 'mention<TAB>entity<TAB>prior'");
        std::string mention = lowercase(line.substr(0, t1));
        std::string entity = line.substr(t1 + 1, t2 - t1 - 1);
        double prior;
        try {
            prior = std::stod(line.substr(t2 + 1));
        } catch (const std::exception&) {
            throw ParseError(path + " line " + std::to_string(lineno) + ": bad prior");
        }
        if (prior < 0.0 || prior > 1.0)
            throw ParseError(path + " line " + std::to_string(lineno) +
                             ": prior outside [0,1]");
        dict.entries[mention].emplace_back(entity, prior);
    }
    return dict;
}

UrlProfiles load_url_profiles(const std::string& path, const PhraseTable& phrases,
                              PhraseKind kind) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    UrlProfiles profiles;
    std::string line;
    int lineno = 0;
    int skipped = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError(path + " line " + std::to_string(lineno) +
                             ": expected 'surface<TAB>url'");
        PhraseId id = phrases.find(kind, line.substr(0, tab));
        if (id < 0) {
            ++skipped;
            continue;
        }
        profiles.urls[id].insert(line.substr(tab + 1));
    }
    if (skipped > 0)
        warn(path + ": skipped " + std::to_string(skipped) + " lines for unknown phrases");
    return profiles;
}

SeedPairSet load_seed_pair_file(const std::string& path, const PhraseTable& phrases,
                                PhraseKind kind) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    SeedPairSet seeds;
    seeds.kind = kind;
    std::string line;
    int lineno = 0;
    int skipped = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError(path + " line " + std::to_string(lineno) +
                             ": expected 'surface_a<TAB>surface_b'");
        PhraseId a = phrases.find(kind, line.substr(0, tab));
        PhraseId b = phrases.find(kind, line.substr(tab + 1));
        if (a < 0 || b < 0) {
            ++skipped;
            continue;
        }
        seeds.insert(a, b);
    }
    if (skipped > 0)
        warn(path + ": skipped " + std::to_string(skipped) + " pairs with unknown phrases");
    return seeds;
}

void save_seed_pairs(const SeedPairSet& seeds, const PhraseTable& phrases,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& [a, b] : seeds.pairs)
        out << phrases.get(seeds.kind, a).surface << '\t'
            << phrases.get(seeds.kind, b).surface << '\n';
}

SeedPairSet seeds_from_dictionary(const std::vector<Phrase>& phrases,
                                  const MentionDictionary& dict, PhraseKind kind) {
    SeedPairSet seeds;
    seeds.kind = kind;
    // best entity per phrase; phrases absent from the dictionary emit nothing
    std::vector<std::pair<std::string, PhraseId>> best;  // (entity, phrase)
    for (const auto& p : phrases) {
        auto it = dict.entries.find(p.surface);
        if (it == dict.entries.end() || it->second.empty()) continue;
        const std::string* entity = nullptr;
        double prior = -1.0;
        for (const auto& [e, pr] : it->second) {
            if (pr > prior || (pr == prior && entity && e < *entity)) {
                entity = &e;
                prior = pr;
            }
        }
        best.emplace_back(*entity, p.id);
    }
    std::sort(best.begin(), best.end());
    for (std::size_t i = 0; i < best.size();) {
        std::size_t j = i;
        while (j < best.size() && best[j].first == best[i].first) ++j;
        for (std::size_t a = i; a < j; ++a)
            for (std::size_t b = a + 1; b < j; ++b)
                seeds.insert(best[a].second, best[b].second);
        i = j;
    }
    return seeds;
}

SeedPairSet seeds_from_urls(const std::vector<Phrase>& phrases, const UrlProfiles& profiles,
                            PhraseKind kind, double threshold) {
    if (threshold <= 0.0 || threshold > 1.0)
        throw DomainError("seeds_from_urls: threshold must be in (0,1]");
    SeedPairSet seeds;
    seeds.kind = kind;
    // only phrases with a profile take part in the pairwise pass
    std::vector<PhraseId> with_profile;
    std::vector<std::unordered_set<std::string>> sets;
    for (const auto& p : phrases) {
        auto it = profiles.urls.find(p.id);
        if (it == profiles.urls.end()) continue;
        with_profile.push_back(p.id);
        sets.push_back(it->second);
    }
    std::vector<std::pair<int, int>> idx_pairs;
    kernels::jaccard_pairs(sets, threshold, idx_pairs);
    for (auto [i, j] : idx_pairs) seeds.insert(with_profile[i], with_profile[j]);
    return seeds;
}

namespace {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};
} // namespace

Clustering seed_components(const std::vector<PhraseId>& universe, const SeedPairSet& seeds) {
    std::unordered_map<PhraseId, int> pos;
    pos.reserve(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i)
        pos.emplace(universe[i], static_cast<int>(i));

    UnionFind uf(universe.size());
    for (const auto& [a, b] : seeds.pairs) {
        auto ia = pos.find(a);
        auto ib = pos.find(b);
        if (ia == pos.end() || ib == pos.end()) continue;
        uf.unite(ia->second, ib->second);
    }

    Clustering c;
    c.element_ids = universe;
    c.assign.resize(universe.size());
    std::unordered_map<int, int> root_to_cluster;
    int next = 0;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        int root = uf.find(static_cast<int>(i));
        auto [it, inserted] = root_to_cluster.emplace(root, next);
        if (inserted) ++next;
        c.assign[i] = it->second;
    }
    c.k = next;
    return c;
}

} // namespace okbc
