#pragma once

#include <map>
#include <string>
#include <vector>

namespace lifegraph {

// token -> cluster id, loaded from a TSV. Up to three lexicons (one per
// clustering family) are normally in play at once.
struct ClusterLexicon {
    std::string name;
    std::map<std::string, std::string> clusters;
};

ClusterLexicon read_lexicon_tsv(const std::string& path, const std::string& name = "");
ClusterLexicon parse_lexicon_tsv(const std::string& contents, const std::string& origin, const std::string& name);

// Sparse feature map. Categorical features carry value 1.0; the punctuation
// density feature is real-valued.
using FeatureVector = std::map<std::string, double>;

// Shallow local features over a preprocessed tweet:
//   w=       token unigrams            w2=      token bigrams
//   c2..c4=  character n-grams         p1..p4=/s1..s4=  prefixes/suffixes
//   sh:digit sh:caps sh:elong          token shape indicators
//   punct_density                      punctuation codepoints / codepoints
//   clus:[name:]id                     cluster lexicon lookups
// The elongation indicator fires when some letter occurs three or more times
// in a token ("jajaja", "aupaaa").
FeatureVector extract_features(const std::string& text, const std::vector<ClusterLexicon>& lexicons = {});

} // namespace lifegraph
