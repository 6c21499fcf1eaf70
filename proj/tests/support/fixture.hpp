#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lifegraph::testing {

// Synthetic corpus with planted structure, used as the oracle for
// end-to-end checks:
//  - two user populations writing in distinct styles (informal markers with
//    elongations and slang vs a formal lexicon),
//  - style predictions with a configurable error rate,
//  - a planted community structure in the young users' retweets: every young
//    user mostly retweets hub accounts of its own block.
struct FixtureSpec {
    std::size_t users_per_class = 100;
    std::size_t tweets_per_user = 30;
    std::size_t communities = 4;
    std::size_t hubs_per_community = 20;
    double retweet_fraction = 0.5;    // of a young user's tweets
    double own_community_prob = 0.9;  // retweet target within own block
    double style_noise = 0.05;        // tweet written in the opposite style
    double prediction_noise = 0.02;   // style prediction flipped
    double non_basque_fraction = 0.05;
    std::uint64_t seed = 7;
};

struct Fixture {
    std::string tweets_jsonl;
    std::string style_predictions_tsv;            // informal/formal, per tweet
    std::map<std::string, std::string> true_lifestage;   // user -> young/adult
    std::map<std::string, int> planted_community;        // young users + hubs -> block
    std::size_t n_users = 0;
    std::size_t n_tweets = 0;
    std::size_t n_retweets = 0;
};

Fixture make_fixture(const FixtureSpec& spec);

} // namespace lifegraph::testing
