#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "lifegraph/gexf.hpp"
#include "lifegraph/io.hpp"
#include "lifegraph/retweet_graph.hpp"

#include "support/fixture.hpp"

using namespace lifegraph;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LIFEGRAPH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const char* name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("cli exit codes: usage 1, data 2, io 3") {
    TempDir dir("lifegraph_cli_codes");
    CHECK(run_cli("definitely-not-a-subcommand") == 1);
    CHECK(run_cli("ingest") == 1);  // missing required --input
    CHECK(run_cli("ingest --input " + (dir / "missing.jsonl")) == 3);

    write_file(dir / "bad.jsonl", "{broken\n");
    CHECK(run_cli("ingest --input " + (dir / "bad.jsonl")) == 2);

    write_file(dir / "dup.jsonl",
               R"({"tweet_id":"t1","user_id":"a","text":"x","lang":"eu","created_at":"2018-05-01T10:00:00Z","retweet_of_user_id":null})"
               "\n"
               R"({"tweet_id":"t1","user_id":"b","text":"y","lang":"eu","created_at":"2018-05-01T11:00:00Z","retweet_of_user_id":null})"
               "\n");
    CHECK(run_cli("ingest --input " + (dir / "dup.jsonl")) == 2);
}

TEST_CASE("cli stage-by-stage chain matches the library pipeline") {
    TempDir dir("lifegraph_cli_chain");
    testing::FixtureSpec spec;
    spec.users_per_class = 8;
    spec.tweets_per_user = 12;
    spec.communities = 2;
    spec.hubs_per_community = 4;
    spec.seed = 123;
    const testing::Fixture fx = testing::make_fixture(spec);
    write_file(dir / "tweets.jsonl", fx.tweets_jsonl);
    write_file(dir / "style.tsv", fx.style_predictions_tsv);

    CHECK(run_cli("ingest --input " + (dir / "tweets.jsonl") + " --stats-out " + (dir / "stats.json")) == 0);
    CHECK(run_cli("build-dataset --corpus " + (dir / "tweets.jsonl") + " --predictions " + (dir / "style.tsv") +
                  " --n-per-class 4 --per-user 12 --seed 5 --out " + (dir / "dataset.jsonl")) == 0);
    CHECK(run_cli("train --data " + (dir / "dataset.jsonl") + " --min-freq 1 --seed 5 --out " + (dir / "model.json")) ==
          0);
    CHECK(run_cli("evaluate --model " + (dir / "model.json") + " --data " + (dir / "dataset.jsonl") +
                  " --split test --out " + (dir / "metrics.json")) == 0);
    CHECK(run_cli("predict --model " + (dir / "model.json") + " --in " + (dir / "tweets.jsonl") + " --out " +
                  (dir / "predictions.tsv")) == 0);
    CHECK(run_cli("aggregate --predictions " + (dir / "predictions.tsv") + " --corpus " + (dir / "tweets.jsonl") +
                  " --out " + (dir / "lifestages.csv")) == 0);
    CHECK(run_cli("compare --old " + (dir / "lifestages.csv") + " --new " + (dir / "lifestages.csv") + " --out " +
                  (dir / "transitions.csv")) == 0);
    CHECK(run_cli("graph --corpus " + (dir / "tweets.jsonl") + " --lifestages " + (dir / "lifestages.csv") +
                  " --out " + (dir / "edges.csv")) == 0);
    CHECK(run_cli("rank --graph " + (dir / "edges.csv") + " --kind total --top 5 --out " + (dir / "rank.csv")) == 0);
    CHECK(run_cli("embed --graph " + (dir / "edges.csv") +
                  " --dims 12 --walk-length 10 --walks-per-node 4 --epochs 2 --seed 5 --out " +
                  (dir / "embeddings.txt")) == 0);
    CHECK(run_cli("communities --embeddings " + (dir / "embeddings.txt") + " --k 2 --seed 5 --graph " +
                  (dir / "edges.csv") + " --out " + (dir / "communities.csv")) == 0);
    CHECK(run_cli("layout --graph " + (dir / "edges.csv") + " --iterations 30 --seed 5 --out " +
                  (dir / "positions.csv")) == 0);
    CHECK(run_cli("export-gexf --graph " + (dir / "edges.csv") + " --lifestages " + (dir / "lifestages.csv") +
                  " --communities " + (dir / "communities.csv") + " --positions " + (dir / "positions.csv") +
                  " --out " + (dir / "graph.gexf")) == 0);
    CHECK(run_cli("render-svg --graph " + (dir / "edges.csv") + " --positions " + (dir / "positions.csv") +
                  " --communities " + (dir / "communities.csv") + " --out " + (dir / "map.svg")) == 0);

    const GexfData gexf = read_gexf(dir / "graph.gexf");
    CHECK(edges_to_csv(gexf.graph) == read_file(dir / "edges.csv"));
    CHECK(!gexf.lifestages.empty());
    CHECK(!gexf.positions.empty());

    const std::string svg = read_file(dir / "map.svg");
    CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("cli reads toml and json config files") {
    TempDir dir("lifegraph_cli_config");
    testing::FixtureSpec spec;
    spec.users_per_class = 4;
    spec.tweets_per_user = 6;
    const testing::Fixture fx = testing::make_fixture(spec);
    write_file(dir / "tweets.jsonl", fx.tweets_jsonl);

    write_file(dir / "conf.toml", "input = \"" + (dir / "tweets.jsonl") + "\"\nstats-out = \"" + (dir / "s1.json") +
                                      "\"\n");
    CHECK(run_cli("ingest --config " + (dir / "conf.toml")) == 0);

    write_file(dir / "conf.json",
               "{\"input\": \"" + (dir / "tweets.jsonl") + "\", \"stats-out\": \"" + (dir / "s2.json") + "\"}");
    CHECK(run_cli("ingest --config " + (dir / "conf.json")) == 0);

    CHECK(read_file(dir / "s1.json") == read_file(dir / "s2.json"));

    // flags override config values
    write_file(dir / "conf2.json", "{\"input\": \"" + (dir / "nope.jsonl") + "\"}");
    CHECK(run_cli("ingest --config " + (dir / "conf2.json") + " --input " + (dir / "tweets.jsonl")) == 0);
}

TEST_CASE("cli run executes the full pipeline") {
    TempDir dir("lifegraph_cli_run");
    testing::FixtureSpec spec;
    spec.users_per_class = 8;
    spec.tweets_per_user = 12;
    spec.communities = 2;
    spec.hubs_per_community = 4;
    spec.seed = 321;
    const testing::Fixture fx = testing::make_fixture(spec);
    write_file(dir / "tweets.jsonl", fx.tweets_jsonl);
    write_file(dir / "style.tsv", fx.style_predictions_tsv);

    const std::string args = "run --corpus " + (dir / "tweets.jsonl") + " --style-predictions " + (dir / "style.tsv") +
                             " --out-dir " + (dir / "out") +
                             " --n-per-class 4 --per-user 12 --min-freq 1 --dims 12 --walk-length 10"
                             " --walks-per-node 4 --sgns-epochs 2 --k 2 --iterations 30 --seed 9";
    CHECK(run_cli(args) == 0);
    CHECK(fs::exists(dir.path / "out" / "report.json"));
    CHECK(fs::exists(dir.path / "out" / "graph.gexf"));
}
