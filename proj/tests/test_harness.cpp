#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "axcond/config.hpp"
#include "axcond/envelope.hpp"
#include "axcond/runner.hpp"

using namespace axcond;

TEST_CASE("shortest round-trip number formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1e-3) == "0.001");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  // value survives the trip exactly
  const double ugly = 0.1 + 0.2;
  CHECK(std::stod(format_double(ugly)) == ugly);
  CHECK(csv_cell(std::numeric_limits<double>::quiet_NaN()).empty());
  CHECK(csv_cell(2.5) == "2.5");
}

TEST_CASE("canonical configuration text and hash") {
  ExperimentConfig cfg;
  const std::string canon = cfg.canonical();

  SUBCASE("carries the physics keys") {
    CHECK(canon.find("lattice.l=64") != std::string::npos);
    CHECK(canon.find("disorder.w=4") != std::string::npos);
    CHECK(canon.find("seed=1") != std::string::npos);
    CHECK(canon.find("kernels=") != std::string::npos);
  }
  SUBCASE("is stable across calls") {
    CHECK(cfg.canonical() == canon);
    CHECK(cfg.hash_hex() == cfg.hash_hex());
    CHECK(cfg.hash_hex().size() == 16);
  }
  SUBCASE("ignores execution-only fields") {
    ExperimentConfig other = cfg;
    other.workers = 8;
    other.outdir = "/somewhere/else";
    CHECK(other.hash() == cfg.hash());
  }
  SUBCASE("tracks physics fields") {
    ExperimentConfig other = cfg;
    other.seed = 2;
    CHECK(other.hash() != cfg.hash());
    other = cfg;
    other.l = 128;
    CHECK(other.hash() != cfg.hash());
    other = cfg;
    other.intervals.push_back({-1.0, 1.0});
    CHECK(other.hash() != cfg.hash());
  }
}

TEST_CASE("run envelope") {
  ExperimentConfig cfg;
  cfg.n_real = 3;
  const std::vector<std::uint64_t> seeds{realization_seed(cfg.seed, 0),
                                         realization_seed(cfg.seed, 1),
                                         realization_seed(cfg.seed, 2)};
  const auto env = make_envelope(cfg, seeds, {"one warning"});
  CHECK(env["config_hash"] == cfg.hash_hex());
  CHECK(env["master_seed"] == cfg.seed);
  CHECK(env["seeds"].size() == 3);
  CHECK(env["warnings"].size() == 1);
  CHECK(env.contains("tool_version"));
  CHECK(env.contains("kernels"));
  CHECK_FALSE(env.contains("wall_clock"));  // timing never lands in files

  const std::string header = csv_envelope_header(cfg);
  CHECK(header.find(cfg.hash_hex()) != std::string::npos);
  CHECK(header.find("# master_seed=1") != std::string::npos);
}

TEST_CASE("text file writer") {
  const std::string path = "/tmp/axcond_test_write.txt";
  write_text_file(path, "a,b\n1,2\n");
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "a,b\n1,2\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.txt", "y"), std::runtime_error);
}

TEST_CASE("indexed runner") {
  SUBCASE("covers every index once, any worker count") {
    for (int workers : {1, 4}) {
      std::vector<int> hits(100, 0);
      run_indexed(100, workers, [&](std::int64_t i) { hits[static_cast<std::size_t>(i)]++; });
      for (int h : hits) CHECK(h == 1);
    }
  }
  SUBCASE("slot results are worker-count independent") {
    auto fill = [](int workers) {
      std::vector<double> out(64);
      run_indexed(64, workers, [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] = static_cast<double>(i) * 1.5;
      });
      return out;
    };
    CHECK(fill(1) == fill(4));
  }
  SUBCASE("first task exception reaches the caller") {
    CHECK_THROWS_WITH_AS(
        run_indexed(10, 3,
                    [](std::int64_t i) {
                      if (i == 7) throw std::runtime_error("boom at seven");
                    }),
        "boom at seven", std::runtime_error);
  }
  SUBCASE("rejects a nonpositive worker count") {
    CHECK_THROWS_AS(run_indexed(1, 0, [](std::int64_t) {}), std::invalid_argument);
  }
}

TEST_CASE("partial merging") {
  const std::uint64_t h = 0xabcdef;
  SUBCASE("pooled mean and spread") {
    std::vector<Partial> parts{{h, 2, 3.0}, {h, 0, 1.0}, {h, 1, 2.0}};
    const auto m = merge_partials(parts);
    CHECK(m.n == 3);
    CHECK(m.mean == doctest::Approx(2.0));
    CHECK(m.stderr_ == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  }
  SUBCASE("order independence is exact") {
    std::vector<Partial> a{{h, 0, 0.25}, {h, 1, 0.5}, {h, 2, 0.125}};
    std::vector<Partial> b{{h, 2, 0.125}, {h, 0, 0.25}, {h, 1, 0.5}};
    const auto ma = merge_partials(a);
    const auto mb = merge_partials(b);
    CHECK(ma.mean == mb.mean);
    CHECK(ma.stderr_ == mb.stderr_);
  }
  SUBCASE("identical partials collapse to zero spread") {
    std::vector<Partial> parts{{h, 0, 0.7}, {h, 1, 0.7}, {h, 2, 0.7}};
    const auto m = merge_partials(parts);
    CHECK(m.mean == doctest::Approx(0.7));
    CHECK(m.stderr_ == 0.0);
  }
  SUBCASE("single partial has undefined spread") {
    std::vector<Partial> parts{{h, 0, 0.7}};
    const auto m = merge_partials(parts);
    CHECK(m.n == 1);
    CHECK(std::isnan(m.stderr_));
  }
  SUBCASE("refuses mixed configurations and empty input") {
    std::vector<Partial> parts{{h, 0, 1.0}, {h + 1, 1, 2.0}};
    CHECK_THROWS_AS(merge_partials(parts), std::invalid_argument);
    CHECK_THROWS_AS(merge_partials({}), std::invalid_argument);
  }
}
