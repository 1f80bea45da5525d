#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "gtlab/parallel.hpp"

using namespace gtlab;

TEST_CASE("map_indices preserves index order") {
  for (Exec e : {Exec::serial, Exec::parallel}) {
    const auto v = map_indices<std::size_t>(1000, e, [](std::size_t i) { return i * i; });
    REQUIRE(v.size() == 1000);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == i * i);
  }
  CHECK(map_indices<int>(0, Exec::parallel, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("for_each_index visits every index once") {
  std::vector<std::atomic<int>> hits(500);
  for_each_index(hits.size(), Exec::parallel, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("exceptions propagate out of worker tasks") {
  for (Exec e : {Exec::serial, Exec::parallel}) {
    CHECK_THROWS_AS(for_each_index(64, e,
                                   [](std::size_t i) {
                                     if (i == 17) throw std::runtime_error("task 17");
                                   }),
                    std::runtime_error);
  }
}

TEST_CASE("policy names") {
  CHECK(to_string(Exec::serial) == "serial");
  CHECK(to_string(Exec::parallel) == "parallel");
  CHECK(worker_count() >= 1);
}
