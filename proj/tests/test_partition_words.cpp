#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rtm/errors.hpp"
#include "rtm/partition_words.hpp"

using namespace rtm;

TEST_CASE("enumeration counts and order") {
  CHECK(enumerate_set_partitions(1).size() == 1);
  const auto two = enumerate_set_partitions(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].key() == "11");
  CHECK(two[1].key() == "12");

  const auto three = enumerate_set_partitions(3);
  REQUIRE(three.size() == 5);
  const std::vector<std::string> expected{"111", "112", "121", "122", "123"};
  for (size_t i = 0; i < expected.size(); ++i) CHECK(three[i].key() == expected[i]);

  for (int m = 1; m <= 8; ++m) {
    const auto words = enumerate_set_partitions(m);
    CHECK(Int{static_cast<long long>(words.size())} == oracle::bell(m));
    CHECK(std::is_sorted(words.begin(), words.end()));
  }
}

TEST_CASE("restricted growth validation") {
  CHECK_NOTHROW(SetPartitionString::from_rgs({1, 2, 1, 3}));
  CHECK_THROWS_AS(SetPartitionString::from_rgs({2, 1}), std::domain_error);
  CHECK_THROWS_AS(SetPartitionString::from_rgs({1, 3}), std::domain_error);
}

TEST_CASE("canonicalization by first occurrence") {
  const auto s = SetPartitionString::from_word({3, 1, 3, 2});
  CHECK(s.key() == "1213");
  CHECK(s.block_count() == 3);
  CHECK(s.multiplicities() == std::vector<int>{2, 1, 1});
  const auto b = s.blocks();
  REQUIRE(b.size() == 3);
  CHECK(b[0] == std::vector<int>{1, 3});
  CHECK(b[1] == std::vector<int>{2});
  CHECK(b[2] == std::vector<int>{4});
}

TEST_CASE("resource guard with override") {
  CHECK_THROWS_AS(enumerate_set_partitions(9), ResourceError);
  CHECK_NOTHROW(enumerate_set_partitions(9, 9));
  CHECK_THROWS_AS(enumerate_set_partitions(0), std::domain_error);
}
