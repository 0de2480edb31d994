#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "cachecast/delivery.hpp"
#include "cachecast/indexcoding.hpp"

using namespace cachecast;

namespace {

struct Setup {
  caching::CachingConfig cfg;
  std::vector<gf2::BitVec> files;
  caching::Prefetching pf;
};

Setup make_setup(int num_files, int num_users, long long m_num, long long m_den = 1,
                 std::uint64_t seed = 2024) {
  auto cfg = caching::make_config(num_files, num_users, Rational(m_num, m_den), 8);
  auto files = caching::generate_files(cfg, seed);
  auto pf = caching::Prefetching::symmetric_batch(cfg, files);
  return {cfg, files, pf};
}

gf2::BitVec payload_xor(const caching::Prefetching& pf,
                        const std::vector<caching::SubfileId>& terms) {
  gf2::BitVec value(pf.config().subfile_bits);
  for (const auto& id : terms) value ^= pf.payload(id);
  return value;
}

void iterate_demands(int num_files, int num_users,
                     const std::function<void(const caching::DemandVector&)>& body) {
  caching::DemandVector demand(num_users, 1);
  while (true) {
    body(demand);
    int pos = num_users - 1;
    while (pos >= 0 && demand[pos] == num_files) demand[pos--] = 1;
    if (pos < 0) return;
    ++demand[pos];
  }
}

}  // namespace

TEST_CASE("leader selection") {
  CHECK(delivery::choose_leaders({1, 2, 3}) == std::vector<int>{1, 2, 3});
  CHECK(delivery::choose_leaders({1, 1, 1}) == std::vector<int>{1});
  CHECK(delivery::choose_leaders({1, 2, 1, 2}) == std::vector<int>{1, 2});
  CHECK(delivery::choose_leaders({2, 2, 1}) == std::vector<int>{1, 3});
}

TEST_CASE("three-user unit-cache delivery emits the three pairwise xors") {
  auto s = make_setup(3, 3, 1);
  auto result = delivery::yma_transmissions(s.cfg, s.pf, {1, 2, 3});
  REQUIRE(result.transmissions.symbols.size() == 3);
  CHECK(result.transmissions.labels ==
        std::vector<std::uint32_t>{0b011, 0b101, 0b110});
  CHECK(result.transmissions.symbols[0] == payload_xor(s.pf, {{1, 0b010}, {2, 0b001}}));
  CHECK(result.transmissions.symbols[1] == payload_xor(s.pf, {{1, 0b100}, {3, 0b001}}));
  CHECK(result.transmissions.symbols[2] == payload_xor(s.pf, {{2, 0b100}, {3, 0b010}}));
}

TEST_CASE("four-user two-file delivery emits the four known transmissions") {
  auto s = make_setup(2, 4, 1);  // r = 2
  auto result = delivery::yma_transmissions(s.cfg, s.pf, {1, 2, 1, 2});
  REQUIRE(result.transmissions.symbols.size() == 4);
  CHECK(result.transmissions.labels ==
        std::vector<std::uint32_t>{0b0111, 0b1011, 0b1101, 0b1110});
  // S = {1,2,3}: users 1,2,3 contribute subfiles of their demands.
  CHECK(result.transmissions.symbols[0] ==
        payload_xor(s.pf, {{1, 0b0110}, {2, 0b0101}, {1, 0b0011}}));
  // S = {1,2,4}
  CHECK(result.transmissions.symbols[1] ==
        payload_xor(s.pf, {{1, 0b1010}, {2, 0b1001}, {2, 0b0011}}));
  // S = {1,3,4}
  CHECK(result.transmissions.symbols[2] ==
        payload_xor(s.pf, {{1, 0b1100}, {1, 0b1001}, {2, 0b0101}}));
  // S = {2,3,4}
  CHECK(result.transmissions.symbols[3] ==
        payload_xor(s.pf, {{2, 0b1100}, {1, 0b1010}, {2, 0b0110}}));
}

TEST_CASE("single distinct demand with heavy caching needs one transmission") {
  auto s = make_setup(3, 3, 2);  // r = 2
  auto result = delivery::yma_transmissions(s.cfg, s.pf, {1, 1, 1});
  REQUIRE(result.transmissions.symbols.size() == 1);
  CHECK(result.transmissions.symbols[0] ==
        payload_xor(s.pf, {{1, 0b011}, {1, 0b110}, {1, 0b101}}));
}

TEST_CASE("full cache needs no transmissions") {
  auto s = make_setup(2, 3, 2);  // r = K
  auto result = delivery::yma_transmissions(s.cfg, s.pf, {2, 1, 2});
  CHECK(result.transmissions.symbols.empty());
  CHECK(result.code.matrix.cols() == 0);
  // Decoding reads everything from cache.
  for (int user = 1; user <= 3; ++user) {
    auto file = delivery::user_decode_linear(s.cfg, s.pf, {2, 1, 2}, user, result.code, {});
    CHECK(file == s.files[(user == 2 ? 1 : 2) - 1]);
  }
}

TEST_CASE("transmission count law over small configurations") {
  struct Config {
    int num_files, num_users;
    long long m_num, m_den;
  };
  for (const Config& c : std::initializer_list<Config>{
           {3, 3, 1, 1}, {3, 3, 2, 1}, {2, 4, 1, 1}, {4, 4, 1, 1}}) {
    auto s = make_setup(c.num_files, c.num_users, c.m_num, c.m_den);
    iterate_demands(c.num_files, c.num_users, [&](const caching::DemandVector& demand) {
      auto result = delivery::yma_transmissions(s.cfg, s.pf, demand);
      std::uint64_t expected =
          binomial(c.num_users, s.cfg.r + 1) -
          binomial(c.num_users - caching::distinct_demands(demand), s.cfg.r + 1);
      CHECK(result.transmissions.symbols.size() == expected);
      // Every column of the induced matrix is nonzero.
      for (std::size_t j = 0; j < result.code.matrix.cols(); ++j) {
        bool nonzero = false;
        for (std::size_t m = 0; m < result.code.matrix.rows(); ++m)
          nonzero = nonzero || result.code.matrix.get(m, j);
        CHECK(nonzero);
      }
    });
  }
}

TEST_CASE("every user decodes its file exactly, for every demand") {
  struct Config {
    int num_files, num_users;
    long long m_num, m_den;
  };
  for (const Config& c : std::initializer_list<Config>{
           {3, 3, 1, 1}, {3, 3, 2, 1}, {2, 4, 1, 1}, {4, 4, 1, 1}}) {
    auto s = make_setup(c.num_files, c.num_users, c.m_num, c.m_den);
    iterate_demands(c.num_files, c.num_users, [&](const caching::DemandVector& demand) {
      auto result = delivery::yma_transmissions(s.cfg, s.pf, demand);
      for (int user = 1; user <= c.num_users; ++user) {
        auto file = delivery::user_decode_linear(s.cfg, s.pf, demand, user, result.code,
                                                 result.transmissions.symbols);
        CHECK(file == s.files[demand[user - 1] - 1]);
      }
    });
  }
}

TEST_CASE("decoding one subfile through a two-symbol combination") {
  // d = (1,1,1), r = 1: user 2 reads X1{1} from Y{1,2} and X1{3} from
  // Y{1,2} xor Y{1,3}.
  auto s = make_setup(3, 3, 1);
  caching::DemandVector demand{1, 1, 1};
  auto result = delivery::yma_transmissions(s.cfg, s.pf, demand);
  REQUIRE(result.transmissions.labels == std::vector<std::uint32_t>{0b011, 0b101});
  auto file = delivery::user_decode_linear(s.cfg, s.pf, demand, 2, result.code,
                                           result.transmissions.symbols);
  CHECK(file == s.files[0]);
  // Spot-check the algebra by hand: Y{1,2} = X1{2} + X1{1} and
  // Y{1,2} + Y{1,3} = X1{2} + X1{3}; user 2 caches X1{2}.
  CHECK((result.transmissions.symbols[0] ^ s.pf.payload({1, 0b010})) == s.pf.payload({1, 0b001}));
  CHECK((result.transmissions.symbols[0] ^ result.transmissions.symbols[1] ^
         s.pf.payload({1, 0b010})) == s.pf.payload({1, 0b100}));
}

TEST_CASE("delivery matrix is a valid index code") {
  for (long long m : {1, 2}) {
    auto s = make_setup(3, 3, m);
    iterate_demands(3, 3, [&](const caching::DemandVector& demand) {
      auto result = delivery::yma_transmissions(s.cfg, s.pf, demand);
      auto instance = indexcoding::induce(s.cfg, s.pf, demand);
      CHECK(indexcoding::is_valid_index_code(instance, result.code.matrix));
    });
  }
}

TEST_CASE("transmission json carries labels and hex payloads") {
  auto s = make_setup(3, 3, 1);
  auto result = delivery::yma_transmissions(s.cfg, s.pf, {1, 2, 3});
  std::string text = delivery::to_json_string(result.transmissions, s.cfg.subfile_bits);
  CHECK(text.find("\"labels\":[[1,2],[1,3],[2,3]]") != std::string::npos);
  CHECK(text.find("\"bits_per_symbol\":8") != std::string::npos);
}
