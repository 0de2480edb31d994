#include "cachecast/indexcoding.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "cachecast/delivery.hpp"

namespace cachecast::indexcoding {

namespace {

std::uint64_t all_messages_mask(std::size_t n) {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace

IndexCodingInstance induce(const caching::CachingConfig& cfg, const caching::Prefetching& pf,
                           const caching::DemandVector& demand) {
  if (!cfg.integral_replication)
    throw std::domain_error("induce: replication K*M/N must be an integer");
  caching::validate_demand(cfg, demand);

  IndexCodingInstance instance;
  instance.subfiles = caching::demanded_messages(cfg, demand);
  instance.num_messages = instance.subfiles.size();
  if (instance.num_messages > 64)
    throw std::length_error("induce: more than 64 messages");
  std::map<caching::SubfileId, std::size_t> row_of;
  for (std::size_t i = 0; i < instance.num_messages; ++i) {
    row_of[instance.subfiles[i]] = i;
    instance.labels.push_back(caching::subfile_label(instance.subfiles[i]));
  }

  for (int user = 1; user <= cfg.num_users; ++user) {
    std::uint64_t side_info = 0;
    for (std::size_t i = 0; i < instance.num_messages; ++i)
      if (pf.caches(user, instance.subfiles[i])) side_info |= std::uint64_t{1} << i;
    for (std::uint32_t subset : pf.subsets()) {
      caching::SubfileId wanted{demand[user - 1], subset};
      if (pf.caches(user, wanted)) continue;  // trivially satisfied
      Receiver receiver;
      receiver.demand = static_cast<int>(row_of.at(wanted));
      receiver.side_info = side_info;
      receiver.interference = all_messages_mask(instance.num_messages) &
                              ~(side_info | (std::uint64_t{1} << receiver.demand));
      instance.receivers.push_back(receiver);
    }
  }
  return instance;
}

std::vector<caching::SubfileId> canonical_independent_set(const caching::CachingConfig& cfg,
                                                          const caching::DemandVector& demand) {
  if (!cfg.integral_replication)
    throw std::domain_error("canonical_independent_set: replication must be an integer");
  caching::validate_demand(cfg, demand);

  std::vector<caching::SubfileId> result;
  std::uint32_t excluded = 0;  // leaders seen so far
  for (int leader : delivery::choose_leaders(demand)) {
    excluded |= 1u << (leader - 1);
    for (std::uint32_t subset : subsets_of_size(cfg.num_users, cfg.r))
      if ((subset & excluded) == 0) result.push_back({demand[leader - 1], subset});
  }
  return result;
}

bool in_j_family(const IndexCodingInstance& instance, std::uint64_t subset_mask) {
  if (subset_mask == 0) throw std::domain_error("in_j_family: empty set");
  for (const Receiver& receiver : instance.receivers) {
    std::uint64_t demand_bit = std::uint64_t{1} << receiver.demand;
    if ((subset_mask & demand_bit) == 0) continue;
    if (((subset_mask ^ demand_bit) & ~receiver.interference) == 0) return true;
  }
  return false;
}

unsigned alpha_brute(const IndexCodingInstance& instance, unsigned cap) {
  if (instance.num_messages > cap)
    throw std::length_error("alpha_brute: message count exceeds cap");
  const std::size_t n = instance.num_messages;
  // good[E]: every nonempty subset of E is in the J family. A set is good
  // iff it is itself in J and stays good after removing any one element,
  // so supersets of a failing set are pruned for free.
  std::vector<char> good(std::size_t{1} << n, 0);
  good[0] = 1;
  unsigned best = 0;
  for (std::uint64_t set = 1; set < (std::uint64_t{1} << n); ++set) {
    bool inherited = true;
    for (std::uint64_t rest = set; rest != 0; rest &= rest - 1) {
      if (!good[set ^ (rest & (~rest + 1))]) {
        inherited = false;
        break;
      }
    }
    if (!inherited || !in_j_family(instance, set)) continue;
    good[set] = 1;
    best = std::max(best, static_cast<unsigned>(std::popcount(set)));
  }
  return best;
}

namespace {

// Branch-and-bound over fitting assignments, one receiver at a time in
// row-major free-bit order. Adding a row never lowers the rank, so any
// partial assignment whose basis already reaches the best known rank is
// pruned; hitting `lower_hint` aborts the whole search since the result
// cannot go below a valid lower bound.
struct MinRankSearch {
  const std::vector<Receiver>& receivers;
  unsigned lower_hint;
  unsigned best;
  bool done = false;
  std::vector<std::uint64_t> basis;  // rows with distinct leading bits

  std::uint64_t reduce(std::uint64_t row) const {
    for (std::uint64_t b : basis) {
      std::uint64_t lead = b & (~b + 1);
      if (row & lead) row ^= b;
    }
    return row;
  }

  void descend(std::size_t index) {
    if (done || basis.size() >= best) return;
    if (index == receivers.size()) {
      best = static_cast<unsigned>(basis.size());
      if (best <= lower_hint) done = true;
      return;
    }
    const Receiver& receiver = receivers[index];
    std::vector<int> free_positions;
    std::uint64_t side = receiver.side_info;
    while (side != 0) {
      free_positions.push_back(std::countr_zero(side));
      side &= side - 1;
    }
    const std::uint64_t choices = std::uint64_t{1} << free_positions.size();
    for (std::uint64_t pick = 0; pick < choices && !done; ++pick) {
      std::uint64_t row = std::uint64_t{1} << receiver.demand;
      for (std::size_t b = 0; b < free_positions.size(); ++b)
        if ((pick >> b) & 1) row ^= std::uint64_t{1} << free_positions[b];
      std::uint64_t reduced = reduce(row);
      if (reduced != 0) {
        basis.push_back(reduced);
        descend(index + 1);
        basis.pop_back();
      } else {
        descend(index + 1);
      }
    }
  }
};

}  // namespace

unsigned min_rank_brute(const IndexCodingInstance& instance, unsigned cap, unsigned lower_hint) {
  std::uint64_t free_bits = 0;
  for (const Receiver& receiver : instance.receivers)
    free_bits += std::popcount(receiver.side_info);
  if (free_bits > cap)
    throw std::length_error("min_rank_brute: free side-information bits exceed cap");
  if (instance.receivers.empty()) return 0;

  MinRankSearch search{instance.receivers, lower_hint,
                       static_cast<unsigned>(instance.receivers.size()), false, {}};
  search.descend(0);
  return search.best;
}

bool is_valid_index_code(const IndexCodingInstance& instance, const gf2::BitMatrix& code_matrix) {
  if (code_matrix.rows() != instance.num_messages)
    throw std::invalid_argument("is_valid_index_code: row count must match message count");
  for (const Receiver& receiver : instance.receivers) {
    // Rows the receiver cannot cancel; a decoding combination u needs
    // (L*u) to equal the demand's unit vector on them.
    std::vector<std::size_t> visible;
    for (std::size_t m = 0; m < instance.num_messages; ++m)
      if (((receiver.side_info >> m) & 1) == 0) visible.push_back(m);
    gf2::BitMatrix system(visible.size(), code_matrix.cols());
    gf2::BitVec unit(visible.size());
    for (std::size_t i = 0; i < visible.size(); ++i) {
      system.row(i) = code_matrix.row(visible[i]);
      if (static_cast<int>(visible[i]) == receiver.demand) unit.set(i, true);
    }
    if (!gf2::solve(system, unit)) return false;
  }
  return true;
}

std::string to_json_string(const IndexCodingInstance& instance) {
  nlohmann::json j;
  nlohmann::json messages = nlohmann::json::array();
  for (std::size_t i = 0; i < instance.num_messages; ++i)
    messages.push_back(i < instance.labels.size() ? instance.labels[i]
                                                  : "m" + std::to_string(i + 1));
  j["messages"] = messages;
  nlohmann::json receivers = nlohmann::json::array();
  for (const Receiver& receiver : instance.receivers) {
    nlohmann::json r;
    r["f"] = receiver.demand + 1;
    nlohmann::json side = nlohmann::json::array();
    std::uint64_t mask = receiver.side_info;
    while (mask != 0) {
      side.push_back(std::countr_zero(mask) + 1);
      mask &= mask - 1;
    }
    r["X"] = side;
    receivers.push_back(r);
  }
  j["receivers"] = receivers;
  return j.dump();
}

IndexCodingInstance instance_from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  IndexCodingInstance instance;
  instance.num_messages = j.at("messages").size();
  if (instance.num_messages > 64)
    throw std::length_error("instance_from_json_string: more than 64 messages");
  for (const auto& m : j.at("messages"))
    instance.labels.push_back(m.is_string() ? m.get<std::string>() : m.dump());
  for (const auto& r : j.at("receivers")) {
    Receiver receiver;
    int demand_1based = r.at("f").get<int>();
    if (demand_1based < 1 || demand_1based > static_cast<int>(instance.num_messages))
      throw std::domain_error("instance_from_json_string: receiver demand out of range");
    receiver.demand = demand_1based - 1;
    for (const auto& x : r.at("X")) {
      int index = x.get<int>();
      if (index < 1 || index > static_cast<int>(instance.num_messages))
        throw std::domain_error("instance_from_json_string: side information out of range");
      receiver.side_info |= std::uint64_t{1} << (index - 1);
    }
    if ((receiver.side_info >> receiver.demand) & 1)
      throw std::domain_error("instance_from_json_string: demand inside side information");
    receiver.interference = all_messages_mask(instance.num_messages) &
                            ~(receiver.side_info | (std::uint64_t{1} << receiver.demand));
    instance.receivers.push_back(receiver);
  }
  return instance;
}

}  // namespace cachecast::indexcoding
