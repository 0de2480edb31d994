#include "cachecast/delivery.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace cachecast::delivery {

std::vector<int> choose_leaders(const caching::DemandVector& demand) {
  std::map<int, int> first_user;  // file -> lowest user demanding it
  for (int user = static_cast<int>(demand.size()); user >= 1; --user)
    first_user[demand[user - 1]] = user;
  std::vector<int> leaders;
  leaders.reserve(first_user.size());
  for (const auto& [file, user] : first_user) leaders.push_back(user);
  std::sort(leaders.begin(), leaders.end());
  return leaders;
}

DeliveryResult yma_transmissions(const caching::CachingConfig& cfg,
                                 const caching::Prefetching& pf,
                                 const caching::DemandVector& demand) {
  if (!cfg.integral_replication)
    throw std::domain_error("yma_transmissions: replication K*M/N must be an integer");
  caching::validate_demand(cfg, demand);

  std::uint32_t leader_mask = 0;
  for (int leader : choose_leaders(demand)) leader_mask |= 1u << (leader - 1);

  std::vector<caching::SubfileId> messages = caching::demanded_messages(cfg, demand);
  std::map<caching::SubfileId, std::size_t> message_row;
  for (std::size_t i = 0; i < messages.size(); ++i) message_row[messages[i]] = i;

  DeliveryResult result;
  result.code.message_index = messages;

  std::vector<gf2::BitVec> columns;  // one per transmission, message-indexed
  for (std::uint32_t group : subsets_of_size(cfg.num_users, cfg.r + 1)) {
    if ((group & leader_mask) == 0) continue;
    gf2::BitVec symbol(cfg.subfile_bits);
    gf2::BitVec column(messages.size());
    for (int user : mask_to_elements(group)) {
      caching::SubfileId term{demand[user - 1], group & ~(1u << (user - 1))};
      symbol ^= pf.payload(term);
      column.set(message_row.at(term), true);
    }
    result.transmissions.labels.push_back(group);
    result.transmissions.symbols.push_back(std::move(symbol));
    columns.push_back(std::move(column));
  }

  gf2::BitMatrix matrix(messages.size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t m = 0; m < messages.size(); ++m)
      if (columns[j].get(m)) matrix.set(m, j, true);
  result.code.matrix = std::move(matrix);
  return result;
}

gf2::BitVec user_decode_linear(const caching::CachingConfig& cfg, const caching::Prefetching& pf,
                               const caching::DemandVector& demand, int user,
                               const IndexCodeMatrix& code,
                               const std::vector<gf2::BitVec>& symbols) {
  caching::validate_demand(cfg, demand);
  if (user < 1 || user > cfg.num_users)
    throw std::domain_error("user_decode_linear: user out of range");
  if (symbols.size() != code.matrix.cols())
    throw std::invalid_argument("user_decode_linear: one symbol per transmission expected");
  const int wanted_file = demand[user - 1];
  const std::vector<caching::SubfileId>& messages = code.message_index;

  // Rows the user cannot cancel from cache: all messages outside its side
  // information. A combination u of transmissions isolates a target
  // message when (L*u) restricted to these rows is the target's unit
  // vector; cached rows may appear in L*u and are XORed back out.
  std::vector<std::size_t> visible_rows;
  for (std::size_t m = 0; m < messages.size(); ++m)
    if (!pf.caches(user, messages[m])) visible_rows.push_back(m);

  gf2::BitMatrix visible(visible_rows.size(), code.matrix.cols());
  for (std::size_t i = 0; i < visible_rows.size(); ++i) visible.row(i) = code.matrix.row(visible_rows[i]);

  gf2::BitVec file_bits;
  for (std::uint32_t subset : pf.subsets()) {
    caching::SubfileId target{wanted_file, subset};
    if (pf.caches(user, target)) {
      file_bits.append(pf.payload(target));
      continue;
    }
    gf2::BitVec unit(visible_rows.size());
    for (std::size_t i = 0; i < visible_rows.size(); ++i)
      if (messages[visible_rows[i]] == target) unit.set(i, true);
    auto combination = gf2::solve(visible, unit);
    if (!combination)
      throw std::runtime_error("user_decode_linear: index code cannot isolate " +
                               caching::subfile_label(target));

    gf2::BitVec value(cfg.subfile_bits);
    for (std::size_t j = 0; j < symbols.size(); ++j)
      if (combination->get(j)) value ^= symbols[j];
    // Remove side-information contributions picked up by the combination.
    gf2::BitVec hit = gf2::mul_vec(code.matrix, *combination);
    for (std::size_t m = 0; m < messages.size(); ++m)
      if (hit.get(m) && pf.caches(user, messages[m])) value ^= pf.payload(messages[m]);
    file_bits.append(value);
  }
  return file_bits;
}

std::string to_json_string(const TransmissionSet& transmissions, int subfile_bits) {
  nlohmann::json j;
  nlohmann::json labels = nlohmann::json::array();
  for (std::uint32_t mask : transmissions.labels) labels.push_back(mask_to_elements(mask));
  j["labels"] = labels;
  nlohmann::json symbols = nlohmann::json::array();
  for (const auto& symbol : transmissions.symbols) symbols.push_back(symbol.to_hex());
  j["symbols"] = symbols;
  j["bits_per_symbol"] = subfile_bits;
  return j.dump();
}

}  // namespace cachecast::delivery
