#include "spacebound/time_order.hpp"

#include <algorithm>
#include <set>

#include "spacebound/error.hpp"

namespace spacebound {

namespace {

constexpr std::size_t kWord = 64;

void set_bit(std::vector<std::uint64_t>& row, std::size_t i) { row[i / kWord] |= 1ULL << (i % kWord); }
bool get_bit(const std::vector<std::uint64_t>& row, std::size_t i) {
  return (row[i / kWord] >> (i % kWord)) & 1ULL;
}

}  // namespace

TimeOrder::TimeOrder(std::vector<std::string> points,
                     std::vector<std::pair<std::string, std::string>> edges)
    : points_(std::move(points)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].empty()) throw Error(ErrorCode::InvalidArgument, "empty time point name");
    if (!index_.emplace(points_[i], i).second) throw Error(ErrorCode::DuplicateName, points_[i]);
  }
  const std::size_t n = points_.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [a, b] : edges_) {
    std::size_t ia = index_of(a);
    std::size_t ib = index_of(b);
    if (ia == ib) throw Error(ErrorCode::CyclicOrder, "self edge on " + a);
    succ[ia].push_back(ib);
    ++indegree[ib];
  }

  // Kahn's algorithm gives a topological order or detects a cycle.
  std::vector<std::size_t> topo;
  topo.reserve(n);
  std::vector<std::size_t> ready;
  for (std::size_t i = n; i-- > 0;) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    topo.push_back(v);
    for (std::size_t w : succ[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (topo.size() != n) throw Error(ErrorCode::CyclicOrder, "time order edges contain a cycle");

  const std::size_t words = (n + kWord - 1) / kWord;
  closure_.assign(n, std::vector<std::uint64_t>(words, 0));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto& row = closure_[*it];
    set_bit(row, *it);
    for (std::size_t w : succ[*it]) {
      const auto& other = closure_[w];
      for (std::size_t k = 0; k < words; ++k) row[k] |= other[k];
    }
  }
}

TimeOrder TimeOrder::chain(std::size_t n, const std::string& prefix) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return chain_of(std::move(names));
}

TimeOrder TimeOrder::chain_of(std::vector<std::string> names) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 1; i < names.size(); ++i) edges.emplace_back(names[i - 1], names[i]);
  return TimeOrder(std::move(names), std::move(edges));
}

std::size_t TimeOrder::index_of(std::string_view p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw Error(ErrorCode::UnknownTimePoint, std::string(p));
  return it->second;
}

bool TimeOrder::reachable(std::size_t from, std::size_t to) const {
  return get_bit(closure_.at(from), to);
}

bool TimeOrder::is_chain() const {
  if (points_.empty()) return true;
  std::vector<int> out(points_.size(), 0), in(points_.size(), 0);
  std::set<std::pair<std::size_t, std::size_t>> distinct;
  for (const auto& [a, b] : edges_) distinct.emplace(index_of(a), index_of(b));
  for (const auto& [a, b] : distinct) {
    ++out[a];
    ++in[b];
  }
  if (distinct.size() != points_.size() - 1) return false;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (out[i] > 1 || in[i] > 1) return false;
  }
  // n-1 edges, degrees <= 1 and acyclic means one path.
  return true;
}

std::vector<std::string> TimeOrder::chain_sequence() const {
  if (!is_chain()) throw Error(ErrorCode::NotAChain, "time order is not a total chain");
  std::vector<std::size_t> idx(points_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  // In a chain the number of reachable points strictly decreases along the path.
  auto count = [&](std::size_t i) {
    std::size_t c = 0;
    for (auto w : closure_[i]) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  };
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return count(a) > count(b); });
  std::vector<std::string> seq;
  seq.reserve(idx.size());
  for (auto i : idx) seq.push_back(points_[i]);
  return seq;
}

Ordering time_leq(const TimeOrder& order, std::string_view a, std::string_view b) {
  std::size_t ia = order.index_of(a);
  std::size_t ib = order.index_of(b);
  if (order.reachable(ia, ib)) return Ordering::Yes;
  if (order.reachable(ib, ia)) return Ordering::No;
  return Ordering::Incomparable;
}

std::vector<std::string> expand_interval(const TimeOrder& order, std::string_view from,
                                         std::string_view to) {
  std::size_t ia = order.index_of(from);
  std::size_t ib = order.index_of(to);
  if (!order.reachable(ia, ib)) {
    throw Error(ErrorCode::NotOrdered, std::string(from) + " is not before " + std::string(to));
  }
  std::vector<std::string> out;
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (order.reachable(ia, p) && order.reachable(p, ib)) out.push_back(order.points()[p]);
  }
  return out;
}

std::string to_string(const TimeIndex& idx) {
  if (idx.is_point()) return idx.from;
  return "[" + idx.from + "," + idx.to + "]";
}

std::vector<std::string> covered_points(const TimeOrder& order, const TimeIndex& idx) {
  if (idx.is_point()) {
    order.index_of(idx.from);
    return {idx.from};
  }
  return expand_interval(order, idx.from, idx.to);
}

namespace {

const std::string& absolute_name(const TimeLabel& l) {
  if (l.relative) {
    throw Error(ErrorCode::InvalidArgument,
                "unresolved event-relative time label on event " + l.name);
  }
  return l.name;
}

std::vector<bool> mention_mask(const Term& t, const TimeOrder& order) {
  std::vector<bool> mask(order.size(), false);
  for_each_atom(t, [&](const Atom& a) {
    if (const auto* tp = a.get_if<TimePoint>()) {
      mask[order.index_of(absolute_name(tp->label))] = true;
    } else if (const auto* ti = a.get_if<TimeInterval>()) {
      for (const auto& p : expand_interval(order, absolute_name(ti->from), absolute_name(ti->to))) {
        mask[order.index_of(p)] = true;
      }
    }
  });
  return mask;
}

}  // namespace

std::vector<std::string> mentioned_time_points(const Term& t, const TimeOrder& order) {
  auto mask = mention_mask(t, order);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(order.points()[i]);
  }
  return out;
}

std::vector<std::string> shared_time_points(const Term& a, const Term& b, const TimeOrder& order) {
  auto ma = mention_mask(a, order);
  auto mb = mention_mask(b, order);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (ma[i] && mb[i]) out.push_back(order.points()[i]);
  }
  return out;
}

}  // namespace spacebound
