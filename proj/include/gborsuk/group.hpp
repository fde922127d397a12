#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gborsuk {

/// Raised when a multiplication table fails one of the group axioms.
/// The kind names the violated axiom.
class group_error : public std::runtime_error {
 public:
  enum class kind { not_latin_square, no_identity, not_associative };

  group_error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  kind which() const { return kind_; }

 private:
  kind kind_;
};

/// A finite group as an explicit multiplication table.
///
/// Elements are dense indices 0..m-1 and the identity is always index 0;
/// downstream permutation actions rely on both conventions. Immutable after
/// construction and safe to share across threads.
class GroupTable {
 public:
  static GroupTable cyclic(int m) {
    if (m < 1) throw std::invalid_argument("cyclic group order must be >= 1");
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
    std::vector<std::string> labels(m);
    for (int a = 0; a < m; ++a) labels[a] = std::to_string(a);
    return GroupTable(std::move(t), std::move(labels));
  }

  static GroupTable product(const GroupTable& a, const GroupTable& b) {
    int ma = a.order(), mb = b.order(), m = ma * mb;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int i = 0; i < ma; ++i)
      for (int j = 0; j < mb; ++j)
        for (int k = 0; k < ma; ++k)
          for (int l = 0; l < mb; ++l)
            t[i * mb + j][k * mb + l] = a.mul(i, k) * mb + b.mul(j, l);
    std::vector<std::string> labels(m);
    for (int i = 0; i < ma; ++i)
      for (int j = 0; j < mb; ++j)
        labels[i * mb + j] = "(" + a.label(i) + "," + b.label(j) + ")";
    return GroupTable(std::move(t), std::move(labels));
  }

  /// Validates an arbitrary table. Checks, in order: shape, Latin square,
  /// identity at index 0, associativity.
  static GroupTable from_table(std::vector<std::vector<int>> table,
                               std::vector<std::string> labels = {}) {
    return GroupTable(std::move(table), std::move(labels));
  }

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverses_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<int>& inverses() const { return inverses_; }
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool is_abelian() const {
    for (int a = 0; a < order_; ++a)
      for (int b = a + 1; b < order_; ++b)
        if (table_[a][b] != table_[b][a]) return false;
    return true;
  }

  /// Order of a single element.
  int element_order(int a) const {
    int x = a, n = 1;
    while (x != 0) {
      x = mul(x, a);
      ++n;
    }
    return n;
  }

  bool operator==(const GroupTable& o) const { return table_ == o.table_; }

  nlohmann::json to_json() const {
    return {{"order", order_}, {"table", table_}, {"labels", labels_}};
  }

  static GroupTable from_json(const nlohmann::json& j) {
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return from_table(std::move(table), std::move(labels));
  }

 private:
  GroupTable(std::vector<std::vector<int>> table, std::vector<std::string> labels)
      : table_(std::move(table)), labels_(std::move(labels)) {
    order_ = static_cast<int>(table_.size());
    if (order_ == 0) throw std::invalid_argument("empty multiplication table");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != order_)
        throw std::invalid_argument("multiplication table is not square");
      for (int x : row)
        if (x < 0 || x >= order_)
          throw std::invalid_argument("table entry out of range");
    }
    validate_latin_square();
    validate_identity();
    validate_associativity();
    inverses_.resize(order_);
    for (int a = 0; a < order_; ++a) {
      for (int b = 0; b < order_; ++b)
        if (table_[a][b] == 0) {
          inverses_[a] = b;
          break;
        }
    }
    if (labels_.empty()) {
      labels_.resize(order_);
      for (int a = 0; a < order_; ++a) labels_[a] = std::to_string(a);
    }
    if (static_cast<int>(labels_.size()) != order_)
      throw std::invalid_argument("label count does not match group order");
  }

  void validate_latin_square() const {
    std::vector<char> seen(order_);
    for (int a = 0; a < order_; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int b = 0; b < order_; ++b) {
        if (seen[table_[a][b]]++)
          throw group_error(group_error::kind::not_latin_square,
                            "row " + std::to_string(a) + " is not a permutation");
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (int b = 0; b < order_; ++b) {
        if (seen[table_[b][a]]++)
          throw group_error(group_error::kind::not_latin_square,
                            "column " + std::to_string(a) + " is not a permutation");
      }
    }
  }

  void validate_identity() const {
    for (int a = 0; a < order_; ++a)
      if (table_[0][a] != a || table_[a][0] != a)
        throw group_error(group_error::kind::no_identity,
                          "element 0 is not a two-sided identity");
  }

  void validate_associativity() const {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw group_error(group_error::kind::not_associative,
                              "associativity fails at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
  }

  int order_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
  std::vector<std::string> labels_;
};

/// The symmetric group S_n as a table, elements enumerated so that the
/// identity permutation is element 0. Intended for small n (the table is
/// n! x n!).
inline GroupTable symmetric_group(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("symmetric_group supports 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // next_permutation enumerates in lexicographic order, so identity is first.
  int m = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> comp(n);
      for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
      table[a][b] = index_of(comp);
    }
  std::vector<std::string> labels(m);
  for (int a = 0; a < m; ++a) {
    std::string s;
    for (int i = 0; i < n; ++i) s += std::to_string(perms[a][i]);
    labels[a] = s;
  }
  return GroupTable::from_table(std::move(table), std::move(labels));
}

/// Parses a group description: "Z6", "Z2xZ3", "S3", or "S4".
inline GroupTable parse_group_spec(const std::string& spec) {
  auto parse_factor = [](const std::string& s) -> GroupTable {
    if (s.size() >= 2 && (s[0] == 'Z' || s[0] == 'z'))
      return GroupTable::cyclic(std::stoi(s.substr(1)));
    if (s.size() == 2 && (s[0] == 'S' || s[0] == 's'))
      return symmetric_group(std::stoi(s.substr(1)));
    throw std::invalid_argument("unrecognized group spec '" + s + "'");
  };
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == 'x' || c == 'X') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  GroupTable g = parse_factor(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) g = GroupTable::product(g, parse_factor(parts[i]));
  return g;
}

}  // namespace gborsuk
