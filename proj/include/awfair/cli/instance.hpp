#pragma once

// Plain-text instance files:
//
//   # comment
//   items    = 4
//   alice    = [1, 1, 2, 3]
//   bob      = [2, 3, 1, 1]
//   points   = 7
//   tie_rule = informed
//   designated = bob
//
// Vector entries are positive integers or "n/d" rationals; a vector is
// normalized by its sum. Optional keys: points, tie_rule (lexicographic |
// informed), designated (alice | bob), allocation (Alice's share of each item,
// in [0,1]), declared_alice, declared_bob (a strategy profile).

#include <algorithm>
#include <cctype>
#include <limits>
#include <type_traits>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "awfair/awfair.hpp"

namespace awfair::cli {

using awfair::to_string;

struct Instance {
  Valuation alice;
  Valuation bob;
  std::optional<std::int64_t> points;
  TieBreakRule::Kind tie_rule = TieBreakRule::Kind::lexicographic;
  Player designated = Player::bob;
  std::optional<std::vector<Rational>> allocation;
  std::optional<Valuation> declared_alice;
  std::optional<Valuation> declared_bob;

  std::size_t items() const { return alice.size(); }

  TieBreakRule rule() const {
    if (tie_rule == TieBreakRule::Kind::informed) {
      return TieBreakRule::informed(designated, designated == Player::alice ? alice : bob);
    }
    return TieBreakRule::lexicographic();
  }

  Variant variant() const {
    if (points) return Discrete{*points};
    return Continuous{};
  }

  Game game() const { return Game(alice, bob, variant(), rule()); }

  std::optional<StrategyProfile> declared() const {
    if (!declared_alice || !declared_bob) return std::nullopt;
    return StrategyProfile{*declared_alice, *declared_bob};
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<Rational> parse_vector(std::string_view text, int line, const std::string& key) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw ParseError("unterminated '['", line, key);
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<Rational> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    try {
      out.push_back(parse_rational(token));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line, key);
    }
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (out.empty()) throw ParseError("empty vector", line, key);
  return out;
}

inline Valuation parse_valuation(std::string_view text, int line, const std::string& key) {
  auto values = parse_vector(text, line, key);
  bool integral = true;
  for (const auto& v : values) {
    if (v <= 0) throw ParseError("values must be strictly positive", line, key);
    integral = integral && denominator_of(v) == 1;
  }
  if (integral) {
    std::vector<std::int64_t> points;
    for (const auto& v : values) {
      if (numerator_of(v) > std::numeric_limits<std::int64_t>::max()) {
        throw ParseError("point value too large", line, key);
      }
      points.push_back(numerator_of(v).convert_to<std::int64_t>());
    }
    return Valuation::from_points(points);
  }
  return Valuation::normalized(std::move(values));
}

inline std::int64_t parse_count(std::string_view text, int line, const std::string& key) {
  const auto v = [&] {
    try {
      return parse_rational(trim(text));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line, key);
    }
  }();
  if (denominator_of(v) != 1 || v <= 0 || numerator_of(v) > std::numeric_limits<std::int32_t>::max()) {
    throw ParseError("expected a positive integer", line, key);
  }
  return numerator_of(v).convert_to<std::int64_t>();
}

}  // namespace detail

inline TieBreakRule::Kind parse_tie_rule(std::string_view text) {
  if (text == "lexicographic") return TieBreakRule::Kind::lexicographic;
  if (text == "informed") return TieBreakRule::Kind::informed;
  throw ParseError("tie rule must be 'lexicographic' or 'informed', got '" + std::string(text) + "'");
}

inline Player parse_player(std::string_view text) {
  if (text == "alice") return Player::alice;
  if (text == "bob") return Player::bob;
  throw ParseError("player must be 'alice' or 'bob', got '" + std::string(text) + "'");
}

inline Instance parse_instance(std::string_view text) {
  std::optional<std::int64_t> items;
  std::optional<Valuation> alice;
  std::optional<Valuation> bob;
  Instance out;
  int items_line = 0;
  std::vector<std::string> seen;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw ParseError("duplicate key", line_no, key);
    }
    seen.push_back(key);

    try {
      if (key == "items") {
        items = detail::parse_count(value, line_no, key);
        items_line = line_no;
      } else if (key == "alice") {
        alice = detail::parse_valuation(value, line_no, key);
      } else if (key == "bob") {
        bob = detail::parse_valuation(value, line_no, key);
      } else if (key == "points") {
        out.points = detail::parse_count(value, line_no, key);
      } else if (key == "tie_rule") {
        out.tie_rule = parse_tie_rule(value);
      } else if (key == "designated") {
        out.designated = parse_player(value);
      } else if (key == "allocation") {
        out.allocation = detail::parse_vector(value, line_no, key);
      } else if (key == "declared_alice") {
        out.declared_alice = detail::parse_valuation(value, line_no, key);
      } else if (key == "declared_bob") {
        out.declared_bob = detail::parse_valuation(value, line_no, key);
      } else {
        throw ParseError("unknown key", line_no, key);
      }
    } catch (const ParseError& e) {
      if (e.line != 0) throw;
      throw ParseError(e.what(), line_no, key);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no, key);
    }
  }

  if (!alice) throw ParseError("missing required key", 0, "alice");
  if (!bob) throw ParseError("missing required key", 0, "bob");
  if (items && static_cast<std::size_t>(*items) != alice->size()) {
    throw ParseError("items = " + std::to_string(*items) + " but alice has " +
                         std::to_string(alice->size()) + " entries",
                     items_line, "items");
  }
  if (alice->size() != bob->size()) {
    throw ParseError("alice has " + std::to_string(alice->size()) + " entries, bob has " +
                         std::to_string(bob->size()),
                     0, "bob");
  }
  out.alice = std::move(*alice);
  out.bob = std::move(*bob);
  const std::size_t m = out.alice.size();
  auto check_len = [&](std::size_t n, const char* key) {
    if (n != m) throw ParseError("expected " + std::to_string(m) + " entries", 0, key);
  };
  if (out.allocation) {
    check_len(out.allocation->size(), "allocation");
    for (const auto& s : *out.allocation) {
      if (s < 0 || s > 1) throw ParseError("shares must lie in [0,1]", 0, "allocation");
    }
  }
  if (out.declared_alice) check_len(out.declared_alice->size(), "declared_alice");
  if (out.declared_bob) check_len(out.declared_bob->size(), "declared_bob");
  if (out.points && *out.points < static_cast<std::int64_t>(m)) {
    throw InfeasibleStrategySpace("points = " + std::to_string(*out.points) + " is below the item count " +
                                  std::to_string(m));
  }
  return out;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

/// Instance file text for `inst`; parse_instance(write_instance(x)) == x.
inline std::string write_instance(const Instance& inst) {
  auto vec = [](const auto& values) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ", ";
      if constexpr (std::is_integral_v<std::decay_t<decltype(values[i])>>) {
        s += std::to_string(values[i]);
      } else {
        s += to_string(values[i]);
      }
    }
    return s + "]";
  };
  auto valuation = [&](const Valuation& v) {
    if (!v.points().empty()) return vec(v.points());
    return vec(v.values());
  };
  std::ostringstream os;
  os << "items = " << inst.items() << '\n';
  os << "alice = " << valuation(inst.alice) << '\n';
  os << "bob = " << valuation(inst.bob) << '\n';
  if (inst.points) os << "points = " << *inst.points << '\n';
  os << "tie_rule = " << (inst.tie_rule == TieBreakRule::Kind::informed ? "informed" : "lexicographic") << '\n';
  if (inst.tie_rule == TieBreakRule::Kind::informed) os << "designated = " << to_string(inst.designated) << '\n';
  if (inst.allocation) os << "allocation = " << vec(*inst.allocation) << '\n';
  if (inst.declared_alice) os << "declared_alice = " << valuation(*inst.declared_alice) << '\n';
  if (inst.declared_bob) os << "declared_bob = " << valuation(*inst.declared_bob) << '\n';
  return os.str();
}

}  // namespace awfair::cli
