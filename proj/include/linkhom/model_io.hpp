#pragma once

// The line-oriented .lmap format describing the combinatorial data of a link
// map, and the bundled document for Kirk's example.
//
//   linkmap <name>
//   dp+ <id> sign=<+1|-1> n=<int>
//   dp- <id> sign=<+1|-1> n=<int>
//   pair <id> = <dp+-id> <dp+-id>
//   disk <id> pair=<pair-id> primary=<int> framed=<0|1>
//     x sign=<+1|-1> m=<int>
//   end
//   sphere <id> eps=<+1|-1> w2=<0|1>
//     d sign=<+1|-1> exp=<int>
//   end
//   handles <int>
//
// '#' starts a comment. Canonical output lists the statements in the order
// above, indents block members by two spaces, omits "handles 0" and ends
// every line with '\n'.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "linkhom/group_ring.hpp"
#include "linkhom/invariants.hpp"
#include "linkhom/wall.hpp"

namespace linkhom {

struct PointPair {
  std::string id;
  std::string first;
  std::string second;

  friend bool operator==(const PointPair&, const PointPair&) = default;
};

struct LinkMapDocument {
  std::string name;
  std::vector<DoublePoint> dp_plus;
  std::vector<DoublePoint> dp_minus;
  std::vector<PointPair> pairs;
  std::vector<WhitneyDiskData> disks;
  std::vector<SphereClass> spheres;
  std::int64_t handles = 0;

  bool framed() const { return all_framed(disks); }

  friend bool operator==(const LinkMapDocument&, const LinkMapDocument&) = default;
};

enum class ParseErrorKind { syntax, dangling_reference, invalid_sign, duplicate_id };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        kind_(kind),
        line_(line),
        column_(column) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

class LinkMapParser {
 public:
  explicit LinkMapParser(std::string_view text) : text_(text) {}

  LinkMapDocument parse() {
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no_;
      std::string_view line = text_.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      statement(line);
      if (end == text_.size()) break;
      start = end + 1;
    }
    if (!have_header_) fail(ParseErrorKind::syntax, 1, 1, "missing 'linkmap' header");
    if (block_ != Block::none) fail(ParseErrorKind::syntax, block_line_, 1, "block is missing 'end'");
    resolve_references();
    return std::move(doc_);
  }

 private:
  enum class Block { none, disk, sphere };

  [[noreturn]] void fail(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& msg) const {
    throw ParseError(kind, line, column, msg);
  }
  [[noreturn]] void fail(ParseErrorKind kind, const Token& tok, const std::string& msg) const {
    fail(kind, line_no_, tok.column, msg);
  }

  static std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      out.push_back({line.substr(i, j - i), i + 1});
      i = j;
    }
    return out;
  }

  void expect_count(const std::vector<Token>& toks, std::size_t n, const char* form) const {
    if (toks.size() != n) {
      std::size_t col = toks.size() > n ? toks[n].column : toks.back().column + toks.back().text.size();
      fail(ParseErrorKind::syntax, line_no_, col, std::string("expected '") + form + "'");
    }
  }

  std::string_view value_of(const Token& tok, std::string_view key) const {
    if (tok.text.size() <= key.size() || tok.text.substr(0, key.size()) != key || tok.text[key.size()] != '=')
      fail(ParseErrorKind::syntax, tok, "expected " + std::string(key) + "=<value>");
    return tok.text.substr(key.size() + 1);
  }

  Exponent integer(const Token& tok, std::string_view key) const { return integer_value(tok, value_of(tok, key)); }

  Exponent integer_value(const Token& tok, std::string_view v) const {
    std::string_view digits = v;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    Exponent out = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
      fail(ParseErrorKind::syntax, tok, "'" + std::string(v) + "' is not an integer");
    return out;
  }

  Sign sign(const Token& tok, std::string_view key) const {
    std::string_view v = value_of(tok, key);
    if (v == "+1") return Sign::positive;
    if (v == "-1") return Sign::negative;
    fail(ParseErrorKind::invalid_sign, tok, std::string(key) + " must be +1 or -1, got '" + std::string(v) + "'");
  }

  bool bit(const Token& tok, std::string_view key) const {
    std::string_view v = value_of(tok, key);
    if (v == "0") return false;
    if (v == "1") return true;
    fail(ParseErrorKind::syntax, tok, std::string(key) + " must be 0 or 1, got '" + std::string(v) + "'");
  }

  std::string identifier(const Token& tok, std::set<std::string>& seen, const char* what) const {
    std::string id(tok.text);
    if (id.find('=') != std::string::npos) fail(ParseErrorKind::syntax, tok, std::string("invalid ") + what + " id");
    if (!seen.insert(id).second) fail(ParseErrorKind::duplicate_id, tok, std::string("duplicate ") + what + " id '" + id + "'");
    return id;
  }

  void statement(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokenize(line);
    if (toks.empty()) return;
    const std::string_view head = toks[0].text;

    if (!have_header_) {
      if (head != "linkmap") fail(ParseErrorKind::syntax, toks[0], "missing 'linkmap' header");
      if (toks.size() < 2) fail(ParseErrorKind::syntax, toks[0], "expected 'linkmap <name>'");
      std::string_view name = line.substr(toks[1].column - 1);
      while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.remove_suffix(1);
      doc_.name = std::string(name);
      have_header_ = true;
      return;
    }

    if (block_ == Block::disk) {
      if (head == "x") {
        expect_count(toks, 3, "x sign=<+1|-1> m=<int>");
        DiskIntersection x;
        x.sign = sign(toks[1], "sign");
        x.m = integer(toks[2], "m");
        doc_.disks.back().intersections.push_back(x);
        return;
      }
      if (head == "end") {
        expect_count(toks, 1, "end");
        block_ = Block::none;
        return;
      }
      fail(ParseErrorKind::syntax, toks[0], "expected 'x' or 'end' inside disk");
    }
    if (block_ == Block::sphere) {
      if (head == "d") {
        expect_count(toks, 3, "d sign=<+1|-1> exp=<int>");
        PairingPoint p;
        p.sign = sign(toks[1], "sign");
        p.exponent = integer(toks[2], "exp");
        doc_.spheres.back().pairing.points.push_back(p);
        return;
      }
      if (head == "end") {
        expect_count(toks, 1, "end");
        block_ = Block::none;
        return;
      }
      fail(ParseErrorKind::syntax, toks[0], "expected 'd' or 'end' inside sphere");
    }

    if (head == "dp+" || head == "dp-") {
      expect_count(toks, 4, "dp+|dp- <id> sign=<+1|-1> n=<int>");
      DoublePoint p;
      p.id = identifier(toks[1], point_ids_, "double point");
      p.sign = sign(toks[2], "sign");
      p.n = integer(toks[3], "n");
      (head == "dp+" ? doc_.dp_plus : doc_.dp_minus).push_back(std::move(p));
    } else if (head == "pair") {
      expect_count(toks, 5, "pair <id> = <dp-id> <dp-id>");
      if (toks[2].text != "=") fail(ParseErrorKind::syntax, toks[2], "expected '='");
      PointPair pr;
      pr.id = identifier(toks[1], pair_ids_, "pair");
      pr.first = std::string(toks[3].text);
      pr.second = std::string(toks[4].text);
      doc_.pairs.push_back(std::move(pr));
      pair_refs_.push_back({line_no_, toks[3].column, toks[4].column});
    } else if (head == "disk") {
      expect_count(toks, 5, "disk <id> pair=<pair-id> primary=<int> framed=<0|1>");
      WhitneyDiskData w;
      w.id = identifier(toks[1], disk_ids_, "disk");
      w.pair = std::string(value_of(toks[2], "pair"));
      w.primary = integer(toks[3], "primary");
      w.framed = bit(toks[4], "framed");
      doc_.disks.push_back(std::move(w));
      disk_refs_.push_back({line_no_, toks[2].column, 0});
      block_ = Block::disk;
      block_line_ = line_no_;
    } else if (head == "sphere") {
      expect_count(toks, 4, "sphere <id> eps=<+1|-1> w2=<0|1>");
      SphereClass s;
      s.id = identifier(toks[1], sphere_ids_, "sphere");
      s.pairing.eps = sign(toks[2], "eps");
      s.w2 = bit(toks[3], "w2");
      doc_.spheres.push_back(std::move(s));
      block_ = Block::sphere;
      block_line_ = line_no_;
    } else if (head == "handles") {
      expect_count(toks, 2, "handles <int>");
      if (have_handles_) fail(ParseErrorKind::syntax, toks[0], "duplicate 'handles' statement");
      Exponent n = integer_value(toks[1], toks[1].text);
      if (n < 0) fail(ParseErrorKind::syntax, toks[1], "handle count must be nonnegative");
      doc_.handles = n;
      have_handles_ = true;
    } else if (head == "linkmap") {
      fail(ParseErrorKind::syntax, toks[0], "duplicate 'linkmap' header");
    } else {
      fail(ParseErrorKind::syntax, toks[0], "unknown statement '" + std::string(head) + "'");
    }
  }

  void resolve_references() const {
    std::set<std::string> plus_ids;
    for (const auto& p : doc_.dp_plus) plus_ids.insert(p.id);
    for (std::size_t i = 0; i < doc_.pairs.size(); ++i) {
      const auto& pr = doc_.pairs[i];
      const auto& loc = pair_refs_[i];
      if (!plus_ids.contains(pr.first))
        fail(ParseErrorKind::dangling_reference, loc.line, loc.column, "pair references unknown dp+ point '" + pr.first + "'");
      if (!plus_ids.contains(pr.second))
        fail(ParseErrorKind::dangling_reference, loc.line, loc.column2,
             "pair references unknown dp+ point '" + pr.second + "'");
    }
    for (std::size_t i = 0; i < doc_.disks.size(); ++i) {
      const auto& w = doc_.disks[i];
      if (!pair_ids_.contains(w.pair))
        fail(ParseErrorKind::dangling_reference, disk_refs_[i].line, disk_refs_[i].column,
             "disk references unknown pair '" + w.pair + "'");
    }
  }

  struct Location {
    std::size_t line;
    std::size_t column;
    std::size_t column2;
  };

  std::string_view text_;
  std::size_t line_no_ = 0;
  bool have_header_ = false;
  bool have_handles_ = false;
  Block block_ = Block::none;
  std::size_t block_line_ = 0;
  LinkMapDocument doc_;
  std::set<std::string> point_ids_, pair_ids_, disk_ids_, sphere_ids_;
  std::vector<Location> pair_refs_, disk_refs_;
};

inline const char* sign_text(Sign s) { return s == Sign::positive ? "+1" : "-1"; }

}  // namespace detail

inline LinkMapDocument parse_linkmap(std::string_view text) { return detail::LinkMapParser(text).parse(); }

inline std::string serialize_linkmap(const LinkMapDocument& doc) {
  using detail::sign_text;
  std::ostringstream os;
  os << "linkmap " << doc.name << "\n";
  for (const auto& p : doc.dp_plus) os << "dp+ " << p.id << " sign=" << sign_text(p.sign) << " n=" << p.n << "\n";
  for (const auto& p : doc.dp_minus) os << "dp- " << p.id << " sign=" << sign_text(p.sign) << " n=" << p.n << "\n";
  for (const auto& pr : doc.pairs) os << "pair " << pr.id << " = " << pr.first << " " << pr.second << "\n";
  for (const auto& w : doc.disks) {
    os << "disk " << w.id << " pair=" << w.pair << " primary=" << w.primary << " framed=" << (w.framed ? 1 : 0) << "\n";
    for (const auto& x : w.intersections) os << "  x sign=" << sign_text(x.sign) << " m=" << x.m << "\n";
    os << "end\n";
  }
  for (const auto& s : doc.spheres) {
    os << "sphere " << s.id << " eps=" << sign_text(s.pairing.eps) << " w2=" << (s.w2 ? 1 : 0) << "\n";
    for (const auto& p : s.pairing.points) os << "  d sign=" << sign_text(p.sign) << " exp=" << p.exponent << "\n";
    os << "end\n";
  }
  if (doc.handles != 0) os << "handles " << doc.handles << "\n";
  return os.str();
}

inline LinkMapDocument read_linkmap_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_linkmap(buf.str());
}

/// Combinatorial data of Kirk's link map with sigma = (0, t^2 - 4t + 3).
///
/// f^+ has five opposite-sign pairs of double points with n-multiplicities
/// 0, 1, 1, 1, 1; f^- has four double points of one sign with n = 1 and one
/// of the other sign with n = 2, signed so that sigma_- = t^2 - 4t + 3.
/// Interior intersections of W_1..W_5 are the smallest lists giving
/// Phi(I(W_i)) = 1, t, 0, t, t; W_2 keeps its two cancelling pairs. The
/// discs D_1..D_4 meet F^+ in two points {y, y'} whose connecting loop links
/// the dotted circle once (1 + t); D_5 meets it twice as often (2 + 2t).
inline LinkMapDocument kirk_example() {
  using S = Sign;
  LinkMapDocument doc;
  doc.name = "kirk";
  const Exponent plus_n[5] = {0, 1, 1, 1, 1};
  for (int i = 0; i < 5; ++i) {
    std::string base = "p" + std::to_string(i + 1);
    doc.dp_plus.push_back({base + "a", S::positive, plus_n[i]});
    doc.dp_plus.push_back({base + "b", S::negative, plus_n[i]});
    doc.pairs.push_back({"P" + std::to_string(i + 1), base + "a", base + "b"});
  }
  for (int i = 0; i < 4; ++i) doc.dp_minus.push_back({"q" + std::to_string(i + 1), S::negative, 1});
  doc.dp_minus.push_back({"q5", S::positive, 2});

  const std::vector<std::vector<DiskIntersection>> xs = {
      {{S::positive, 0}},
      {{S::positive, 0}, {S::negative, 0}, {S::positive, 1}, {S::negative, 1}, {S::positive, 2}},
      {{S::positive, 0}, {S::negative, 1}},
      {{S::positive, 0}},
      {{S::negative, 1}},
  };
  for (int i = 0; i < 5; ++i)
    doc.disks.push_back({"W" + std::to_string(i + 1), "P" + std::to_string(i + 1), plus_n[i], true, xs[i]});

  for (int i = 0; i < 5; ++i) {
    SphereClass s;
    s.id = "A" + std::to_string(i + 1);
    s.pairing.eps = S::positive;
    int copies = i == 4 ? 2 : 1;
    for (int c = 0; c < copies; ++c) {
      s.pairing.points.push_back({S::positive, 0});
      s.pairing.points.push_back({S::positive, 1});
    }
    doc.spheres.push_back(std::move(s));
  }
  doc.handles = 5;
  return doc;
}

}  // namespace linkhom
