#include "scpcs/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

namespace scpcs {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : text_(text) {}

  std::optional<std::string_view> next() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    if (pos_ >= text_.size()) return std::nullopt;
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    ++index_;
    return text_.substr(start, pos_ - start);
  }

  std::int64_t next_int(const char* what) {
    auto tok = next();
    if (!tok) {
      throw ParseError(ParseErrorKind::kTruncated, index_ + 1,
                       fmt::format("truncated input: expected {} at token {}", what, index_ + 1));
    }
    std::int64_t value = 0;
    const char* first = tok->data();
    const char* last = first + tok->size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw ParseError(ParseErrorKind::kNotInteger, index_,
                       fmt::format("token {} ('{}') is not an integer ({})", index_, *tok, what));
    }
    return value;
  }

  std::size_t next_count(const char* what) {
    std::int64_t v = next_int(what);
    if (v < 0) {
      throw ParseError(ParseErrorKind::kBadCount, index_,
                       fmt::format("token {}: negative {} {}", index_, what, v));
    }
    return static_cast<std::size_t>(v);
  }

  std::size_t index() const { return index_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t index_ = 0;
};

}  // namespace

RawScpInstance parse_orlib(std::string_view text, std::string name) {
  TokenReader in(text);
  RawScpInstance raw;
  raw.name = std::move(name);
  raw.num_rows = in.next_count("row count");
  raw.num_cols = in.next_count("column count");
  raw.col_cost.reserve(raw.num_cols);
  for (std::size_t j = 0; j < raw.num_cols; ++j) raw.col_cost.push_back(in.next_int("column cost"));

  raw.row_cover_lists.resize(raw.num_rows);
  std::vector<std::size_t> last_seen(raw.num_cols + 1, 0);
  for (std::size_t r = 0; r < raw.num_rows; ++r) {
    std::size_t t = in.next_count("row cover count");
    if (t > raw.num_cols) {
      throw ParseError(ParseErrorKind::kBadCount, in.index(),
                       fmt::format("token surplus or bad row count: row {} declares {} coverers "
                                   "but only {} columns exist (token {})",
                                   r + 1, t, raw.num_cols, in.index()));
    }
    auto& list = raw.row_cover_lists[r];
    list.reserve(t);
    for (std::size_t q = 0; q < t; ++q) {
      std::int64_t col = in.next_int("column index");
      if (col < 1 || static_cast<std::size_t>(col) > raw.num_cols) {
        throw ParseError(ParseErrorKind::kIndexOutOfRange, in.index(),
                         fmt::format("token {}: column {} out of range 1..{} in row {}",
                                     in.index(), col, raw.num_cols, r + 1));
      }
      if (last_seen[col] == r + 1) {
        throw ParseError(ParseErrorKind::kBadCount, in.index(),
                         fmt::format("token {}: column {} repeated in row {}", in.index(), col, r + 1));
      }
      last_seen[col] = r + 1;
      list.push_back(static_cast<std::uint32_t>(col));
    }
  }
  if (auto extra = in.next()) {
    throw ParseError(ParseErrorKind::kTokenSurplus, in.index(),
                     fmt::format("token surplus or bad row count: unexpected token '{}' at {}",
                                 *extra, in.index()));
  }
  return raw;
}

void validate_raw(const RawScpInstance& raw) {
  if (raw.col_cost.size() != raw.num_cols) {
    throw DataError(fmt::format("{} column costs declared, {} present", raw.num_cols, raw.col_cost.size()));
  }
  if (raw.row_cover_lists.size() != raw.num_rows) {
    throw DataError(fmt::format("{} rows declared, {} present", raw.num_rows, raw.row_cover_lists.size()));
  }
  for (std::size_t j = 0; j < raw.num_cols; ++j) {
    if (raw.col_cost[j] < 0) {
      throw DataError(fmt::format("column {} has negative cost {}", j + 1, raw.col_cost[j]));
    }
  }
  for (std::size_t r = 0; r < raw.num_rows; ++r) {
    for (auto col : raw.row_cover_lists[r]) {
      if (col < 1 || col > raw.num_cols) {
        throw ParseError(ParseErrorKind::kIndexOutOfRange, r + 1,
                         fmt::format("row {} lists column {} of {}", r + 1, col, raw.num_cols));
      }
    }
  }
}

std::string write_orlib(const RawScpInstance& raw) {
  std::string out = fmt::format(" {} {}\n", raw.num_rows, raw.num_cols);
  auto emit_wrapped = [&out](auto begin, auto end) {
    std::size_t on_line = 0;
    for (auto it = begin; it != end; ++it) {
      out += fmt::format(" {}", *it);
      if (++on_line == 12) {
        out += '\n';
        on_line = 0;
      }
    }
    if (on_line != 0) out += '\n';
  };
  emit_wrapped(raw.col_cost.begin(), raw.col_cost.end());
  for (const auto& row : raw.row_cover_lists) {
    out += fmt::format(" {}\n", row.size());
    emit_wrapped(row.begin(), row.end());
  }
  return out;
}

Instance to_instance(const RawScpInstance& raw) {
  validate_raw(raw);
  std::vector<std::vector<ElementId>> members(raw.num_cols);
  for (std::size_t r = 0; r < raw.num_rows; ++r) {
    for (auto col : raw.row_cover_lists[r]) members[col - 1].push_back(static_cast<ElementId>(r));
  }
  return Instance(raw.name, raw.num_rows, raw.col_cost, std::move(members));
}

std::string write_canonical(const Instance& inst) {
  const auto& name = inst.name();
  if (std::any_of(name.begin(), name.end(), is_space)) {
    throw DataError(fmt::format("instance name '{}' contains whitespace", name));
  }
  std::string out;
  out += "scpcs 1\n";
  out += fmt::format("name {}\n", name);
  out += fmt::format("elements {}\n", inst.num_elements());
  out += fmt::format("subsets {}\n", inst.num_subsets());
  for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
    auto mem = inst.members(j);
    out += fmt::format("set {} {} {}", j + 1, inst.cost(j), mem.size());
    for (ElementId k : mem) out += fmt::format(" {}", k + 1);
    out += '\n';
  }
  out += fmt::format("conflicts {}\n", inst.conflicts().size());
  for (const auto& c : inst.conflicts()) {
    out += fmt::format("conflict {} {} {}\n", c.i + 1, c.j + 1, c.penalty);
  }
  for (const auto& [key, value] : inst.metadata()) {
    if (key.empty() || std::any_of(key.begin(), key.end(), is_space) ||
        value.find('\n') != std::string::npos) {
      throw DataError(fmt::format("metadata key '{}' cannot be written", key));
    }
    out += fmt::format("# meta {} {}\n", key, value);
  }
  return out;
}

namespace {

// Splits the canonical text into significant lines, remembering line numbers
// and collecting "# meta" entries.
struct CanonicalLines {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::map<std::string, std::string> metadata;
};

CanonicalLines split_canonical(std::string_view text) {
  CanonicalLines out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++lineno;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    line.remove_prefix(first);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '#') {
      constexpr std::string_view kMeta = "# meta ";
      if (line.starts_with(kMeta)) {
        std::string_view rest = line.substr(kMeta.size());
        std::size_t sp = rest.find(' ');
        std::string key(rest.substr(0, sp));
        std::string value(sp == std::string_view::npos ? std::string_view{} : rest.substr(sp + 1));
        out.metadata[key] = value;
      }
    } else {
      out.lines.emplace_back(lineno, line);
    }
    if (end == text.size()) break;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos >= line.size()) break;
    std::size_t start = pos;
    while (pos < line.size() && !is_space(line[pos])) ++pos;
    out.push_back(line.substr(start, pos - start));
  }
  return out;
}

std::int64_t to_int(std::string_view tok, std::size_t lineno) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(ParseErrorKind::kNotInteger, lineno,
                     fmt::format("line {}: '{}' is not an integer", lineno, tok));
  }
  return value;
}

}  // namespace

Instance read_canonical(std::string_view text) {
  auto parsed = split_canonical(text);
  const auto& lines = parsed.lines;
  std::size_t cursor = 0;
  auto next_line = [&](const char* what) -> std::pair<std::size_t, std::vector<std::string_view>> {
    if (cursor >= lines.size()) {
      std::size_t at = lines.empty() ? 1 : lines.back().first + 1;
      throw ParseError(ParseErrorKind::kTruncated, at,
                       fmt::format("truncated canonical file: expected {}", what));
    }
    const auto& [lineno, line] = lines[cursor++];
    return {lineno, words(line)};
  };
  auto keyed = [&](const char* key, std::size_t arity) {
    auto [lineno, w] = next_line(key);
    if (w.empty() || w[0] != key || w.size() != arity + 1) {
      throw ParseError(ParseErrorKind::kBadHeader, lineno,
                       fmt::format("line {}: expected '{}' with {} field(s)", lineno, key, arity));
    }
    return std::pair{lineno, w};
  };
  auto count_of = [&](const char* key) {
    auto [lineno, w] = keyed(key, 1);
    auto v = to_int(w[1], lineno);
    if (v < 0) {
      throw ParseError(ParseErrorKind::kBadCount, lineno, fmt::format("line {}: negative {}", lineno, key));
    }
    return static_cast<std::size_t>(v);
  };

  {
    auto [lineno, w] = next_line("magic");
    if (w.size() != 2 || w[0] != "scpcs") {
      throw ParseError(ParseErrorKind::kBadHeader, lineno, "unknown magic: expected 'scpcs 1'");
    }
    if (w[1] != "1") {
      throw ParseError(ParseErrorKind::kBadHeader, lineno,
                       fmt::format("unsupported canonical version '{}'", w[1]));
    }
  }
  std::string name;
  {
    auto [lineno, w] = next_line("name");
    if (w.empty() || w[0] != "name" || w.size() > 2) {
      throw ParseError(ParseErrorKind::kBadHeader, lineno, fmt::format("line {}: expected 'name'", lineno));
    }
    if (w.size() == 2) name = std::string(w[1]);
  }
  const std::size_t m = count_of("elements");
  const std::size_t n = count_of("subsets");

  std::vector<Cost> cost(n);
  std::vector<std::vector<ElementId>> members(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto [lineno, w] = next_line("set");
    if (w.empty() || w[0] != "set") {
      throw ParseError(ParseErrorKind::kBadCount, lineno,
                       fmt::format("line {}: expected set {} of {}", lineno, j + 1, n));
    }
    if (w.size() < 4) {
      throw ParseError(ParseErrorKind::kTruncated, lineno, fmt::format("line {}: short set line", lineno));
    }
    if (to_int(w[1], lineno) != static_cast<std::int64_t>(j + 1)) {
      throw ParseError(ParseErrorKind::kBadCount, lineno,
                       fmt::format("line {}: sets out of order, expected {}", lineno, j + 1));
    }
    cost[j] = to_int(w[2], lineno);
    auto t = to_int(w[3], lineno);
    if (t < 0 || static_cast<std::size_t>(t) + 4 != w.size()) {
      throw ParseError(ParseErrorKind::kBadCount, lineno,
                       fmt::format("line {}: set declares {} elements, {} listed", lineno, t,
                                   w.size() - 4));
    }
    for (std::size_t q = 4; q < w.size(); ++q) {
      auto e = to_int(w[q], lineno);
      if (e < 1 || static_cast<std::size_t>(e) > m) {
        throw ParseError(ParseErrorKind::kIndexOutOfRange, lineno,
                         fmt::format("line {}: element {} out of range 1..{}", lineno, e, m));
      }
      members[j].push_back(static_cast<ElementId>(e - 1));
    }
  }

  const std::size_t d = count_of("conflicts");
  std::vector<Conflict> conflicts;
  conflicts.reserve(d);
  for (std::size_t q = 0; q < d; ++q) {
    auto [lineno, w] = next_line("conflict");
    if (w.size() != 4 || w[0] != "conflict") {
      throw ParseError(ParseErrorKind::kBadCount, lineno,
                       fmt::format("line {}: expected conflict {} of {}", lineno, q + 1, d));
    }
    auto i = to_int(w[1], lineno);
    auto j = to_int(w[2], lineno);
    auto pen = to_int(w[3], lineno);
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n) {
      throw ParseError(ParseErrorKind::kIndexOutOfRange, lineno,
                       fmt::format("line {}: conflict ({},{}) out of range 1..{}", lineno, i, j, n));
    }
    conflicts.push_back({static_cast<SubsetId>(i - 1), static_cast<SubsetId>(j - 1), pen});
  }
  if (cursor != lines.size()) {
    throw ParseError(ParseErrorKind::kBadCount, lines[cursor].first,
                     fmt::format("line {}: content after the declared conflicts", lines[cursor].first));
  }
  return Instance(std::move(name), m, std::move(cost), std::move(members), std::move(conflicts),
                  std::move(parsed.metadata));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError(fmt::format("short write to '{}'", path.string()));
}

RawScpInstance load_orlib(const std::filesystem::path& path) {
  return parse_orlib(read_text_file(path), path.stem().string());
}

Instance load_canonical(const std::filesystem::path& path) {
  return read_canonical(read_text_file(path));
}

}  // namespace scpcs
