#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "scpcs/core.hpp"

namespace scpcs {

// A plain set covering instance as stored by OR-Library: row-major cover
// lists with 1-based column ids.
struct RawScpInstance {
  std::string name;
  std::size_t num_rows = 0;
  std::size_t num_cols = 0;
  std::vector<Cost> col_cost;
  std::vector<std::vector<std::uint32_t>> row_cover_lists;

  friend bool operator==(const RawScpInstance&, const RawScpInstance&) = default;
};

// Token stream: "m n", n column costs, then per row a count t and t column ids.
// Every token must be consumed. Throws ParseError.
RawScpInstance parse_orlib(std::string_view text, std::string name = {});

// Throws DataError (or ParseError with kIndexOutOfRange) if `raw` breaks its
// invariants.
void validate_raw(const RawScpInstance& raw);

// Writes `raw` back in OR-Library layout (12 integers per line).
std::string write_orlib(const RawScpInstance& raw);

// Conflict-free Instance with 0-based ids.
Instance to_instance(const RawScpInstance& raw);

// Canonical SCP-CS text format:
//   scpcs 1
//   name <name>
//   elements <m>
//   subsets <n>
//   set <j> <cost> <t> <e_1> ... <e_t>       (n lines, 1-based)
//   conflicts <|D|>
//   conflict <i> <j> <d_ij>                  (|D| lines, 1-based, i < j)
// followed by optional "# meta <key> <value>" lines carrying metadata.
// Other lines starting with '#' and blank lines are ignored by the reader.
std::string write_canonical(const Instance& inst);
Instance read_canonical(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

RawScpInstance load_orlib(const std::filesystem::path& path);
Instance load_canonical(const std::filesystem::path& path);

}  // namespace scpcs
