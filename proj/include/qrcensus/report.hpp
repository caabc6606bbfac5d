#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrcensus/census.hpp"
#include "qrcensus/modmath.hpp"

namespace qrc {

enum class TableOrder { natural, residues_first };
enum class TableFormat { ansi, plain, csv, html };

/// Which cells get the cyan treatment. The mod-7 illustrations mark
/// residues; the mod-23 one marks values <= (p-1)/2.
enum class HighlightKind { none, residues, small_values };

struct TableSpec {
    OddModulus n{7};
    TableOrder order = TableOrder::natural;
    TableFormat format = TableFormat::plain;
    HighlightKind highlight = HighlightKind::residues;
};

/// Cell matrix of a multiplication table before formatting.
struct MultTable {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> labels;  // row and column order
    std::vector<std::vector<std::uint64_t>> cells;
    std::vector<std::vector<bool>> highlighted;
    std::size_t block = 0;  // rows/columns before the quadrant separator
};

/// Throws std::invalid_argument for residues-first order on a composite n.
[[nodiscard]] MultTable build_mult_table(OddModulus n, TableOrder order, HighlightKind highlight);
[[nodiscard]] std::string format_mult_table(const MultTable& table, TableFormat format);
[[nodiscard]] std::string render_mult_table(const TableSpec& spec);

/// "n → 1, 4 (2), .... → R_b(n)": small residues with their least roots
/// (omitted when the root is 1).
[[nodiscard]] std::string annex2_line(OddModulus n);
/// One annex2_line per odd n in [lo, hi], newline terminated.
[[nodiscard]] std::string render_annex2(std::uint64_t lo, std::uint64_t hi);

/// Collision pairs, eleven per line, followed by the zero-square roots
/// within [1, (n-1)/2].
[[nodiscard]] std::string render_annex1(OddModulus n = OddModulus(175));

enum class CensusFormat { csv, json_lines };

/// Field order: n, r_b, n_b, r_h, n_h, sum_r, sum_n, sum_rb, sum_nb, sum_rh, sum_nh.
[[nodiscard]] std::string export_census(const std::vector<ResidueCensus>& records, CensusFormat format);
/// Inverse of export_census for the scalar fields. Throws std::invalid_argument on malformed input.
[[nodiscard]] std::vector<ResidueCensus> parse_census_export(std::string_view text, CensusFormat format);

inline constexpr std::string_view kCensusFields[] = {"n",     "r_b",   "n_b",    "r_h",    "n_h",   "sum_r",
                                                     "sum_n", "sum_rb", "sum_nb", "sum_rh", "sum_nh"};

}  // namespace qrc
