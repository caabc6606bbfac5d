#include "qrcensus/report.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include <json.hpp>

#include "qrcensus/redundancy.hpp"

namespace qrc {

MultTable build_mult_table(OddModulus modulus, TableOrder order, HighlightKind highlight) {
    const std::uint64_t n = modulus.value();
    if (order == TableOrder::residues_first && !is_prime(n)) {
        throw std::invalid_argument("residues-first order needs a prime modulus, got " + std::to_string(n));
    }
    const auto residues = quadratic_residue_set(modulus);
    std::vector<bool> is_residue(n, false);
    for (auto y : residues) is_residue[y] = true;

    MultTable t;
    t.n = n;
    t.block = modulus.half();
    if (order == TableOrder::natural) {
        for (std::uint64_t v = 1; v < n; ++v) t.labels.push_back(v);
    } else {
        t.labels = residues;
        for (std::uint64_t v = 1; v < n; ++v) {
            if (!is_residue[v]) t.labels.push_back(v);
        }
    }

    const auto marked = [&](std::uint64_t v) {
        switch (highlight) {
            case HighlightKind::none:
                return false;
            case HighlightKind::residues:
                return v != 0 && is_residue[v];
            case HighlightKind::small_values:
                return v != 0 && v <= modulus.half();
        }
        return false;
    };
    for (auto r : t.labels) {
        auto& row = t.cells.emplace_back();
        auto& marks = t.highlighted.emplace_back();
        for (auto c : t.labels) {
            const std::uint64_t v = mul_mod(r, c, n);
            row.push_back(v);
            marks.push_back(marked(v));
        }
    }
    return t;
}

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

constexpr std::string_view kAnsiHighlight = "\x1b[30;46m";
constexpr std::string_view kAnsiReset = "\x1b[0m";

std::string format_text(const MultTable& t, bool ansi) {
    const std::size_t w = std::to_string(t.n - 1).size();
    const std::size_t cols = t.labels.size();
    std::ostringstream out;

    // Each cell is " " + value + one marker column, so widths line up.
    const auto rule = [&] {
        out << std::string(w, '-') << "-+";
        for (std::size_t c = 0; c < cols; ++c) {
            out << std::string(w + 2, '-');
            if (c + 1 == t.block || c + 1 == cols) out << '+';
        }
        out << '\n';
    };

    out << std::string(w, ' ') << " |";
    for (std::size_t c = 0; c < cols; ++c) {
        out << ' ' << pad_left(std::to_string(t.labels[c]), w) << ' ';
        if (c + 1 == t.block || c + 1 == cols) out << '|';
    }
    out << '\n';
    rule();
    for (std::size_t r = 0; r < cols; ++r) {
        out << pad_left(std::to_string(t.labels[r]), w) << " |";
        for (std::size_t c = 0; c < cols; ++c) {
            const std::string value = pad_left(std::to_string(t.cells[r][c]), w);
            const bool mark = t.highlighted[r][c];
            if (ansi) {
                out << ' ';
                if (mark) out << kAnsiHighlight << value << kAnsiReset;
                else out << value;
                out << ' ';
            } else {
                out << ' ' << value << (mark ? '*' : ' ');
            }
            if (c + 1 == t.block || c + 1 == cols) out << '|';
        }
        out << '\n';
        if (r + 1 == t.block || r + 1 == cols) rule();
    }
    return out.str();
}

std::string format_csv(const MultTable& t) {
    std::ostringstream out;
    for (auto l : t.labels) out << ',' << l;
    out << '\n';
    for (std::size_t r = 0; r < t.labels.size(); ++r) {
        out << t.labels[r];
        for (auto v : t.cells[r]) out << ',' << v;
        out << '\n';
    }
    return out.str();
}

std::string format_html(const MultTable& t) {
    const std::size_t cols = t.labels.size();
    std::ostringstream out;
    out << "<table class=\"mult-table\" data-modulus=\"" << t.n << "\">\n";
    out << "<style>td.cyan { background-color: cyan; } .block-end { border-right: 2px solid black; }</style>\n";
    out << "<thead><tr><th></th>";
    for (std::size_t c = 0; c < cols; ++c) {
        out << (c + 1 == t.block ? "<th class=\"block-end\">" : "<th>") << t.labels[c] << "</th>";
    }
    out << "</tr></thead>\n<tbody>\n";
    for (std::size_t r = 0; r < cols; ++r) {
        out << "<tr><th>" << t.labels[r] << "</th>";
        for (std::size_t c = 0; c < cols; ++c) {
            std::string cls;
            if (t.highlighted[r][c]) cls = "cyan";
            if (c + 1 == t.block) cls += cls.empty() ? "block-end" : " block-end";
            out << (cls.empty() ? "<td>" : "<td class=\"" + cls + "\">") << t.cells[r][c] << "</td>";
        }
        out << "</tr>\n";
        if (r + 1 == t.block && r + 1 != cols) out << "</tbody>\n<tbody>\n";
    }
    out << "</tbody>\n</table>\n";
    return out.str();
}

}  // namespace

std::string format_mult_table(const MultTable& table, TableFormat format) {
    switch (format) {
        case TableFormat::ansi:
            return format_text(table, true);
        case TableFormat::plain:
            return format_text(table, false);
        case TableFormat::csv:
            return format_csv(table);
        case TableFormat::html:
            return format_html(table);
    }
    return {};
}

std::string render_mult_table(const TableSpec& spec) {
    return format_mult_table(build_mult_table(spec.n, spec.order, spec.highlight), spec.format);
}

std::string annex2_line(OddModulus n) {
    const ResidueCensus c = census(n, {.want_details = true});
    std::string line = std::to_string(n.value()) + " → ";
    for (std::size_t i = 0; i < c.details.size(); ++i) {
        const auto& d = c.details[i];
        if (i) line += ", ";
        line += std::to_string(d.y);
        if (d.smallest_root != 1) {
            line += " (" + std::to_string(d.smallest_root) + ")";
        }
    }
    line += ". → " + std::to_string(c.r_b);
    return line;
}

std::string render_annex2(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 3 || lo > hi) {
        throw std::invalid_argument("annex range must satisfy 3 <= lo <= hi");
    }
    std::string out;
    for (std::uint64_t n = lo | 1; n <= hi; n += 2) {
        out += annex2_line(OddModulus(n));
        out += '\n';
    }
    return out;
}

std::string render_annex1(OddModulus n) {
    constexpr std::size_t kPerLine = 11;
    const auto pairs = collision_pairs(n);
    std::string out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out += "(" + std::to_string(pairs[i].a) + "," + std::to_string(pairs[i].b) + ")";
        if (i + 1 == pairs.size()) {
            out += ".\n";
        } else if ((i + 1) % kPerLine == 0) {
            out += ",\n";
        } else {
            out += ", ";
        }
    }
    out += "zero squares:";
    bool first = true;
    for (auto x : zero_square_roots(n)) {
        if (x > n.half()) break;
        out += first ? " " : ", ";
        out += std::to_string(x);
        first = false;
    }
    out += '\n';
    return out;
}

namespace {

std::array<std::uint64_t, 11> census_fields(const ResidueCensus& c) {
    return {c.n, c.r_b, c.n_b, c.r_h, c.n_h, c.sum_r, c.sum_n, c.sum_rb, c.sum_nb, c.sum_rh, c.sum_nh};
}

ResidueCensus census_from_fields(const std::array<std::uint64_t, 11>& f) {
    ResidueCensus c;
    c.n = f[0];
    c.r_b = f[1];
    c.n_b = f[2];
    c.r_h = f[3];
    c.n_h = f[4];
    c.sum_r = f[5];
    c.sum_n = f[6];
    c.sum_rb = f[7];
    c.sum_nb = f[8];
    c.sum_rh = f[9];
    c.sum_nh = f[10];
    return c;
}

std::uint64_t parse_u64(std::string_view s) {
    if (s.empty() || s.size() > 20 || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
        throw std::invalid_argument("expected an unsigned integer, got '" + std::string(s) + "'");
    }
    return std::stoull(std::string(s));
}

}  // namespace

std::string export_census(const std::vector<ResidueCensus>& records, CensusFormat format) {
    std::string out;
    if (format == CensusFormat::csv) {
        for (std::size_t i = 0; i < std::size(kCensusFields); ++i) {
            if (i) out += ',';
            out += kCensusFields[i];
        }
        out += '\n';
        for (const auto& c : records) {
            const auto f = census_fields(c);
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(f[i]);
            }
            out += '\n';
        }
        return out;
    }
    for (const auto& c : records) {
        nlohmann::ordered_json j;
        const auto f = census_fields(c);
        for (std::size_t i = 0; i < f.size(); ++i) {
            j[std::string(kCensusFields[i])] = f[i];
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<ResidueCensus> parse_census_export(std::string_view text, CensusFormat format) {
    std::vector<ResidueCensus> out;
    std::vector<std::string> lines;
    {
        std::istringstream in{std::string(text)};
        for (std::string line; std::getline(in, line);) {
            if (!line.empty()) lines.push_back(line);
        }
    }
    if (format == CensusFormat::csv) {
        if (lines.empty()) {
            throw std::invalid_argument("census CSV lacks its header");
        }
        for (std::size_t li = 1; li < lines.size(); ++li) {
            std::array<std::uint64_t, 11> f{};
            std::istringstream row(lines[li]);
            std::size_t i = 0;
            for (std::string cell; std::getline(row, cell, ',');) {
                if (i >= f.size()) throw std::invalid_argument("census CSV row has too many fields");
                f[i++] = parse_u64(cell);
            }
            if (i != f.size()) throw std::invalid_argument("census CSV row has too few fields");
            out.push_back(census_from_fields(f));
        }
        return out;
    }
    for (const auto& line : lines) {
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw std::invalid_argument("census JSON line is not an object");
        }
        std::array<std::uint64_t, 11> f{};
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::string key(kCensusFields[i]);
            if (!j.contains(key) || !j[key].is_number_unsigned()) {
                throw std::invalid_argument("census JSON line lacks field '" + key + "'");
            }
            f[i] = j[key].get<std::uint64_t>();
        }
        out.push_back(census_from_fields(f));
    }
    return out;
}

}  // namespace qrc
