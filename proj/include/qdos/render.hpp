// Deterministic SVG and ASCII renderers for diagrams of states.
// Labeling conventions: no label for a +1 entry, "-" for
// -1, unit phases as e^i..., switches drawn as intersecting lines and
// unchanged states as overlapping straight lines; thin lines mark absence
// of information when flow marks are present.

#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qdos/diagram.hpp"

namespace qdos {

enum class RenderFormat { SVG, ASCII };

struct RenderStyle {
    RenderFormat format = RenderFormat::SVG;
    bool show_normalization = false;  // false: per-block common modulus omitted
    bool mark_junctions = true;
    double line_spacing = 24.0;   // abstract units
    double column_pad = 18.0;
};

namespace detail {

inline std::string fmt_num(double v) {
    if (std::abs(v) < 1e-12) v = 0.0;  // avoid "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string format_label(Complex z) {
    const Complex one{1.0, 0.0};
    if (std::abs(z - one) < 1e-9) return "";
    if (std::abs(z + one) < 1e-9) return "-";
    if (std::abs(z - Complex{0.0, 1.0}) < 1e-9) return "i";
    if (std::abs(z + Complex{0.0, 1.0}) < 1e-9) return "-i";
    if (std::abs(std::abs(z) - 1.0) < 1e-9) return "e^i" + fmt_num(std::arg(z));
    if (std::abs(z.imag()) < 1e-9) return fmt_num(z.real());
    if (std::abs(z.real()) < 1e-9) return fmt_num(z.imag()) + "i";
    return fmt_num(z.real()) + (z.imag() < 0 ? "" : "+") + fmt_num(z.imag()) + "i";
}

// Normalization coefficients are omitted when
// every segment of a block shares the same nonunit modulus.
inline std::vector<std::string> block_labels(const GateBlock& b, bool show_normalization) {
    double common = -1.0;
    bool uniform = !b.segments.empty();
    for (const Segment& s : b.segments) {
        const double m = std::abs(s.label);
        if (common < 0.0) common = m;
        if (std::abs(m - common) > 1e-9) uniform = false;
    }
    const bool strip = !show_normalization && uniform && common > 1e-12 &&
                       std::abs(common - 1.0) > 1e-9;
    std::vector<std::string> out;
    out.reserve(b.segments.size());
    for (const Segment& s : b.segments)
        out.push_back(format_label(strip ? s.label / common : s.label));
    return out;
}

inline std::string basis_label(std::size_t index, int n_qubits) {
    std::string s(n_qubits, '0');
    for (int k = 0; k < n_qubits; ++k)
        if ((index >> k) & 1) s[n_qubits - 1 - k] = '1';  // MSB leftmost
    return s;
}

inline std::string svg_line(double x1, double y1, double x2, double y2, double width,
                            const char* cls) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "<line class=\"%s\" x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"black\" stroke-width=\"%.1f\"/>\n",
                  cls, x1, y1, x2, y2, width);
    return buf;
}

struct Span {
    double x0, x1;
    bool thick;
};

// One path per (line, thickness): horizontal runs joined with move-tos.
inline std::string svg_spans(const std::vector<Span>& spans, double y, bool thick) {
    std::string d;
    char buf[80];
    for (const Span& s : spans) {
        if (s.thick != thick) continue;
        std::snprintf(buf, sizeof buf, "M %.1f %.1f H %.1f ", s.x0, y, s.x1);
        d += buf;
    }
    if (d.empty()) return "";
    d.pop_back();
    char head[96];
    std::snprintf(head, sizeof head,
                  "<path class=\"state\" stroke=\"black\" fill=\"none\" stroke-width=\"%.1f\" ",
                  thick ? 1.6 : 0.5);
    return std::string(head) + "d=\"" + d + "\"/>\n";
}

}  // namespace detail

inline std::string render_svg(const Diagram& d, const RenderStyle& st) {
    const std::size_t lines = d.n_lines();
    const double top = 20.0, left = 16.0;
    const double label_w = 12.0 * d.n_qubits + 24.0;
    auto y_of = [&](std::size_t i) { return top + st.line_spacing * i; };

    // Column widths scale with the longest label in the block.
    std::vector<std::vector<std::string>> labels;
    std::vector<double> width;
    for (const GateBlock& b : d.blocks) {
        labels.push_back(detail::block_labels(b, st.show_normalization));
        std::size_t maxlen = 0;
        for (const std::string& l : labels.back()) maxlen = std::max(maxlen, l.size());
        width.push_back(std::max(24.0, st.column_pad + 7.0 * maxlen));
    }

    const double gap = 16.0;
    double total = left + label_w + gap;
    for (double w : width) total += w + gap;
    const double height = top + st.line_spacing * (lines - 1) + 20.0;

    auto live_at = [&](std::size_t boundary, std::size_t line) {
        return !d.has_flow || d.live[boundary][line];
    };
    auto stroke = [](bool thick) { return thick ? 1.6 : 0.5; };

    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.1f\" "
                  "height=\"%.1f\" viewBox=\"0 0 %.1f %.1f\">\n",
                  total, height, total, height);
    os << buf;
    for (std::size_t i = 0; i < lines; ++i) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" font-family=\"monospace\">"
                      "%s</text>\n",
                      left, y_of(i) + 4.0, detail::basis_label(i, d.n_qubits).c_str());
        os << buf;
    }

    // Horizontal runs per line: leading gap, pass-throughs outside each
    // block's support, inter-block gaps; contiguous same-thickness runs fuse.
    std::vector<std::vector<detail::Span>> runs(lines);
    auto add_run = [&](std::size_t i, double x0, double x1, bool thick) {
        auto& v = runs[i];
        if (!v.empty() && v.back().x1 == x0 && v.back().thick == thick)
            v.back().x1 = x1;
        else
            v.push_back({x0, x1, thick});
    };
    {
        double x = left + label_w;
        for (std::size_t i = 0; i < lines; ++i) add_run(i, x, x + gap, live_at(0, i));
        x += gap;
        for (std::size_t k = 0; k < d.blocks.size(); ++k) {
            for (std::size_t i = 0; i < lines; ++i) {
                if (!d.blocks[k].acts_on(i)) add_run(i, x, x + width[k], live_at(k, i));
                add_run(i, x + width[k], x + width[k] + gap, live_at(k + 1, i));
            }
            x += width[k] + gap;
        }
    }
    for (std::size_t i = 0; i < lines; ++i) {
        os << detail::svg_spans(runs[i], y_of(i), true);
        os << detail::svg_spans(runs[i], y_of(i), false);
    }

    double x = left + label_w + gap;
    for (std::size_t k = 0; k < d.blocks.size(); ++k) {
        const GateBlock& b = d.blocks[k];
        const double w = width[k];
        std::map<std::size_t, int> outdeg, indeg;
        for (const Segment& s : b.segments) {
            ++outdeg[s.from];
            ++indeg[s.to];
        }
        for (std::size_t si = 0; si < b.segments.size(); ++si) {
            const Segment& s = b.segments[si];
            os << detail::svg_line(x, y_of(s.from), x + w, y_of(s.to), stroke(s.thick), "seg");
            const std::string& lab = labels[k][si];
            if (!lab.empty()) {
                std::snprintf(buf, sizeof buf,
                              "<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\" "
                              "font-family=\"monospace\" text-anchor=\"middle\">%s</text>\n",
                              x + w / 2.0, (y_of(s.from) + y_of(s.to)) / 2.0 - 3.0, lab.c_str());
                os << buf;
            }
        }
        if (st.mark_junctions) {
            for (const auto& [line, deg] : outdeg)
                if (deg > 1) {
                    std::snprintf(buf, sizeof buf,
                                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"1.8\" fill=\"black\"/>\n",
                                  x, y_of(line));
                    os << buf;
                }
            for (const auto& [line, deg] : indeg)
                if (deg > 1) {
                    std::snprintf(buf, sizeof buf,
                                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"1.8\" fill=\"black\"/>\n",
                                  x + w, y_of(line));
                    os << buf;
                }
        }
        x += w + gap;
    }
    os << "</svg>\n";
    return os.str();
}

// ASCII glyphs: "--" pass-through ("==" when flow-marked live, ".." thin),
// "\\j" / "/j" a switch into line j, "[label]" a labeled self segment;
// multiple segments from one line are comma-joined.
inline std::string render_ascii(const Diagram& d, const RenderStyle& st) {
    const std::size_t lines = d.n_lines();
    auto live_at = [&](std::size_t boundary, std::size_t line) {
        return !d.has_flow || d.live[boundary][line];
    };

    std::vector<std::vector<std::string>> cells(lines);
    std::vector<std::vector<std::string>> labels;
    for (const GateBlock& b : d.blocks) labels.push_back(detail::block_labels(b, st.show_normalization));

    for (std::size_t k = 0; k < d.blocks.size(); ++k) {
        const GateBlock& b = d.blocks[k];
        std::vector<std::string> cell(lines);
        for (std::size_t si = 0; si < b.segments.size(); ++si) {
            const Segment& s = b.segments[si];
            std::string tok;
            if (s.from == s.to) {
                tok = labels[k][si].empty() ? (s.thick || !d.has_flow ? "--" : "..")
                                            : "[" + labels[k][si] + "]";
            } else {
                tok = (s.to > s.from ? "\\" : "/") + std::to_string(s.to);
                if (!labels[k][si].empty()) tok += "(" + labels[k][si] + ")";
            }
            std::string& c = cell[s.from];
            if (!c.empty()) c += ",";
            c += tok;
        }
        std::size_t wcell = 2;
        for (std::size_t i = 0; i < lines; ++i) wcell = std::max(wcell, cell[i].size());
        for (std::size_t i = 0; i < lines; ++i) {
            std::string c = cell[i];
            const char pad = !d.has_flow ? '-' : live_at(k, i) ? '-' : '.';
            if (c.empty() && !b.acts_on(i)) c = std::string(wcell, pad);
            c.resize(wcell, pad);
            cells[i].push_back(c);
        }
    }

    std::ostringstream os;
    os << "diagram of states: " << lines << " lines, " << d.blocks.size() << " blocks\n";
    for (std::size_t i = 0; i < lines; ++i) {
        os << "|" << detail::basis_label(i, d.n_qubits) << "> ";
        for (std::size_t k = 0; k <= d.blocks.size(); ++k) {
            const char join = d.has_flow ? (live_at(k, i) ? '=' : '.') : '-';
            os << std::string(3, join);
            if (k < d.blocks.size()) os << cells[i][k];
        }
        os << "\n";
    }
    return os.str();
}

inline std::string render(const Diagram& d, const RenderStyle& st) {
    return st.format == RenderFormat::SVG ? render_svg(d, st) : render_ascii(d, st);
}

}  // namespace qdos
