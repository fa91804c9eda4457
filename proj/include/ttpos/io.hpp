#pragma once

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttpos/curve.hpp"
#include "ttpos/errors.hpp"
#include "ttpos/homotopy.hpp"
#include "ttpos/snippet.hpp"
#include "ttpos/track.hpp"
#include "ttpos/track_io.hpp"

namespace ttpos {

// ---- curves
//
//   curve closed            (or: curve arc)
//   B:a 0 2                 region, start locus, end locus
//   F0 3 1 -2               annulus snippets may carry a winding number
//   F0 dS 4                 dS: boundary of the surface, '-': closed snippet

namespace detail {

inline Locus parse_locus(const Tok& t) {
  if (t.text == "dS") return Locus::ds();
  if (t.text == "-") return Locus::closed();
  int v = parse_int(t);
  return Locus::at(v);
}

inline std::string locus_text(Locus l) {
  if (l.is_ds()) return "dS";
  if (l.is_closed()) return "-";
  return std::to_string(l.seg);
}

}  // namespace detail

inline Curve parse_curve(const std::string& text, const Neighbourhood& N) {
  using detail::parse_fail;
  auto rows = detail::tokenize_lines(text);
  detail::Tok eof{"", 1, 1};
  if (rows.empty()) parse_fail(eof, "empty curve");
  const auto& head = rows[0];
  if (head.size() != 2 || head[0].text != "curve" || (head[1].text != "closed" && head[1].text != "arc"))
    parse_fail(head[0], "expected 'curve closed' or 'curve arc'");
  Curve c{head[1].text == "closed" ? CurveKind::Closed : CurveKind::Arc, {}};
  if (rows.size() == 1) parse_fail(head[0], "curve has no snippets");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 3 && row.size() != 4) parse_fail(row[0], "expected '<region> <start> <end> [winding]'");
    int reg = N.find(row[0].text);
    if (reg < 0) parse_fail(row[0], "unknown region '" + row[0].text + "'");
    const Region& R = N[reg];
    Snippet s{reg, detail::parse_locus(row[1]), detail::parse_locus(row[2]), 0};
    for (int k = 1; k <= 2; ++k) {
      Locus l = k == 1 ? s.start : s.end;
      if (l.is_seg() && (l.seg < 0 || l.seg >= R.size())) parse_fail(row[k], "segment out of range for " + R.name);
    }
    if (row.size() == 4) {
      if (!R.annulus()) parse_fail(row[3], "winding number outside an annulus");
      s.wind = detail::parse_int(row[3]);
    } else if (R.annulus() && s.start.is_seg() && s.end.is_seg()) {
      s.wind = wind_of_displacement(R, s.start.seg, R.mod(s.end.seg - s.start.seg));
    }
    c.s.push_back(s);
  }
  validate_curve(N, c);
  return c;
}

inline std::string serialize_curve(const Curve& c, const Neighbourhood& N) {
  std::ostringstream o;
  o << "curve " << (c.closed() ? "closed" : "arc") << "\n";
  for (const Snippet& s : c.s) {
    o << N[s.region].name << " " << detail::locus_text(s.start) << " " << detail::locus_text(s.end);
    if (N[s.region].annulus() && !s.start.is_ds() && !s.end.is_ds()) o << " " << s.wind;
    o << "\n";
  }
  return o.str();
}

inline Curve load_curve(const std::string& path, const Neighbourhood& N) { return parse_curve(read_file(path), N); }

// ---- traces: a header line, then one JSON record per rewrite

inline constexpr const char* kTraceHeader = "# ttpos-trace v1";

inline BadType bad_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(BadType::R_hv); ++i)
    if (s == bad_name(static_cast<BadType>(i))) return static_cast<BadType>(i);
  throw Error(Errc::ParseError, "unknown bad type '" + s + "'");
}

inline Turn turn_from_name(const std::string& s) {
  if (s == "L") return Turn::Left;
  if (s == "R") return Turn::Right;
  if (s == "-") return Turn::NA;
  throw Error(Errc::ParseError, "unknown turn '" + s + "'");
}

namespace detail {

using nlohmann::json;

inline json report_json(const LengthReport& r) {
  return json{{"len", r.len},   {"len_corn", r.len_corn}, {"len_block", r.len_block}, {"len_red", r.len_red},
              {"carr", r.carr}, {"dual_R", r.dual_R},     {"dual_L", r.dual_L},       {"bad", r.bad_count}};
}

inline LengthReport report_from(const json& j) {
  LengthReport r;
  r.len = j.at("len");
  r.len_corn = j.at("len_corn");
  r.len_block = j.at("len_block");
  r.len_red = j.at("len_red");
  r.carr = j.at("carr");
  r.dual_R = j.at("dual_R");
  r.dual_L = j.at("dual_L");
  r.bad_count = j.at("bad");
  return r;
}

inline json curve_json(const Curve& c, const Neighbourhood& N) {
  json s = json::array();
  for (const Snippet& x : c.s)
    s.push_back(json::array({N[x.region].name, locus_text(x.start), locus_text(x.end), x.wind}));
  return json{{"kind", c.closed() ? "closed" : "arc"}, {"snippets", s}};
}

inline Curve curve_from(const json& j, const Neighbourhood& N) {
  Curve c{j.at("kind") == "closed" ? CurveKind::Closed : CurveKind::Arc, {}};
  for (const auto& x : j.at("snippets")) {
    int reg = N.find(x.at(0).get<std::string>());
    if (reg < 0) throw Error(Errc::ParseError, "trace names unknown region " + x.at(0).get<std::string>());
    Tok a{x.at(1).get<std::string>(), 0, 0}, b{x.at(2).get<std::string>(), 0, 0};
    c.s.push_back(Snippet{reg, parse_locus(a), parse_locus(b), x.at(3).get<int>()});
  }
  return c;
}

}  // namespace detail

inline std::string event_json(const RewriteEvent& e, const Neighbourhood& N) {
  using detail::json;
  json j{{"context", e.context}, {"type", bad_name(e.type)}, {"turn", turn_name(e.turn)},   {"k", e.k},
         {"pushed", e.pushed},   {"closed", e.closed}, {"before_len", e.before_len}, {"after_len", e.after_len},
         {"window", json::array({e.window_start, e.window_len})}};
  if (e.measured) {
    j["before_red"] = e.before_red;
    j["after_red"] = e.after_red;
    j["before_m"] = detail::report_json(e.before_m);
    j["after_m"] = detail::report_json(e.after_m);
  }
  if (e.new_bad)
    j["new_bad"] = json{{"pos", e.new_bad->first},
                        {"type", bad_name(e.new_bad->second.type)},
                        {"turn", turn_name(e.new_bad->second.turn)}};
  else
    j["new_bad"] = nullptr;
  if (e.before) j["before"] = detail::curve_json(*e.before, N);
  if (e.after) j["after"] = detail::curve_json(*e.after, N);
  return j.dump();
}

inline void write_trace(std::ostream& o, const Trace& t, const Neighbourhood& N) {
  o << kTraceHeader << "\n";
  for (const RewriteEvent& e : t.events) o << event_json(e, N) << "\n";
}

inline Trace read_trace(std::istream& in, const Neighbourhood& N) {
  using detail::json;
  Trace t;
  std::string line;
  int ln = 0;
  if (!std::getline(in, line) || line != kTraceHeader) throw Error(Errc::ParseError, "missing trace header", 1, 1);
  ++ln;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(Errc::ParseError, "line " + std::to_string(ln) + ": " + e.what(), ln, static_cast<int>(e.byte));
    }
    try {
      RewriteEvent e;
      e.context = j.at("context");
      e.type = bad_from_name(j.at("type"));
      e.turn = turn_from_name(j.at("turn"));
      e.k = j.at("k");
      e.pushed = j.at("pushed");
      e.closed = j.at("closed");
      e.before_len = j.at("before_len");
      e.after_len = j.at("after_len");
      e.window_start = j.at("window").at(0);
      e.window_len = j.at("window").at(1);
      if (j.contains("before_m")) {
        e.measured = true;
        e.before_red = j.at("before_red");
        e.after_red = j.at("after_red");
        e.before_m = detail::report_from(j.at("before_m"));
        e.after_m = detail::report_from(j.at("after_m"));
      }
      if (!j.at("new_bad").is_null()) {
        SnippetClass c;
        c.verdict = Verdict::Bad;
        c.type = bad_from_name(j["new_bad"].at("type"));
        c.turn = turn_from_name(j["new_bad"].at("turn"));
        e.new_bad = std::make_pair(j["new_bad"].at("pos").get<int>(), c);
      }
      if (j.contains("before")) e.before = detail::curve_from(j["before"], N);
      if (j.contains("after")) e.after = detail::curve_from(j["after"], N);
      t.events.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw Error(Errc::ParseError, "line " + std::to_string(ln) + ": " + e.what(), ln, 1);
    }
  }
  t.steps = static_cast<long>(t.events.size());
  return t;
}

// ---- schematic SVG: every region as a polygon on a grid, snippets as numbered chords

inline std::string render_svg(const Neighbourhood& N, const Curve* c = nullptr) {
  const int cols = 4, cell = 220;
  const double rad = 80;
  int rows = (N.size() + cols - 1) / cols;
  std::ostringstream o;
  o << std::fixed << std::setprecision(1);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * cell << "\" height=\"" << rows * cell + 40
    << "\" font-family=\"monospace\" font-size=\"10\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double kPi = 3.14159265358979323846;
  auto vertex = [&](int r, int i, double& x, double& y) {
    int L = N[r].size();
    double cx = (r % cols) * cell + cell / 2.0, cy = (r / cols) * cell + cell / 2.0 + 10;
    double a = 2 * kPi * i / L - kPi / 2;
    x = cx + rad * std::cos(a);
    y = cy + rad * std::sin(a);
  };
  auto mid = [&](int r, int s, double& x, double& y) {
    double x0, y0, x1, y1;
    vertex(r, s, x0, y0);
    vertex(r, (s + 1) % N[r].size(), x1, y1);
    x = (x0 + x1) / 2;
    y = (y0 + y1) / 2;
  };
  for (int r = 0; r < N.size(); ++r) {
    const Region& R = N[r];
    double cx = (r % cols) * cell + cell / 2.0, cy = (r / cols) * cell + cell / 2.0 + 10;
    o << "<text x=\"" << cx << "\" y=\"" << cy - rad - 12 << "\" text-anchor=\"middle\">" << R.name
      << (R.annulus() ? " (annulus)" : "") << "</text>\n";
    if (R.annulus()) o << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"12\" fill=\"#ddd\"/>\n";
    for (int i = 0; i < R.size(); ++i) {
      double x0, y0, x1, y1, mx, my;
      vertex(r, i, x0, y0);
      vertex(r, (i + 1) % R.size(), x1, y1);
      Label l = R.segs[i].label;
      const char* style = l == Label::h ? "stroke=\"black\" stroke-width=\"2\""
                          : l == Label::v ? "stroke=\"black\" stroke-dasharray=\"4 3\""
                                          : "stroke=\"#999\"";
      o << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y1 << "\" " << style << "/>\n";
      mid(r, i, mx, my);
      o << "<text x=\"" << cx + (mx - cx) * 1.18 << "\" y=\"" << cy + (my - cy) * 1.18 + 3
        << "\" text-anchor=\"middle\" fill=\"#555\">" << i << "</text>\n";
      o << "<circle cx=\"" << x0 << "\" cy=\"" << y0 << "\" r=\"3\" "
        << (R.is_corner(i) ? "fill=\"black\"" : "fill=\"white\" stroke=\"black\"") << "/>\n";
    }
  }
  if (c) {
    for (int i = 0; i < c->len(); ++i) {
      const Snippet& s = c->s[i];
      int r = s.region;
      double cx = (r % cols) * cell + cell / 2.0, cy = (r / cols) * cell + cell / 2.0 + 10;
      double x0 = cx, y0 = cy + 20, x1 = cx, y1 = cy - 20;
      if (s.start.is_seg()) mid(r, s.start.seg, x0, y0);
      if (s.end.is_seg()) mid(r, s.end.seg, x1, y1);
      bool bad = classify(N, s).bad();
      const char* col = bad ? "#c0392b" : "#1e8449";
      if (s.closed())
        o << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"30\" fill=\"none\" stroke=\"" << col << "\"/>\n";
      else
        o << "<path d=\"M " << x0 << " " << y0 << " Q " << cx << " " << cy << " " << x1 << " " << y1
          << "\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\"/>\n";
      o << "<text x=\"" << (x0 + x1 + 2 * cx) / 4 << "\" y=\"" << (y0 + y1 + 2 * cy) / 4 << "\" fill=\"" << col << "\">"
        << i << "</text>\n";
    }
    o << "<text x=\"8\" y=\"" << rows * cell + 28 << "\">";
    for (int i = 0; i < c->len(); ++i) o << (i ? " | " : "") << N[c->s[i].region].name;
    o << (c->closed() ? " |" : "") << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace ttpos
