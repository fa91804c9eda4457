#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ttpos/errors.hpp"
#include "ttpos/track.hpp"

namespace ttpos {

namespace detail {

struct Tok {
  std::string text;
  int line = 0, col = 0;
};

// whitespace separated tokens per line, '#' starts a comment, braces and brackets stand alone
inline std::vector<std::vector<Tok>> tokenize_lines(const std::string& text) {
  std::vector<std::vector<Tok>> out;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    std::vector<Tok> row;
    std::string cur;
    int start = 0;
    auto flush = [&]() {
      if (!cur.empty()) row.push_back({cur, ln, start + 1});
      cur.clear();
    };
    for (int i = 0; i < (int)line.size(); ++i) {
      char c = line[i];
      if (c == '#') break;
      if (c == ' ' || c == '\t' || c == '\r') {
        flush();
        continue;
      }
      if (c == '{' || c == '}' || c == '[' || c == ']') {
        flush();
        row.push_back({std::string(1, c), ln, i + 1});
        continue;
      }
      if (cur.empty()) start = i;
      cur += c;
    }
    flush();
    if (!row.empty()) out.push_back(row);
  }
  return out;
}

[[noreturn]] inline void parse_fail(const Tok& t, const std::string& msg) {
  throw Error(Errc::ParseError, "line " + std::to_string(t.line) + ", column " + std::to_string(t.col) + ": " + msg,
              t.line, t.col);
}

inline int parse_int(const Tok& t) {
  try {
    std::size_t used = 0;
    int v = std::stoi(t.text, &used);
    if (used != t.text.size()) parse_fail(t, "expected an integer, got '" + t.text + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(t, "expected an integer, got '" + t.text + "'");
  }
}

inline BranchEnd parse_end(const Tok& t) {
  auto dot = t.text.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 2 != t.text.size() ||
      (t.text[dot + 1] != '0' && t.text[dot + 1] != '1'))
    parse_fail(t, "expected a branch end like 'a.0', got '" + t.text + "'");
  return BranchEnd{t.text.substr(0, dot), t.text[dot + 1] - '0'};
}

}  // namespace detail

inline TrackDesc parse_track(const std::string& text) {
  using detail::parse_fail;
  auto rows = detail::tokenize_lines(text);
  TrackDesc d;
  bool have_surface = false, have_sw = false, have_br = false, have_faces = false;
  std::size_t r = 0;
  auto section_rows = [&](const detail::Tok& head) {
    std::vector<std::vector<detail::Tok>> body;
    const auto& row = rows[r];
    if (row.size() < 2 || row[1].text != "[") parse_fail(head, "expected '[' after " + head.text);
    if (row.size() > 2) parse_fail(row[2], "section entries start on the next line");
    ++r;
    while (r < rows.size() && !(rows[r].size() == 1 && rows[r][0].text == "]")) body.push_back(rows[r++]);
    if (r == rows.size()) parse_fail(head, "unterminated section " + head.text);
    ++r;
    return body;
  };
  while (r < rows.size()) {
    const auto& row = rows[r];
    const detail::Tok& head = row[0];
    if (head.text == "surface") {
      if (row.size() != 7 || row[1].text != "{" || row[2].text != "genus" || row[4].text != "boundary" ||
          row[6].text != "}")
        parse_fail(head, "expected 'surface { genus G boundary B }'");
      d.genus = detail::parse_int(row[3]);
      d.boundary = detail::parse_int(row[5]);
      have_surface = true;
      ++r;
    } else if (head.text == "switches") {
      for (const auto& e : section_rows(head)) {
        if (e.size() != 6 || e[1].text != "large" || e[3].text != "small")
          parse_fail(e[0], "expected '<name> large <b.e> small <b.e> <b.e>'");
        d.switches.push_back(SwitchDesc{e[0].text, detail::parse_end(e[2]), detail::parse_end(e[4]), detail::parse_end(e[5])});
      }
      have_sw = true;
    } else if (head.text == "branches") {
      for (const auto& e : section_rows(head)) {
        if (e.size() != 3) parse_fail(e[0], "expected '<name> <from-switch> <to-switch>'");
        d.branches.push_back(BranchDesc{e[0].text, e[1].text, e[2].text});
      }
      have_br = true;
    } else if (head.text == "faces") {
      for (const auto& e : section_rows(head)) {
        if (e[0].text != "annulus" && e[0].text != "disc") parse_fail(e[0], "face kind must be 'annulus' or 'disc'");
        if (e.size() < 2) parse_fail(e[0], "empty face word");
        FaceDesc f;
        f.annulus = e[0].text == "annulus";
        for (std::size_t i = 1; i < e.size(); ++i) f.word.push_back(e[i].text);
        d.faces.push_back(f);
      }
      have_faces = true;
    } else {
      parse_fail(head, "unknown section '" + head.text + "'");
    }
  }
  detail::Tok eof{"", static_cast<int>(rows.empty() ? 1 : rows.back()[0].line), 1};
  if (!have_surface) parse_fail(eof, "missing surface section");
  if (!have_sw) parse_fail(eof, "missing switches section");
  if (!have_br) parse_fail(eof, "missing branches section");
  if (!have_faces) parse_fail(eof, "missing faces section");
  return d;
}

inline std::string serialize_track(const TrackDesc& d) {
  std::ostringstream o;
  auto end = [](const BranchEnd& e) { return e.branch + "." + std::to_string(e.end); };
  o << "surface { genus " << d.genus << " boundary " << d.boundary << " }\n";
  o << "switches [\n";
  for (const auto& s : d.switches)
    o << "  " << s.name << " large " << end(s.large) << " small " << end(s.small_a) << " " << end(s.small_b) << "\n";
  o << "]\nbranches [\n";
  for (const auto& b : d.branches) o << "  " << b.name << " " << b.from << " " << b.to << "\n";
  o << "]\nfaces [\n";
  for (const auto& f : d.faces) {
    o << "  " << (f.annulus ? "annulus" : "disc");
    for (const auto& t : f.word) o << " " << t;
    o << "\n";
  }
  o << "]\n";
  return o.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Neighbourhood load_track(const std::string& path) { return build_tie_neighbourhood(parse_track(read_file(path))); }

}  // namespace ttpos
