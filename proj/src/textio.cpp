#include "tetris/textio.hpp"

#include <fstream>
#include <sstream>

namespace tetris {

Board parse_board(const std::string& text) {
  std::istringstream in(text);
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1) throw ParseError("bad board header");
  std::string line;
  std::getline(in, line);
  Board b(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw ParseError("board has fewer rows than its header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != cols)
      throw ParseError("board row " + std::to_string(i + 1) + " has wrong width");
    const int r = rows - i;
    for (int c = 1; c <= cols; ++c) {
      const char ch = line[c - 1];
      if (ch == '#') b.set(r, c);
      else if (ch != '.') throw ParseError(std::string("unexpected board character '") + ch + "'");
    }
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("trailing data after board");
  return b;
}

std::string render_board(const Board& b) {
  std::string out = std::to_string(b.rows()) + " " + std::to_string(b.cols()) + "\n";
  for (int r = b.rows(); r >= 1; --r) {
    for (int c = 1; c <= b.cols(); ++c) out += b.filled(r, c) ? '#' : '.';
    out += '\n';
  }
  return out;
}

std::string render_board(const Board& b, const PieceState& s) {
  const Cells cs = piece_cells(s);
  std::string out = std::to_string(b.rows()) + " " + std::to_string(b.cols()) + "\n";
  for (int r = b.rows(); r >= 1; --r) {
    for (int c = 1; c <= b.cols(); ++c) {
      bool mine = false;
      for (const Cell& x : cs) mine = mine || (x.row == r && x.col == c);
      out += mine ? '@' : (b.filled(r, c) ? '#' : '.');
    }
    out += '\n';
  }
  return out;
}

std::vector<PieceType> parse_pieces(const std::string& text) {
  std::istringstream in(text);
  std::vector<PieceType> out;
  std::string tok;
  while (in >> tok) {
    auto p = parse_piece(tok);
    if (!p) throw ParseError("unknown piece '" + tok + "'");
    out.push_back(*p);
  }
  return out;
}

std::string render_pieces(const std::vector<PieceType>& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += piece_name(p[i]);
  }
  out += '\n';
  return out;
}

std::vector<Trajectory> parse_trajectories(const std::string& text) {
  std::istringstream in(text);
  std::vector<Trajectory> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Trajectory t;
    std::istringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      const auto a = tok.find_first_not_of(" \t");
      const auto z = tok.find_last_not_of(" \t");
      if (a == std::string::npos) throw ParseError("empty move on line " + std::to_string(lineno));
      auto m = parse_move(tok.substr(a, z - a + 1));
      if (!m) throw ParseError("unknown move '" + tok + "' on line " + std::to_string(lineno));
      t.push_back(*m);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string render_trajectories(const std::vector<Trajectory>& t) {
  std::string out;
  for (const Trajectory& tr : t) {
    for (std::size_t i = 0; i < tr.size(); ++i) {
      if (i) out += ',';
      out += move_token(tr[i]);
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace tetris
