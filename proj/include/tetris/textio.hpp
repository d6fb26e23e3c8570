#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tetris/board.hpp"
#include "tetris/game.hpp"
#include "tetris/piece.hpp"

namespace tetris {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "rows cols" then rows top to bottom of '#' and '.'.
Board parse_board(const std::string& text);
std::string render_board(const Board& b);
// Board with one piece drawn as '@'.
std::string render_board(const Board& b, const PieceState& s);

std::vector<PieceType> parse_pieces(const std::string& text);
std::string render_pieces(const std::vector<PieceType>& p);

std::vector<Trajectory> parse_trajectories(const std::string& text);
std::string render_trajectories(const std::vector<Trajectory>& t);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace tetris
