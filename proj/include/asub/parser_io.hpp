#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "asub/checker.hpp"
#include "asub/machine.hpp"

namespace asub {

// Machine file format:
//
//   # comment
//   machine server
//   initial q1
//   q1 ? nd q2
//   q2 ! ok q1
//
// Identifiers are [A-Za-z0-9_]+. A file may hold several machine blocks.

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t line, std::size_t col, const std::string& msg);
    std::size_t line;
    std::size_t col;
    std::string message;
};

std::vector<MachineDescription> parse_descriptions(std::string_view text);
// Parses and validates every block. Throws SyntaxError or ValidationError.
std::vector<Machine> parse_machines(std::string_view text);
// Exactly one block expected.
Machine parse_machine(std::string_view text);
std::vector<Machine> load_machines(const std::filesystem::path& file);

std::string serialize(const Machine& m);

// Graphviz renderings. Output depends only on the arguments.
std::string tree_to_dot(const DirectionReport& r);
std::string candidates_to_dot(const DirectionReport& r);
std::string system_to_dot(const EquationSystem& s, const std::string& graph_name);

}  // namespace asub
