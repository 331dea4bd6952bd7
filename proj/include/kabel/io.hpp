#pragma once

#include "kabel/automaton.hpp"
#include "kabel/linrep.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kabel {

/// Text format:
///   tracks m
///   alphabet 0..d-1        (one per track, optionally followed by)
///   numeration <name>
///   initial <id>
///   state <id> [output <v>] [accepting]
///   trans <id> (<d1,...,dm>) -> <id>
/// Automata whose outputs are all 0/1 are written with `accepting` flags,
/// others with explicit outputs.
void write_automaton(std::ostream& os, const Automaton& a);
Automaton read_automaton(std::istream& is);

/// Same header, then `dimension d`, `lambda`, `gamma` and one `mu (digits)`
/// block per tuple letter whose rows are `row i j:p/q ...` (sparse, exact).
void write_linrep(std::ostream& os, const LinRep& r);
LinRep read_linrep(std::istream& is);

void write_dot(std::ostream& os, const Automaton& a);

/// Rows k, columns n, one integer per cell.
void write_grid(std::ostream& os, const std::vector<std::vector<std::int64_t>>& grid);
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::int64_t>>& rows);

enum class Format { Native, Dot, Csv, Grid };
/// Throws UnknownFormat.
Format parse_format(const std::string& name);

void save_automaton(const std::string& path, const Automaton& a);
Automaton load_automaton(const std::string& path);
void save_linrep(const std::string& path, const LinRep& r);
LinRep load_linrep(const std::string& path);

} // namespace kabel
