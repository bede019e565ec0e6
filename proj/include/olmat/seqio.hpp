#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace olmat {

struct Read {
  std::size_t id = 0;
  std::string name;
  std::string seq;

  std::size_t len() const { return seq.size(); }
  bool operator==(const Read&) const = default;
};

enum class Strand : bool { Forward = false, Reverse = true };

struct CanonicalForm {
  std::string seq;
  Strand strand = Strand::Forward;
};

/// Reads a FASTA file. Sequence lines are concatenated and uppercased; ids
/// follow file order. The record name is the first whitespace-delimited token
/// of the header line.
std::vector<Read> parse_fasta(const std::filesystem::path& path);
std::vector<Read> parse_fasta(std::istream& in);

void write_fasta(std::ostream& out, const std::vector<Read>& reads,
                 std::size_t line_width = 80);

bool is_acgt(char c);
char complement(char c);

/// Throws std::invalid_argument on any symbol outside {A,C,G,T}.
std::string reverse_complement(std::string_view s);

/// Lexicographic minimum of s and its reverse complement. A palindromic
/// sequence keeps the forward strand.
CanonicalForm canonical(std::string_view s);

}  // namespace olmat
