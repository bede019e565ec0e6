#include "olmat/seqio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace olmat {

namespace {

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::vector<Read> parse_fasta(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open FASTA file: " + path.string());
  }
  return parse_fasta(in);
}

std::vector<Read> parse_fasta(std::istream& in) {
  std::vector<Read> reads;
  std::string line;
  std::size_t line_no = 0;
  bool open = false;

  auto close_record = [&]() {
    if (open && reads.back().seq.empty()) {
      throw std::runtime_error("FASTA record '" + reads.back().name +
                               "' has an empty sequence");
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim_right(line);
    if (view.empty() || is_blank(view)) continue;

    if (view.front() == '>') {
      close_record();
      view.remove_prefix(1);
      auto end = view.find_first_of(" \t");
      Read r;
      r.id = reads.size();
      r.name = std::string(view.substr(0, end));
      reads.push_back(std::move(r));
      open = true;
      continue;
    }
    if (!open) {
      throw std::runtime_error("FASTA line " + std::to_string(line_no) +
                               ": expected '>' before sequence data");
    }
    std::string& seq = reads.back().seq;
    for (char c : view) {
      seq.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  close_record();
  return reads;
}

void write_fasta(std::ostream& out, const std::vector<Read>& reads,
                 std::size_t line_width) {
  for (const Read& r : reads) {
    out << '>' << r.name << '\n';
    for (std::size_t i = 0; i < r.seq.size(); i += line_width) {
      out << std::string_view(r.seq).substr(i, line_width) << '\n';
    }
  }
}

bool is_acgt(char c) {
  return c == 'A' || c == 'C' || c == 'G' || c == 'T';
}

char complement(char c) {
  switch (c) {
    case 'A': return 'T';
    case 'C': return 'G';
    case 'G': return 'C';
    case 'T': return 'A';
    default:
      throw std::invalid_argument(std::string("not a DNA base: '") + c + "'");
  }
}

std::string reverse_complement(std::string_view s) {
  std::string out(s.size(), 'N');
  std::transform(s.rbegin(), s.rend(), out.begin(), complement);
  return out;
}

CanonicalForm canonical(std::string_view s) {
  std::string rc = reverse_complement(s);
  if (rc < s) return {std::move(rc), Strand::Reverse};
  return {std::string(s), Strand::Forward};
}

}  // namespace olmat
