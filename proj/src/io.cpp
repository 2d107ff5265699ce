#include "ksub/io.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

namespace ksub {

namespace {

struct Line {
  long number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  long number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string token;
    while (ls >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

long parse_long(const std::string& token, long line) {
  try {
    std::size_t used = 0;
    const long value = std::stol(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + token + "'", line);
  }
}

// Header pair "k=<k> n=<n>".
std::pair<int, int> parse_dims(const Line& line) {
  if (line.tokens.size() != 2 || line.tokens[0].rfind("k=", 0) != 0 ||
      line.tokens[1].rfind("n=", 0) != 0)
    throw ParseError("expected 'k=<k> n=<n>'", line.number);
  const long k = parse_long(line.tokens[0].substr(2), line.number);
  const long n = parse_long(line.tokens[1].substr(2), line.number);
  if (k < 1 || n < 1) throw ParseError("k and n must be >= 1", line.number);
  return {static_cast<int>(k), static_cast<int>(n)};
}

void expect_header(const std::vector<Line>& lines, const std::string& tag) {
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != tag ||
      lines[0].tokens[1] != "1")
    throw ParseError("expected header '" + tag + " 1'", lines.empty() ? 1 : lines[0].number);
}

// Reads `width` labeling tokens and one value from a payload line.
std::pair<std::uint64_t, Rational> parse_value_line(const Line& line, int k,
                                                    int width) {
  if (line.tokens.size() != static_cast<std::size_t>(width) + 1)
    throw ParseError("expected " + std::to_string(width) +
                     " labeling tokens and a value", line.number);
  std::uint64_t index = 0;
  for (int i = 0; i < width; ++i) {
    const long token = parse_long(line.tokens[static_cast<std::size_t>(i)], line.number);
    if (token < 0 || token > k)
      throw ParseError("labeling token " + std::to_string(token) +
                       " out of range 0.." + std::to_string(k), line.number);
    index = index * (static_cast<std::uint64_t>(k) + 1) + static_cast<std::uint64_t>(token);
  }
  return {index, parse_rational(line.tokens.back(), line.number)};
}

std::string index_tokens(int k, int width, std::uint64_t index) {
  return labeling_from_index(k, width, index).to_string();
}

}  // namespace

ValuedFunction parse_table(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  expect_header(lines, "ksub");
  if (lines.size() < 2) throw ParseError("missing 'k= n=' line", 1);
  const auto [k, n] = parse_dims(lines[1]);
  const std::uint64_t count = labeling_count(k, n);

  std::vector<std::optional<Rational>> values(count);
  for (std::size_t li = 2; li < lines.size(); ++li) {
    const auto [index, value] = parse_value_line(lines[li], k, n);
    if (values[index].has_value())
      throw ParseError("duplicate labeling " + index_tokens(k, n, index),
                       lines[li].number);
    values[index] = value;
  }
  std::vector<Rational> table;
  table.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!values[i].has_value())
      throw ParseError("missing labeling " + index_tokens(k, n, i));
    table.push_back(*values[i]);
  }
  return ValuedFunction::dense(k, n, std::move(table));
}

ValuedFunction parse_sum(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  expect_header(lines, "ksum");
  if (lines.size() < 2) throw ParseError("missing 'k= n=' line", 1);
  const auto [k, n] = parse_dims(lines[1]);

  std::vector<ValuedFunction::Term> terms;
  std::size_t li = 2;
  while (li < lines.size()) {
    const Line& head = lines[li];
    if (head.tokens[0] != "term")
      throw ParseError("expected 'term <arity> <coords...>'", head.number);
    if (head.tokens.size() < 2)
      throw ParseError("term line needs an arity", head.number);
    const long arity = parse_long(head.tokens[1], head.number);
    if (arity < 1 || arity > n)
      throw ParseError("term arity must be in 1.." + std::to_string(n), head.number);
    if (head.tokens.size() != static_cast<std::size_t>(arity) + 2)
      throw ParseError("term line needs exactly " + std::to_string(arity) +
                       " coordinates", head.number);
    ValuedFunction::Term term;
    for (long a = 0; a < arity; ++a) {
      const long coord = parse_long(head.tokens[static_cast<std::size_t>(a) + 2],
                                    head.number);
      if (coord < 1 || coord > n)
        throw ParseError("scope coordinate " + std::to_string(coord) +
                         " out of range 1.." + std::to_string(n), head.number);
      term.scope.push_back(static_cast<int>(coord) - 1);
    }
    std::vector<int> sorted(term.scope);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError("scope repeats a coordinate", head.number);

    const std::uint64_t local = labeling_count(k, static_cast<int>(arity));
    std::vector<std::optional<Rational>> values(local);
    const auto first_missing = [&values, local]() {
      for (std::uint64_t i = 0; i < local; ++i)
        if (!values[i].has_value()) return i;
      return local;
    };
    ++li;
    for (std::uint64_t row = 0; row < local; ++row, ++li) {
      if (li >= lines.size())
        throw ParseError("term table truncated; missing labeling " +
                         index_tokens(k, static_cast<int>(arity), first_missing()));
      const auto [index, value] =
          parse_value_line(lines[li], k, static_cast<int>(arity));
      if (values[index].has_value())
        throw ParseError("duplicate labeling " +
                         index_tokens(k, static_cast<int>(arity), index),
                         lines[li].number);
      values[index] = value;
    }
    term.table.reserve(local);
    for (std::uint64_t i = 0; i < local; ++i) term.table.push_back(*values[i]);
    terms.push_back(std::move(term));
  }
  return ValuedFunction::sum_of_terms(k, n, std::move(terms));
}

ValuedFunction parse_instance(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty instance file", 1);
  const std::string& tag = lines[0].tokens[0];
  if (tag == "ksub") return parse_table(text);
  if (tag == "ksum") return parse_sum(text);
  throw ParseError("unknown format tag '" + tag + "'", lines[0].number);
}

std::string serialize_table(const ValuedFunction& f, std::uint64_t budget) {
  std::ostringstream os;
  os << "ksub 1\n";
  os << "k=" << f.k() << " n=" << f.n() << '\n';
  const std::uint64_t count = labeling_count(f.k(), f.n(), budget);
  for (std::uint64_t i = 0; i < count; ++i) {
    os << labeling_from_index(f.k(), f.n(), i).to_string() << ' '
       << to_string(f.evaluate_index(i)) << '\n';
  }
  return os.str();
}

std::string serialize_sum(const ValuedFunction& f) {
  if (f.is_dense())
    throw std::invalid_argument("serialize_sum needs a sum-of-terms backend");
  std::ostringstream os;
  os << "ksum 1\n";
  os << "k=" << f.k() << " n=" << f.n() << '\n';
  for (const ValuedFunction::Term& term : f.terms()) {
    os << "term " << term.scope.size();
    for (int coord : term.scope) os << ' ' << coord + 1;
    os << '\n';
    const int arity = static_cast<int>(term.scope.size());
    for (std::uint64_t i = 0; i < term.table.size(); ++i) {
      os << labeling_from_index(f.k(), arity, i).to_string() << ' '
         << to_string(term.table[i]) << '\n';
    }
  }
  return os.str();
}

std::string serialize_instance(const ValuedFunction& f, std::uint64_t budget) {
  return f.is_dense() ? serialize_table(f, budget) : serialize_sum(f);
}

std::string serialize_signed(const SignedVector& v) {
  std::ostringstream os;
  for (int i = 0; i < v.n(); ++i) {
    if (i > 0) os << ' ';
    os << to_string(v.magnitude(i));
  }
  os << '\n';
  for (int i = 0; i < v.n(); ++i) {
    if (i > 0) os << ' ';
    os << v.leaf(i).leaf_index();
  }
  os << '\n';
  return os.str();
}

std::string serialize_full(const FullVector& x) {
  std::ostringstream os;
  for (int i = 0; i < x.n(); ++i) {
    for (int l = 1; l <= x.k(); ++l) {
      if (l > 1) os << ' ';
      os << to_string(x.at(i, l));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace ksub
