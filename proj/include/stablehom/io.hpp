#ifndef STABLEHOM_IO_HPP
#define STABLEHOM_IO_HPP

// Line-oriented definition files for rings, modules and finite complexes.
//
//   ring                          module                      complex
//   characteristic 2              ring R2.ring                lo 0
//   basis 1 x                     dimension 2                 bounded 1 1
//   unit 1 0                      action 1                    term 0
//   product 1 1 = 1 0               1 0                       dimension 1
//   product 1 x = 0 1               0 1                       action 1 ...
//   product x 1 = 0 1             action x                    end
//   product x x = 0 0               0 0                       diff 1
//                                   1 0                         <rows>
//
// '#' starts a comment. Every product of two basis labels must be listed exactly once.
// Action and differential matrices act on column vectors and are given row by row.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stablehom/chaincx.hpp"

namespace stablehom {

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        source_(std::move(source)),
        line_(line),
        column_(column) {}
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string source_;
  std::size_t line_, column_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

class LineReader {
 public:
  LineReader(const std::string& text, std::string source) : source_(std::move(source)) {
    std::istringstream in(text);
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      Line l{no, {}};
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        std::size_t start = i;
        while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        if (i > start) l.tokens.push_back({raw.substr(start, i - start), start + 1});
      }
      if (!l.tokens.empty()) lines_.push_back(std::move(l));
    }
    last_line_ = no;
  }

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) fail(last_line_ + 1, 1, "unexpected end of input");
    return lines_[pos_];
  }
  const Line& next() {
    const Line& l = peek();
    ++pos_;
    return l;
  }

  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& what) const {
    throw ParseError(source_, line, col, what);
  }
  [[noreturn]] void fail(const Line& l, std::size_t tok, const std::string& what) const {
    fail(l.number, tok < l.tokens.size() ? l.tokens[tok].column : 1, what);
  }

  /// Reads a line `keyword args...` and checks the keyword and argument count.
  const Line& expect(const std::string& keyword, std::size_t args) {
    const Line& l = next();
    if (l.tokens[0].text != keyword) fail(l, 0, "expected '" + keyword + "', found '" + l.tokens[0].text + "'");
    if (l.tokens.size() != args + 1)
      fail(l, std::min(l.tokens.size(), args + 1), "'" + keyword + "' takes " + std::to_string(args) + " argument(s)");
    return l;
  }

  long integer(const Line& l, std::size_t tok) const {
    const std::string& s = l.tokens[tok].text;
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(l, tok, "expected an integer, found '" + s + "'");
  }

  Scalar scalar(const Line& l, std::size_t tok, const Field& f) const {
    return f.reduce(integer(l, tok));
  }

  Matrix matrix(std::size_t rows, std::size_t cols, const Field& f) {
    Matrix m(rows, cols, f);
    for (std::size_t r = 0; r < rows; ++r) {
      const Line& l = next();
      if (l.tokens.size() != cols)
        fail(l, std::min(l.tokens.size(), cols), "matrix row needs " + std::to_string(cols) + " entries");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar(l, c, f);
    }
    return m;
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_matrix(std::ostream& out, const Matrix& m, const std::string& indent) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << indent;
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << "\n";
  }
}

inline Module read_module_body(LineReader& in, const AlgebraPtr& alg, std::size_t first_line) {
  const Field& f = alg->field();
  const Line& dl = in.expect("dimension", 1);
  long dim = in.integer(dl, 1);
  if (dim < 0) in.fail(dl, 1, "dimension must be nonnegative");
  std::vector<Matrix> act(alg->dim());
  std::vector<bool> seen(alg->dim(), false);
  for (std::size_t k = 0; k < alg->dim(); ++k) {
    const Line& al = in.expect("action", 1);
    const auto& labels = alg->labels();
    auto it = std::find(labels.begin(), labels.end(), al.tokens[1].text);
    if (it == labels.end()) in.fail(al, 1, "unknown basis label '" + al.tokens[1].text + "'");
    std::size_t b = std::size_t(it - labels.begin());
    if (seen[b]) in.fail(al, 1, "action of '" + *it + "' given twice");
    seen[b] = true;
    act[b] = in.matrix(std::size_t(dim), std::size_t(dim), f);
  }
  Module m(alg, std::size_t(dim), std::move(act));
  if (auto bad = m.check_axioms()) throw ParseError(in.source(), first_line, 1, "module axioms: " + *bad);
  return m;
}

inline void write_module_body(std::ostream& out, const Module& m) {
  out << "dimension " << m.dim() << "\n";
  for (std::size_t b = 0; b < m.algebra()->dim(); ++b) {
    out << "action " << m.algebra()->labels()[b] << "\n";
    write_matrix(out, m.action(b), "  ");
  }
}

struct RingTable {
  Field field;
  std::vector<std::string> labels;
  std::vector<std::vector<Vector>> mul;
  Vector unit;
};

inline RingTable read_ring_table(const std::string& text, const std::string& source) {
  LineReader in(text, source);
  in.expect("ring", 0);
  const Line& cl = in.expect("characteristic", 1);
  long p = in.integer(cl, 1);
  std::optional<Field> field;
  try {
    if (p < 2) throw Error(ErrorKind::InvalidArgument, "");
    field = Field(static_cast<Scalar>(p));
  } catch (const Error&) {
    in.fail(cl, 1, "characteristic must be a prime");
  }
  const Line& bl = in.next();
  if (bl.tokens[0].text != "basis" || bl.tokens.size() < 2) in.fail(bl, 0, "expected 'basis' with at least one label");
  std::vector<std::string> labels;
  for (std::size_t t = 1; t < bl.tokens.size(); ++t) {
    if (std::find(labels.begin(), labels.end(), bl.tokens[t].text) != labels.end())
      in.fail(bl, t, "duplicate basis label '" + bl.tokens[t].text + "'");
    if (bl.tokens[t].text == "=") in.fail(bl, t, "'=' is not a valid label");
    labels.push_back(bl.tokens[t].text);
  }
  const std::size_t d = labels.size();
  auto label_index = [&](const Line& l, std::size_t tok) {
    auto it = std::find(labels.begin(), labels.end(), l.tokens[tok].text);
    if (it == labels.end()) in.fail(l, tok, "unknown basis label '" + l.tokens[tok].text + "'");
    return std::size_t(it - labels.begin());
  };
  const Line& ul = in.expect("unit", d);
  Vector unit(d);
  for (std::size_t k = 0; k < d; ++k) unit[k] = in.scalar(ul, k + 1, *field);
  std::vector<std::vector<Vector>> mul(d, std::vector<Vector>(d));
  std::vector<std::vector<bool>> seen(d, std::vector<bool>(d, false));
  for (std::size_t e = 0; e < d * d; ++e) {
    const Line& pl = in.expect("product", d + 3);
    std::size_t i = label_index(pl, 1), j = label_index(pl, 2);
    if (pl.tokens[3].text != "=") in.fail(pl, 3, "expected '='");
    if (seen[i][j]) in.fail(pl, 1, "product " + labels[i] + "*" + labels[j] + " given twice");
    seen[i][j] = true;
    Vector v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = in.scalar(pl, k + 4, *field);
    mul[i][j] = std::move(v);
  }
  if (!in.done()) in.fail(in.peek(), 0, "trailing content after the multiplication table");
  return {*field, std::move(labels), std::move(mul), std::move(unit)};
}

}  // namespace detail

/// Parses and validates a ring; parse errors throw, an axiom failure is returned.
inline std::pair<AlgebraPtr, std::optional<AxiomFailure>> check_ring_text(const std::string& text,
                                                                         const std::string& source = "<ring>") {
  detail::RingTable t = detail::read_ring_table(text, source);
  return Algebra::try_create(t.field, std::move(t.labels), std::move(t.mul), std::move(t.unit));
}

inline AlgebraPtr parse_ring(const std::string& text, const std::string& source = "<ring>") {
  auto [alg, failure] = check_ring_text(text, source);
  if (failure) throw Error(ErrorKind::AxiomViolation, source + ": " + failure->message);
  return alg;
}

inline std::string write_ring(const Algebra& a) {
  std::ostringstream out;
  out << "ring\ncharacteristic " << a.field().p() << "\nbasis";
  for (auto& l : a.labels()) out << " " << l;
  out << "\nunit";
  for (Scalar s : a.unit()) out << " " << s;
  out << "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      out << "product " << a.labels()[i] << " " << a.labels()[j] << " =";
      for (Scalar s : a.product(i, j)) out << " " << s;
      out << "\n";
    }
  return out.str();
}

struct ParsedModule {
  Module module;
  std::string ring_reference;  // empty when the file has no ring line
};

inline ParsedModule parse_module(const std::string& text, const AlgebraPtr& alg, const std::string& source = "<module>") {
  detail::LineReader in(text, source);
  const detail::Line& head = in.expect("module", 0);
  ParsedModule out;
  if (!in.done() && in.peek().tokens[0].text == "ring") out.ring_reference = in.expect("ring", 1).tokens[1].text;
  out.module = detail::read_module_body(in, alg, head.number);
  if (!in.done()) in.fail(in.peek(), 0, "trailing content after the module");
  return out;
}

inline std::string write_module(const Module& m, const std::string& ring_reference = "") {
  std::ostringstream out;
  out << "module\n";
  if (!ring_reference.empty()) out << "ring " << ring_reference << "\n";
  detail::write_module_body(out, m);
  return out.str();
}

inline AlgebraPtr load_ring(const std::string& path) { return parse_ring(detail::read_file(path), path); }

/// Loads a module; without an explicit ring the file's ring line is resolved next to it.
inline Module load_module(const std::string& path, AlgebraPtr alg = nullptr) {
  std::string text = detail::read_file(path);
  if (!alg) {
    detail::LineReader in(text, path);
    in.expect("module", 0);
    if (in.done() || in.peek().tokens[0].text != "ring")
      throw ParseError(path, 1, 1, "module file names no ring and none was supplied");
    const detail::Line& rl = in.expect("ring", 1);
    std::filesystem::path rp = std::filesystem::path(path).parent_path() / rl.tokens[1].text;
    try {
      alg = load_ring(rp.string());
    } catch (const ParseError& e) {
      throw ParseError(path, rl.number, rl.tokens[1].column, std::string("ring reference: ") + e.what());
    }
  }
  return parse_module(text, alg, path).module;
}

/// A finite complex with its boundedness flags; modules are written inline.
inline std::string write_complex(const Complex& x) {
  std::ostringstream out;
  out << "complex\nlo " << x.lo() << "\nbounded " << x.bounded_below() << " " << x.bounded_above() << "\n";
  for (std::size_t k = 0; k < x.terms().size(); ++k) {
    out << "term " << x.lo() + long(k) << "\n";
    detail::write_module_body(out, x.terms()[k]);
  }
  for (std::size_t k = 0; k < x.diffs().size(); ++k) {
    out << "diff " << x.lo() + long(k) + 1 << "\n";
    detail::write_matrix(out, x.diffs()[k], "  ");
  }
  out << "end\n";
  return out.str();
}

inline Complex parse_complex(const std::string& text, const AlgebraPtr& alg, const std::string& source = "<complex>") {
  detail::LineReader in(text, source);
  in.expect("complex", 0);
  const detail::Line& ll = in.expect("lo", 1);
  long lo = in.integer(ll, 1);
  const detail::Line& bl = in.expect("bounded", 2);
  bool below = in.integer(bl, 1) != 0, above = in.integer(bl, 2) != 0;
  std::vector<Module> terms;
  while (in.peek().tokens[0].text == "term") {
    const detail::Line& tl = in.expect("term", 1);
    if (in.integer(tl, 1) != lo + long(terms.size())) in.fail(tl, 1, "terms must be listed in consecutive degrees");
    terms.push_back(detail::read_module_body(in, alg, tl.number));
  }
  std::vector<Matrix> diffs;
  while (in.peek().tokens[0].text == "diff") {
    const detail::Line& dl = in.expect("diff", 1);
    long n = in.integer(dl, 1);
    if (n != lo + long(diffs.size()) + 1 || terms.size() < diffs.size() + 2)
      in.fail(dl, 1, "differentials must follow the terms in consecutive degrees");
    diffs.push_back(in.matrix(terms[n - lo - 1].dim(), terms[n - lo].dim(), alg->field()));
  }
  const detail::Line& end = in.expect("end", 0);
  if (!terms.empty() && diffs.size() + 1 != terms.size()) in.fail(end, 0, "missing differentials");
  try {
    return Complex(alg, lo, std::move(terms), std::move(diffs), below, above);
  } catch (const Error& e) {
    throw ParseError(source, end.number, 1, e.what());
  }
}

}  // namespace stablehom

#endif  // STABLEHOM_IO_HPP
