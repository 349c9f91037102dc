#include "oad/io.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace oad {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  enum Kind { kWord, kInt, kPunct, kRange, kEnd } kind;
  std::string text;
  int value = 0;
  int column = 0;
};

class LineLexer {
 public:
  LineLexer(std::string_view line, int number) : line_(line), number_(number) {}

  std::vector<Token> Tokens() {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line_.size()) {
      const char c = line_[i];
      const int column = static_cast<int>(i) + 1;
      if (c == '#') break;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < line_.size() &&
               (std::isalnum(static_cast<unsigned char>(line_[j])) || line_[j] == '_')) {
          ++j;
        }
        out.push_back({Token::kWord, std::string(line_.substr(i, j - i)), 0, column});
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        size_t j = i + 1;
        while (j < line_.size() && std::isdigit(static_cast<unsigned char>(line_[j]))) ++j;
        int value = 0;
        const auto res = std::from_chars(line_.data() + i, line_.data() + j, value);
        if (res.ec != std::errc() || res.ptr != line_.data() + j) {
          throw ParseError(number_, column, "bad integer");
        }
        out.push_back({Token::kInt, std::string(line_.substr(i, j - i)), value, column});
        i = j;
      } else if (c == '.' && i + 1 < line_.size() && line_[i + 1] == '.') {
        out.push_back({Token::kRange, "..", 0, column});
        i += 2;
      } else if (c == '[' || c == ']' || c == '{' || c == '}' || c == '(' ||
                 c == ')' || c == ',') {
        out.push_back({Token::kPunct, std::string(1, c), 0, column});
        ++i;
      } else {
        throw ParseError(number_, column, std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back({Token::kEnd, "end of line", 0, static_cast<int>(line_.size()) + 1});
    return out;
  }

 private:
  std::string_view line_;
  int number_;
};

class Parser {
 public:
  InstanceFile Parse(std::string_view text) {
    int number = 0;
    size_t start = 0;
    while (start <= text.size()) {
      size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++number;
      line_ = number;
      tokens_ = LineLexer(line, number).Tokens();
      pos_ = 0;
      if (Peek().kind != Token::kEnd) Statement();
      if (end == text.size()) break;
      start = end + 1;
    }
    if (!saw_values_) throw ParseError(number, 1, "missing 'values' declaration");
    return std::move(file_);
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  Token Next() { return tokens_[pos_++]; }

  [[noreturn]] void Fail(const Token& at, const std::string& message) const {
    throw ParseError(line_, at.column, message);
  }

  void Expect(Token::Kind kind, const std::string& text) {
    const Token t = Next();
    if (t.kind != kind || (!text.empty() && t.text != text)) {
      Fail(t, "expected '" + text + "', found '" + t.text + "'");
    }
  }

  int Int() {
    const Token t = Next();
    if (t.kind != Token::kInt) Fail(t, "expected an integer, found '" + t.text + "'");
    return t.value;
  }

  // Internal value of a file value.
  int Value(const Token& at, int v) const {
    if (v < lo_ || v > hi_) {
      Fail(at, "value " + std::to_string(v) + " outside " + std::to_string(lo_) +
                   ".." + std::to_string(hi_));
    }
    return v - file_.offset;
  }

  VarId Var() {
    const Token t = Next();
    if (t.kind != Token::kWord) Fail(t, "expected a variable name, found '" + t.text + "'");
    const auto it = ids_.find(t.text);
    if (it == ids_.end()) Fail(t, "unknown variable '" + t.text + "'");
    return it->second;
  }

  void EndOfLine() {
    if (Peek().kind != Token::kEnd) Fail(Peek(), "unexpected '" + Peek().text + "'");
  }

  void Statement() {
    const Token head = Next();
    if (head.kind != Token::kWord) Fail(head, "expected a declaration, found '" + head.text + "'");
    if (head.text == "values") {
      if (saw_values_) Fail(head, "'values' declared twice");
      lo_ = Int();
      Expect(Token::kRange, "..");
      const Token at = Peek();
      hi_ = Int();
      if (hi_ < lo_) Fail(at, "empty value range");
      file_.offset = lo_ - 1;
      file_.problem.max_value = hi_ - lo_ + 1;
      saw_values_ = true;
      EndOfLine();
      return;
    }
    if (!saw_values_) Fail(head, "'values' must come first");
    if (head.text == "var") {
      VarDecl();
    } else if (head.text == "alldifferent") {
      AllDifferent c;
      while (Peek().kind != Token::kEnd) c.scope.push_back(Var());
      Checked(head, Constraint{std::move(c)});
    } else if (head.text == "overlapping_alldifferent") {
      OverlappingAllDifferent c;
      c.s = VarList();
      c.t = VarList();
      EndOfLine();
      Checked(head, Constraint{std::move(c)});
    } else if (head.text == "less_than") {
      const VarId lhs = Var();
      const VarId rhs = Var();
      EndOfLine();
      Checked(head, Constraint{LessThan{lhs, rhs}});
    } else {
      Fail(head, "unknown declaration '" + head.text + "'");
    }
  }

  std::vector<VarId> VarList() {
    Expect(Token::kPunct, "(");
    std::vector<VarId> out;
    while (Peek().kind == Token::kWord) out.push_back(Var());
    Expect(Token::kPunct, ")");
    return out;
  }

  void Checked(const Token& head, Constraint c) {
    Problem probe;
    probe.max_value = file_.problem.max_value;
    probe.names = file_.problem.names;
    probe.domains = file_.problem.domains;
    probe.constraints.push_back(c);
    try {
      probe.Validate();
    } catch (const InstanceError& e) {
      Fail(head, e.what());
    }
    file_.problem.constraints.push_back(std::move(c));
  }

  void VarDecl() {
    const Token name = Next();
    if (name.kind != Token::kWord) Fail(name, "expected a variable name");
    if (ids_.count(name.text)) Fail(name, "variable '" + name.text + "' declared twice");
    const Token open = Next();
    Domain dom;
    if (open.kind == Token::kPunct && open.text == "[") {
      const Token at_lo = Peek();
      const int lo = Value(at_lo, Int());
      Expect(Token::kRange, "..");
      const Token at_hi = Peek();
      const int hi = Value(at_hi, Int());
      if (hi < lo) Fail(at_hi, "interval upper bound below lower bound");
      Expect(Token::kPunct, "]");
      dom = Interval{lo, hi};
    } else if (open.kind == Token::kPunct && open.text == "{") {
      ValueSet set(file_.problem.max_value);
      if (!(Peek().kind == Token::kPunct && Peek().text == "}")) {
        while (true) {
          const Token at = Peek();
          const int v = Value(at, Int());
          if (set.Contains(v)) Fail(at, "value listed twice");
          set.Insert(v);
          if (Peek().kind == Token::kPunct && Peek().text == ",") {
            Next();
            continue;
          }
          break;
        }
      }
      Expect(Token::kPunct, "}");
      dom = std::move(set);
    } else {
      Fail(open, "expected '[' or '{', found '" + open.text + "'");
    }
    EndOfLine();
    ids_[name.text] = file_.problem.AddVar(name.text, std::move(dom));
  }

  InstanceFile file_;
  std::map<std::string, VarId> ids_;
  bool saw_values_ = false;
  int lo_ = 0;
  int hi_ = 0;
  int line_ = 0;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

InstanceFile ParseInstance(std::string_view text) { return Parser().Parse(text); }

InstanceFile ReadInstanceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

std::string FormatDomain(const Domain& domain, int offset) {
  if (const auto* iv = std::get_if<Interval>(&domain)) {
    return "[" + std::to_string(iv->lb + offset) + ".." + std::to_string(iv->ub + offset) + "]";
  }
  std::string out = "{";
  bool first = true;
  for (int v : std::get<ValueSet>(domain).Values()) {
    if (!first) out += ",";
    out += std::to_string(v + offset);
    first = false;
  }
  return out + "}";
}

std::string SerializeInstance(const InstanceFile& file) {
  const Problem& p = file.problem;
  auto name = [&](VarId v) { return p.names[Index(v)]; };
  std::ostringstream out;
  out << "values " << file.offset + 1 << ".." << file.offset + p.max_value << "\n";
  for (int i = 0; i < p.num_vars(); ++i) {
    out << "var " << p.names[i] << " " << FormatDomain(p.domains[i], file.offset) << "\n";
  }
  for (const Constraint& c : p.constraints) {
    if (const auto* ad = std::get_if<AllDifferent>(&c)) {
      out << "alldifferent";
      for (VarId v : ad->scope) out << " " << name(v);
    } else if (const auto* ov = std::get_if<OverlappingAllDifferent>(&c)) {
      out << "overlapping_alldifferent (";
      for (size_t k = 0; k < ov->s.size(); ++k) out << (k ? " " : "") << name(ov->s[k]);
      out << ") (";
      for (size_t k = 0; k < ov->t.size(); ++k) out << (k ? " " : "") << name(ov->t[k]);
      out << ")";
    } else {
      const auto& lt = std::get<LessThan>(c);
      out << "less_than " << name(lt.lhs) << " " << name(lt.rhs);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace oad
