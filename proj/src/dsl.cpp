#include "cantor/dsl.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

constexpr std::uint64_t kMaxExpansion = 4096;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Code parse() {
    Code c = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("end of input");
    return c;
  }

 private:
  Code expr() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string word = identifier();
    if (word == "cyl") return cylinder();
    if (word == "empty") return Code::leaf(ClopenSet::empty());
    if (word == "full") return Code::leaf(ClopenSet::full());
    if (word == "union" || word == "inter") {
      std::vector<Code> children = list();
      return word == "union" ? Code::union_of(std::move(children)) : Code::inter_of(std::move(children));
    }
    if (word == "compl") {
      expect('(');
      Code c = expr();
      expect(')');
      return Code::complement(std::move(c));
    }
    if (word == "reloc") {
      expect('(');
      const std::uint64_t n = nat();
      expect(',');
      Code c = expr();
      expect(')');
      return relocate(n, normalize_demorgan(c));
    }
    if (word == "bigunion") return bigunion();
    pos_ = start;
    fail("\"cyl\", \"empty\", \"full\", \"union\", \"inter\", \"compl\", \"reloc\" or \"bigunion\"");
  }

  Code cylinder() {
    expect('(');
    std::vector<Bits> gens{bits()};
    while (accept(',')) gens.push_back(bits());
    expect(')');
    return Code::leaf(prefix_free_normalize(gens));
  }

  std::vector<Code> list() {
    expect('(');
    std::vector<Code> out;
    if (accept(')')) return out;
    out.push_back(expr());
    while (true) {
      skip_ws();
      if (accept(',')) {
        out.push_back(expr());
        continue;
      }
      if (accept(')')) return out;
      fail("\",\" or \")\"");
    }
  }

  Code bigunion() {
    expect('(');
    skip_ws();
    const std::string var = identifier();
    if (var.empty()) fail("identifier");
    expect(',');
    const std::uint64_t lo = nat();
    expect(',');
    const std::uint64_t hi = nat();
    expect(',');
    if (hi >= lo && hi - lo >= kMaxExpansion) {
      fail("a range of at most " + std::to_string(kMaxExpansion) + " values");
    }
    const std::size_t body = pos_;
    const auto prev = env_.find(var);
    const bool shadowing = prev != env_.end();
    const std::uint64_t saved = shadowing ? prev->second : 0;
    std::vector<Code> children;
    env_[var] = lo;
    expr();  // syntax check even when the range is empty
    const std::size_t end = pos_;
    for (std::uint64_t v = lo; v <= hi && hi >= lo; ++v) {
      env_[var] = v;
      pos_ = body;
      children.push_back(expr());
    }
    pos_ = end;
    if (shadowing) {
      env_[var] = saved;
    } else {
      env_.erase(var);
    }
    expect(')');
    return Code::union_of(std::move(children));
  }

  std::string identifier() {
    std::string out;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      out.push_back(text_[pos_++]);
    }
    return out;
  }

  Bits bits() {
    skip_ws();
    std::string out;
    while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) out.push_back(text_[pos_++]);
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("bit");
    return Bits(out);
  }

  std::uint64_t nat() {
    skip_ws();
    if (accept('$')) {
      const std::size_t at = pos_;
      const std::string var = identifier();
      auto it = env_.find(var);
      if (it == env_.end()) {
        pos_ = at;
        fail("a variable bound by an enclosing bigunion");
      }
      return it->second;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("natural number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - digit) / 10) fail("a smaller natural number");
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("\"") + c + "\"");
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    const std::string what =
        pos_ >= text_.size() ? "unexpected end of input" : std::string("unexpected '") + text_[pos_] + "'";
    throw ParseError(what, line, col, expected);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::uint64_t> env_;
};

void print_rec(const Code& c, std::string& out) {
  switch (c.kind()) {
    case NodeKind::Leaf: {
      const ClopenSet& s = c.label();
      if (s.is_empty()) {
        out += "empty";
      } else if (s.is_full()) {
        out += "full";
      } else {
        out += "cyl(";
        for (std::size_t i = 0; i < s.generators().size(); ++i) {
          if (i > 0) out += ',';
          out += s.generators()[i].str();
        }
        out += ')';
      }
      return;
    }
    case NodeKind::Union:
    case NodeKind::Intersection:
    case NodeKind::Complement: {
      out += kind_name(c.kind());
      out += '(';
      for (std::size_t i = 0; i < c.children().size(); ++i) {
        if (i > 0) out += ',';
        print_rec(c.children()[i].code, out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace

Code parse_dsl(std::string_view text) { return Parser(text).parse(); }

std::string print_dsl(const Code& c) {
  std::string out;
  print_rec(c, out);
  return out;
}

}  // namespace cantor
