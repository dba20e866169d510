#include <cctype>
#include <map>
#include <sstream>

#include "bowlab/bowmodel/dsl.hpp"

namespace bowlab::bowmodel {

SyntaxError::SyntaxError(const std::string& msg, int line, int column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Int, LBrace, RBrace, LBracket, RBracket, Comma, Semi, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  Token next() {
    skip_blank();
    if (pos_ >= s_.size()) return {Tok::End, "", line_, col_};
    const int line = line_, col = col_;
    const char c = s_[pos_];
    auto single = [&](Tok k) {
      advance();
      return Token{k, std::string(1, c), line, col};
    };
    switch (c) {
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case ',': return single(Tok::Comma);
      case ';': return single(Tok::Semi);
      case '-':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
          advance();
          advance();
          return {Tok::Arrow, "->", line, col};
        }
        throw SyntaxError("expected '->'", line, col);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        digits += s_[pos_];
        advance();
      }
      return {Tok::Int, digits, line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        id += s_[pos_];
        advance();
      }
      return {Tok::Ident, id, line, col};
    }
    throw SyntaxError("unexpected character", line, col);
  }

 private:
  void advance() {
    const unsigned char c = static_cast<unsigned char>(s_[pos_++]);
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++col_;  // count code points, not UTF-8 continuation bytes
    }
  }

  void skip_blank() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

  BowDiagram parse() {
    expect_keyword("bow");
    expect(Tok::LBrace);
    Bow bow;
    std::vector<std::vector<Index>> dims;
    std::map<std::string, std::size_t> index;
    struct PendingEdge {
      Token tail, head;
    };
    std::vector<PendingEdge> pending;
    while (tok_.kind != Tok::RBrace) {
      if (tok_.kind != Tok::Ident) fail("expected 'wavy', 'edge' or '}'");
      if (tok_.text == "wavy") {
        take();
        Token name = expect(Tok::Ident);
        if (index.count(name.text))
          throw DuplicateInterval("line " + std::to_string(name.line) + ", column " +
                                  std::to_string(name.column) + ": duplicate interval '" +
                                  name.text + "'");
        expect(Tok::LBracket);
        if (tok_.kind == Tok::RBracket)
          throw EmptySegmentList("line " + std::to_string(tok_.line) + ", column " +
                                 std::to_string(tok_.column) + ": interval '" + name.text +
                                 "' has no segments");
        std::vector<Index> list{integer()};
        while (tok_.kind == Tok::Comma) {
          take();
          list.push_back(integer());
        }
        expect(Tok::RBracket);
        expect(Tok::Semi);
        index[name.text] = bow.intervals.size();
        bow.intervals.push_back(name.text);
        dims.push_back(std::move(list));
      } else if (tok_.text == "edge") {
        take();
        Token tail = expect(Tok::Ident);
        expect(Tok::Arrow);
        Token head = expect(Tok::Ident);
        expect(Tok::Semi);
        pending.push_back({tail, head});
      } else {
        fail("expected 'wavy', 'edge' or '}'");
      }
    }
    take();
    if (tok_.kind != Tok::End) fail("trailing input after '}'");
    for (const auto& e : pending) {
      for (const Token* t : {&e.tail, &e.head})
        if (!index.count(t->text))
          throw UnknownIntervalInEdge("line " + std::to_string(t->line) + ", column " +
                                      std::to_string(t->column) + ": unknown interval '" +
                                      t->text + "'");
      bow.edges.push_back({index[e.tail.text], index[e.head.text]});
    }
    return BowDiagram(std::move(bow), std::move(dims));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + ", found " + describe(tok_.kind) +
                          (tok_.text.empty() ? "" : " '" + tok_.text + "'"),
                      tok_.line, tok_.column);
  }

  Token take() {
    Token t = tok_;
    tok_ = lex_.next();
    return t;
  }

  Token expect(Tok k) {
    if (tok_.kind != k) fail(std::string("expected ") + describe(k));
    return take();
  }

  void expect_keyword(const char* kw) {
    if (tok_.kind != Tok::Ident || tok_.text != kw) fail(std::string("expected '") + kw + "'");
    take();
  }

  Index integer() {
    Token t = expect(Tok::Int);
    if (t.text.size() > 9) throw SyntaxError("integer too large", t.line, t.column);
    return static_cast<Index>(std::stol(t.text));
  }

  Lexer lex_;
  Token tok_{Tok::End, "", 1, 1};
};

}  // namespace

BowDiagram parse_bow_diagram(std::string_view text) { return Parser(text).parse(); }

std::string serialize(const BowDiagram& d) {
  std::ostringstream out;
  out << "bow {\n";
  for (std::size_t s = 0; s < d.interval_count(); ++s) {
    out << "  wavy " << d.interval_name(s) << " [";
    const auto& list = d.seg_dims()[s];
    for (std::size_t j = 0; j < list.size(); ++j) out << (j ? ", " : "") << list[j];
    out << "];\n";
  }
  for (std::size_t e = 0; e < d.edge_count(); ++e)
    out << "  edge " << d.interval_name(d.edge(e).tail) << " -> "
        << d.interval_name(d.edge(e).head) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace bowlab::bowmodel
