#include "pbm/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

enum class Tok {
  Ident,
  Number,   // digits, optionally digits '.' digits (exact decimal)
  Plus,
  Pipe1,
  Pipe2,
  Pipe3,
  Semi,
  Caret,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Dot,
  Slash,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* tokName(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Plus: return "'+'";
    case Tok::Pipe1: return "'|'";
    case Tok::Pipe2: return "'||'";
    case Tok::Pipe3: return "'|||'";
    case Tok::Semi: return "';'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Slash: return "'/'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string text, int c) { out.push_back({k, std::move(text), line, c}); };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    int startCol = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      push(Tok::Ident, s.substr(i, j - i), startCol);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.' && j + 1 < s.size() &&
          std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      push(Tok::Number, s.substr(i, j - i), startCol);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c == '|') {
      size_t j = i;
      while (j < s.size() && s[j] == '|' && j - i < 3) ++j;
      size_t n = j - i;
      push(n == 1 ? Tok::Pipe1 : n == 2 ? Tok::Pipe2 : Tok::Pipe3, s.substr(i, n), startCol);
      col += static_cast<int>(n);
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case ';': k = Tok::Semi; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '/': k = Tok::Slash; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, startCol);
    }
    push(k, std::string(1, c), startCol);
    ++col;
    ++i;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool isKeyword(const std::string& id) {
  return id == "eps" || id == "star" || id == "pstar" || id == "repl" || id == "bang" ||
         id == "pbang" || id == "cp";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  TermPtr run() {
    TermPtr t = parseTerm();
    expect(Tok::End);
    return t;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(size_t ahead = 1) const {
    size_t j = pos_ + ahead;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  bool at(Tok k) const { return cur().kind == k; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = cur();
    std::ostringstream msg;
    msg << "expected " << expected << ", found "
        << (t.kind == Tok::End ? "end of input" : "'" + t.text + "'") << " at " << t.line << ":"
        << t.col;
    throw ParseError(msg.str(), t.line, t.col, expected);
  }

  Token expect(Tok k) {
    if (!at(k)) fail(tokName(k));
    return take();
  }

  Rat parseRat() {
    Token n = expect(Tok::Number);
    if (at(Tok::Slash)) {
      take();
      Token d = expect(Tok::Number);
      if (n.text.find('.') != std::string::npos || d.text.find('.') != std::string::npos)
        throw ParseError("decimal not allowed in fraction", n.line, n.col);
      return ratFromString(n.text + "/" + d.text);
    }
    return ratFromString(n.text);
  }

  unsigned parseNat() {
    Token n = expect(Tok::Number);
    if (n.text.find('.') != std::string::npos)
      throw ParseError("expected natural number", n.line, n.col);
    return static_cast<unsigned>(std::stoul(n.text));
  }

  TermPtr parseTerm() { return parseAlt(); }

  TermPtr parseAlt() {
    TermPtr left = parsePar();
    while (at(Tok::Plus)) {
      take();
      if (at(Tok::LBracket)) {
        take();
        Rat p = parseRat();
        expect(Tok::RBracket);
        left = mkPAlt(p, left, parsePar());
      } else {
        left = mkAlt(left, parsePar());
      }
    }
    return left;
  }

  TermPtr parsePar() {
    TermPtr left = parseSeq();
    for (;;) {
      if (at(Tok::Pipe1)) {
        take();
        left = mkSyncPar(left, parseSeq());
      } else if (at(Tok::Pipe3)) {
        take();
        if (at(Tok::LBracket)) {
          take();
          Rat p = parseRat();
          expect(Tok::RBracket);
          left = mkPPar(p, left, parseSeq());
        } else {
          left = mkInterleave(left, parseSeq());
        }
      } else if (at(Tok::Pipe2)) {
        take();
        expect(Tok::LBrace);
        std::vector<Action> acts;
        if (at(Tok::Ident)) {
          acts.push_back(take().text);
          while (at(Tok::Comma)) {
            take();
            acts.push_back(expect(Tok::Ident).text);
          }
        }
        expect(Tok::RBrace);
        left = mkCspPar(std::move(acts), left, parseSeq());
      } else {
        break;
      }
    }
    return left;
  }

  TermPtr parseSeq() {
    TermPtr left = parsePost();
    while (at(Tok::Semi)) {
      take();
      left = mkSeq(left, parsePost());
    }
    return left;
  }

  TermPtr parsePost() {
    TermPtr t = parseAtom();
    while (at(Tok::Caret)) {
      take();
      if (at(Tok::Ident) && cur().text == "w") {
        take();
        t = mkInfIter(t);
      } else {
        t = mkFinIter(t, parseNat());
      }
    }
    return t;
  }

  std::vector<PrefixBranch> parseBranchList() {
    // '(' already consumed by caller? No: caller checks lookahead only.
    expect(Tok::LParen);
    std::vector<PrefixBranch> branches;
    auto one = [&] {
      expect(Tok::LBracket);
      Rat w = parseRat();
      expect(Tok::RBracket);
      branches.push_back({w, parseTerm()});
    };
    one();
    // At least one '(+)' separator.
    if (!at(Tok::LParen)) fail("'(+)'");
    while (at(Tok::LParen)) {
      take();
      expect(Tok::Plus);
      expect(Tok::RParen);
      one();
    }
    expect(Tok::RParen);
    return branches;
  }

  TermPtr parseAtom() {
    if (at(Tok::Number)) {
      if (cur().text == "0") {
        take();
        return mkStop();
      }
      fail("term");
    }
    if (at(Tok::LParen)) {
      take();
      TermPtr t = parseTerm();
      expect(Tok::RParen);
      return t;
    }
    if (!at(Tok::Ident)) fail("term");
    Token id = take();
    if (id.text == "eps") return mkSkip();
    if (id.text == "star") {
      expect(Tok::LParen);
      TermPtr body = parseTerm();
      expect(Tok::Comma);
      TermPtr exit = parseTerm();
      expect(Tok::RParen);
      return mkKleeneStar(body, exit);
    }
    if (id.text == "pstar") {
      expect(Tok::LParen);
      Rat p = parseRat();
      expect(Tok::Comma);
      TermPtr body = parseTerm();
      expect(Tok::Comma);
      TermPtr exit = parseTerm();
      expect(Tok::RParen);
      return mkPKleeneStar(p, body, exit);
    }
    if (id.text == "repl") {
      expect(Tok::LParen);
      unsigned n = parseNat();
      expect(Tok::Comma);
      TermPtr body = parseTerm();
      expect(Tok::RParen);
      return mkFinRepl(n, body);
    }
    if (id.text == "bang") {
      expect(Tok::LParen);
      TermPtr body = parseTerm();
      expect(Tok::RParen);
      return mkBang(body);
    }
    if (id.text == "pbang") {
      expect(Tok::LParen);
      Rat p = parseRat();
      expect(Tok::Comma);
      TermPtr body = parseTerm();
      expect(Tok::RParen);
      return mkPBang(p, body);
    }
    if (id.text == "cp") {
      expect(Tok::LParen);
      TermPtr body = parseTerm();
      expect(Tok::RParen);
      return mkCopy(body);
    }
    // Action prefix.
    expect(Tok::Dot);
    if (at(Tok::LParen) && peek().kind == Tok::LBracket)
      return mkPrefix(id.text, parseBranchList());
    return mkPrefix(id.text, parseAtom());
  }
};

// Rendering ------------------------------------------------------------

// 0 = atom, 1 = postfix, 2 = seq, 3 = parallel, 4 = alternative
int level(const Term& t) {
  switch (t.op) {
    case Op::FinIter:
    case Op::InfIter:
      return 1;
    case Op::Seq:
      return 2;
    case Op::SyncPar:
    case Op::Interleave:
    case Op::PPar:
    case Op::CspPar:
      return 3;
    case Op::Alt:
    case Op::PAlt:
      return 4;
    default:
      return 0;
  }
}

void renderTo(const TermPtr& t, int maxLevel, std::string& out);

void renderChild(const TermPtr& t, int maxLevel, std::string& out) {
  if (level(*t) > maxLevel) {
    out += '(';
    renderTo(t, 4, out);
    out += ')';
  } else {
    renderTo(t, maxLevel, out);
  }
}

void renderTo(const TermPtr& t, int maxLevel, std::string& out) {
  (void)maxLevel;
  switch (t->op) {
    case Op::Stop:
      out += '0';
      return;
    case Op::Skip:
      out += "eps";
      return;
    case Op::Prefix: {
      out += t->act;
      out += '.';
      if (t->branches.size() == 1) {
        renderChild(t->branches[0].target, 0, out);
      } else {
        out += '(';
        bool first = true;
        for (const auto& br : t->branches) {
          if (!first) out += " (+) ";
          first = false;
          out += '[';
          out += ratToString(br.weight);
          out += ']';
          renderTo(br.target, 4, out);
        }
        out += ')';
      }
      return;
    }
    case Op::Seq:
      renderChild(t->a, 2, out);
      out += ';';
      renderChild(t->b, 1, out);
      return;
    case Op::Alt:
      renderChild(t->a, 4, out);
      out += " + ";
      renderChild(t->b, 3, out);
      return;
    case Op::PAlt:
      renderChild(t->a, 4, out);
      out += " +[" + ratToString(t->prob) + "] ";
      renderChild(t->b, 3, out);
      return;
    case Op::SyncPar:
      renderChild(t->a, 3, out);
      out += " | ";
      renderChild(t->b, 2, out);
      return;
    case Op::Interleave:
      renderChild(t->a, 3, out);
      out += " ||| ";
      renderChild(t->b, 2, out);
      return;
    case Op::PPar:
      renderChild(t->a, 3, out);
      out += " |||[" + ratToString(t->prob) + "] ";
      renderChild(t->b, 2, out);
      return;
    case Op::CspPar: {
      renderChild(t->a, 3, out);
      out += " ||{";
      bool first = true;
      for (const auto& a : t->syncSet) {
        if (!first) out += ',';
        first = false;
        out += a;
      }
      out += "} ";
      renderChild(t->b, 2, out);
      return;
    }
    case Op::FinIter:
      renderChild(t->a, 1, out);
      out += '^';
      out += std::to_string(t->count);
      return;
    case Op::InfIter:
      renderChild(t->a, 1, out);
      out += "^w";
      return;
    case Op::KleeneStar:
      out += "star(";
      renderTo(t->a, 4, out);
      out += ", ";
      renderTo(t->b, 4, out);
      out += ')';
      return;
    case Op::PKleeneStar:
      out += "pstar(" + ratToString(t->prob) + ", ";
      renderTo(t->a, 4, out);
      out += ", ";
      renderTo(t->b, 4, out);
      out += ')';
      return;
    case Op::FinRepl:
      out += "repl(" + std::to_string(t->count) + ", ";
      renderTo(t->a, 4, out);
      out += ')';
      return;
    case Op::Bang:
      out += "bang(";
      renderTo(t->a, 4, out);
      out += ')';
      return;
    case Op::PBang:
      out += "pbang(" + ratToString(t->prob) + ", ";
      renderTo(t->a, 4, out);
      out += ')';
      return;
    case Op::Copy:
      out += "cp(";
      renderTo(t->a, 4, out);
      out += ')';
      return;
  }
}

}  // namespace

TermPtr parseTerm(const std::string& text) { return Parser(text).run(); }

std::string render(const TermPtr& t) {
  std::string out;
  renderTo(t, 4, out);
  return out;
}

}  // namespace pbm
