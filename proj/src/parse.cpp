#include "recmu/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "recmu/error.hpp"

namespace recmu {

namespace {

enum class Tok {
  kIdent,
  kArrow,
  kTilde,
  kLParen,
  kRParen,
  kLBrack,
  kRBrack,
  kLambda,
  kMu,
  kBot,
  kDot,
  kColon,
  kAssign,
  kSemi,
  kEquals,
  kDefine,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kArrow: return "'->'";
    case Tok::kTilde: return "'~'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBrack: return "'['";
    case Tok::kRBrack: return "']'";
    case Tok::kLambda: return "'\\'";
    case Tok::kMu: return "'mu'";
    case Tok::kBot: return "'bot'";
    case Tok::kDot: return "'.'";
    case Tok::kColon: return "':'";
    case Tok::kAssign: return "':='";
    case Tok::kSemi: return "';'";
    case Tok::kEquals: return "'='";
    case Tok::kDefine: return "'define'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src, int first_line = 1) {
  static const std::vector<std::pair<std::string_view, Tok>> kSymbols = {
      {"->", Tok::kArrow},     {":=", Tok::kAssign},   {"\xE2\x86\x92", Tok::kArrow},
      {"\xC2\xAC", Tok::kTilde}, {"\xE2\x8A\xA5", Tok::kBot}, {"\xCE\xBB", Tok::kLambda},
      {"\xCE\xBC", Tok::kMu},  {"\xE2\x89\x88", Tok::kEquals}, {"~", Tok::kTilde},
      {"(", Tok::kLParen},     {")", Tok::kRParen},    {"[", Tok::kLBrack},
      {"]", Tok::kRBrack},     {"\\", Tok::kLambda},   {".", Tok::kDot},
      {":", Tok::kColon},      {";", Tok::kSemi},      {"=", Tok::kEquals},
  };
  std::vector<Token> out;
  int line = first_line;
  int col = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(c)) {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(static_cast<unsigned char>(src[j]))) ++j;
      std::string word(src.substr(i, j - i));
      Tok kind = Tok::kIdent;
      if (word == "mu") kind = Tok::kMu;
      else if (word == "bot") kind = Tok::kBot;
      else if (word == "define") kind = Tok::kDefine;
      out.push_back({kind, std::move(word), line, col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [text, kind] : kSymbols) {
      if (src.substr(i, text.size()) == text) {
        out.push_back({kind, std::string(text), line, col});
        i += text.size();
        col += (static_cast<unsigned char>(text[0]) & 0x80) ? 1 : static_cast<int>(text.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ParseError("unexpected character '" + std::string(1, src[i]) + "'", line, col);
    }
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::set<std::string>& atoms)
      : tokens_(std::move(tokens)), atoms_(atoms) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  Token expect(Tok k) {
    if (!at(k)) fail(std::string("expected ") + describe(k) + ", found " + found());
    return tokens_[pos_++];
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  std::string found() const {
    return at(Tok::kIdent) ? "'" + peek().text + "'" : describe(peek().kind);
  }

  Type type() {
    Type lhs = prefix();
    if (at(Tok::kArrow)) {
      ++pos_;
      return Type::arrow(std::move(lhs), type());
    }
    return lhs;
  }

  Type prefix() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kTilde:
        ++pos_;
        return Type::neg(prefix());
      case Tok::kBot:
        ++pos_;
        return Type::bottom();
      case Tok::kLParen: {
        ++pos_;
        Type inner = type();
        expect(Tok::kRParen);
        return inner;
      }
      case Tok::kIdent: {
        ++pos_;
        if (atoms_.count(t.text)) return Type::atom(t.text);
        if (std::isupper(static_cast<unsigned char>(t.text[0]))) return Type::var(t.text);
        throw ParseError("'" + t.text + "' is not a declared atom (type variables start uppercase)",
                         t.line, t.column);
      }
      default:
        fail("expected a type, found " + found());
    }
  }

  Term term() {
    switch (peek().kind) {
      case Tok::kLambda:
      case Tok::kMu: {
        bool is_mu = at(Tok::kMu);
        ++pos_;
        Token name = expect(Tok::kIdent);
        if (std::find(bound_.begin(), bound_.end(), name.text) != bound_.end()) {
          throw ParseError("binder '" + name.text + "' shadows an enclosing binder", name.line,
                           name.column);
        }
        expect(Tok::kColon);
        Type ann = type();
        expect(Tok::kDot);
        bound_.push_back(name.text);
        Term body = term();
        bound_.pop_back();
        return is_mu ? Term::mu(name.text, std::move(ann), std::move(body))
                     : Term::lam(name.text, std::move(ann), std::move(body));
      }
      case Tok::kLBrack: {
        ++pos_;
        Token name = expect(Tok::kIdent);
        expect(Tok::kRBrack);
        return Term::name(name.text, term());
      }
      default:
        return application();
    }
  }

  bool starts_atom() const { return at(Tok::kIdent) || at(Tok::kLParen); }
  bool starts_binder() const { return at(Tok::kLambda) || at(Tok::kMu) || at(Tok::kLBrack); }

  Term application() {
    if (!starts_atom()) fail("expected a term, found " + found());
    Term head = atom();
    while (true) {
      if (starts_atom()) {
        head = Term::app(std::move(head), atom());
      } else if (starts_binder()) {
        head = Term::app(std::move(head), term());
        break;
      } else {
        break;
      }
    }
    return head;
  }

  Term atom() {
    if (at(Tok::kIdent)) return Term::var(tokens_[pos_++].text);
    expect(Tok::kLParen);
    Term inner = term();
    expect(Tok::kRParen);
    return inner;
  }

  std::size_t pos_ = 0;

 private:
  std::vector<Token> tokens_;
  const std::set<std::string>& atoms_;
  std::vector<std::string> bound_;
};

void collect_spaces(const Term& t, std::set<std::string>& lambda, std::set<std::string>& mu) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kLam:
      lambda.insert(t.ident());
      break;
    case Term::Kind::kMu:
    case Term::Kind::kName:
      mu.insert(t.ident());
      break;
    case Term::Kind::kApp:
      break;
  }
  for (std::size_t i = 0; i < t.child_count(); ++i) collect_spaces(t.child(i), lambda, mu);
}

void check_namespaces(const Term& t) {
  std::set<std::string> lambda, mu;
  collect_spaces(t, lambda, mu);
  for (const auto& n : lambda) {
    if (mu.count(n)) {
      throw Error(ErrorCode::kNamespaceClash,
                  "'" + n + "' is used both as a lambda-variable and as a mu-variable");
    }
  }
}

std::vector<std::string_view> split_lines(std::string_view src) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= src.size()) {
    std::size_t end = src.find('\n', start);
    if (end == std::string_view::npos) end = src.size();
    lines.push_back(src.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

Type parse_type(std::string_view src, const std::set<std::string>& atoms) {
  Parser p(lex(src), atoms);
  Type t = p.type();
  p.expect(Tok::kEnd);
  return t;
}

Term parse_term(std::string_view src, const std::set<std::string>& atoms) {
  Parser p(lex(src), atoms);
  Term t = p.term();
  p.expect(Tok::kEnd);
  check_namespaces(t);
  return t;
}

Term parse_program(std::string_view src, const std::set<std::string>& atoms) {
  Parser p(lex(src), atoms);
  std::vector<std::pair<std::string, Term>> defs;
  auto expand = [&defs](Term t) {
    for (auto it = defs.rbegin(); it != defs.rend(); ++it) {
      if (free_vars(t).count(it->first)) t = subst(t, it->first, it->second);
    }
    return t;
  };
  while (p.at(Tok::kDefine)) {
    p.expect(Tok::kDefine);
    Token name = p.expect(Tok::kIdent);
    p.expect(Tok::kAssign);
    Term body = p.term();
    p.expect(Tok::kSemi);
    check_namespaces(body);
    defs.emplace_back(name.text, expand(std::move(body)));
  }
  Term main = p.term();
  if (p.at(Tok::kSemi)) p.expect(Tok::kSemi);
  p.expect(Tok::kEnd);
  check_namespaces(main);
  Term out = expand(std::move(main));
  check_namespaces(out);
  return out;
}

EquationSystem parse_equations(std::string_view src) {
  auto lines = split_lines(src);
  EquationSystem sys;
  // Declarations first, so right-hand sides can mention atoms declared later.
  std::vector<std::pair<int, std::vector<Token>>> equations;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    auto tokens = lex(lines[i], line_no);
    if (tokens.front().kind == Tok::kEnd) continue;
    const Token& head = tokens.front();
    if (head.kind == Tok::kIdent && (head.text == "atom" || head.text == "free") &&
        (tokens[1].kind == Tok::kIdent || tokens[1].kind == Tok::kEnd)) {
      for (std::size_t k = 1; tokens[k].kind != Tok::kEnd; ++k) {
        if (tokens[k].kind != Tok::kIdent) {
          throw ParseError("expected identifier in declaration", tokens[k].line, tokens[k].column);
        }
        try {
          if (head.text == "atom") sys.declare_atom(tokens[k].text);
          else sys.declare_free(tokens[k].text);
        } catch (const Error& e) {
          throw Error(e.code(), std::to_string(tokens[k].line) + ":" +
                                    std::to_string(tokens[k].column) + ": " + e.what());
        }
      }
      continue;
    }
    equations.emplace_back(line_no, std::move(tokens));
  }
  for (auto& [line_no, tokens] : equations) {
    Parser p(std::move(tokens), sys.atoms());
    Token name = p.expect(Tok::kIdent);
    if (!std::isupper(static_cast<unsigned char>(name.text[0]))) {
      throw ParseError("defined type variables must start with an uppercase letter", name.line,
                       name.column);
    }
    p.expect(Tok::kEquals);
    Type rhs = p.type();
    p.expect(Tok::kEnd);
    try {
      sys.define(name.text, std::move(rhs));
    } catch (const Error& e) {
      throw Error(e.code(), std::to_string(name.line) + ":" + std::to_string(name.column) + ": " +
                                e.what());
    }
  }
  sys.validate();
  return sys;
}

std::vector<ContextBinding> parse_context(std::string_view src,
                                          const std::set<std::string>& atoms) {
  auto lines = split_lines(src);
  std::vector<ContextBinding> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tokens = lex(lines[i], static_cast<int>(i) + 1);
    if (tokens.front().kind == Tok::kEnd) continue;
    Parser p(std::move(tokens), atoms);
    Token name = p.expect(Tok::kIdent);
    if (!seen.insert(name.text).second) {
      throw ParseError("'" + name.text + "' is declared twice", name.line, name.column);
    }
    p.expect(Tok::kColon);
    Type t = p.type();
    p.expect(Tok::kEnd);
    out.push_back({name.text, std::move(t)});
  }
  return out;
}

}  // namespace recmu
