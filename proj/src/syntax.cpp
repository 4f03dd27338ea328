#include "cfsub/syntax.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace cfsub {

namespace {

enum class Tok {
  Ident, Unit, Skip, End, Rec,
  Arrow, LinArrow, Semi, Dot, Comma, Colon,
  Bang, Query, Plus, Amp,
  LBrace, RBrace, LAngle, RAngle, LParen, RParen,
  Eof
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= src_.size()) return {Tok::Eof, "", line, col};
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_' || src_[pos_] == '\'')) {
        id.push_back(src_[pos_]);
        advance();
      }
      if (id == "unit") return {Tok::Unit, id, line, col};
      if (id == "skip") return {Tok::Skip, id, line, col};
      if (id == "end") return {Tok::End, id, line, col};
      if (id == "rec") return {Tok::Rec, id, line, col};
      return {Tok::Ident, id, line, col};
    }
    advance();
    switch (c) {
      case ';': return {Tok::Semi, ";", line, col};
      case '.': return {Tok::Dot, ".", line, col};
      case ',': return {Tok::Comma, ",", line, col};
      case ':': return {Tok::Colon, ":", line, col};
      case '!': return {Tok::Bang, "!", line, col};
      case '?': return {Tok::Query, "?", line, col};
      case '+': return {Tok::Plus, "+", line, col};
      case '&': return {Tok::Amp, "&", line, col};
      case '{': return {Tok::LBrace, "{", line, col};
      case '}': return {Tok::RBrace, "}", line, col};
      case '<': return {Tok::LAngle, "<", line, col};
      case '>': return {Tok::RAngle, ">", line, col};
      case '(': return {Tok::LParen, "(", line, col};
      case ')': return {Tok::RParen, ")", line, col};
      case '-':
        if (pos_ < src_.size() && src_[pos_] == '>') {
          advance();
          return {Tok::Arrow, "->", line, col};
        }
        if (pos_ < src_.size() && src_[pos_] == 'o' &&
            (pos_ + 1 >= src_.size() ||
             (!std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) &&
              src_[pos_ + 1] != '_'))) {
          advance();
          return {Tok::LinArrow, "-o", line, col};
        }
        throw ParseError("expected '->' or '-o' after '-'", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line,
                         col);
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
  }
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { cur_ = lex_.next(); }

  TypePtr parse() {
    TypePtr t = type();
    expect(Tok::Eof, "end of input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " (got '" + (cur_.kind == Tok::Eof ? "end of input"
                                                              : cur_.text) +
                         "')",
                     cur_.line, cur_.col);
  }
  void bump() { cur_ = lex_.next(); }
  bool eat(Tok k) {
    if (cur_.kind != k) return false;
    bump();
    return true;
  }
  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    bump();
  }

  TypePtr type() {
    TypePtr left = seq_level();
    if (cur_.kind == Tok::Arrow || cur_.kind == Tok::LinArrow) {
      Multiplicity m =
          cur_.kind == Tok::LinArrow ? Multiplicity::Lin : Multiplicity::Un;
      bump();
      return arrow(m, left, type());
    }
    return left;
  }

  TypePtr seq_level() {
    TypePtr head = prefix();
    if (eat(Tok::Semi)) return seq(head, seq_level());
    return head;
  }

  TypePtr prefix() {
    if (cur_.kind == Tok::Bang || cur_.kind == Tok::Query) {
      Polarity p = cur_.kind == Tok::Bang ? Polarity::Out : Polarity::In;
      bump();
      return msg(p, atom());
    }
    return atom();
  }

  TypePtr atom() {
    switch (cur_.kind) {
      case Tok::Unit: bump(); return unit();
      case Tok::Skip: bump(); return skip();
      case Tok::End: bump(); return end();
      case Tok::Ident: {
        std::string name = cur_.text;
        bump();
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
          if (it->first == name) return tvar(it->second);
        return base(name);
      }
      case Tok::Rec: {
        bump();
        if (cur_.kind != Tok::Ident) fail("expected a binder after 'rec'");
        std::string name = cur_.text;
        bump();
        expect(Tok::Dot, "'.' after the rec binder");
        Ident internal = fresh_name(name, used_binders_);
        used_binders_.insert(internal);
        scopes_.emplace_back(name, internal);
        TypePtr body = type();
        scopes_.pop_back();
        return rec(internal, body);
      }
      case Tok::LBrace: {
        bump();
        return record(fields(Tok::RBrace, "'}'", true));
      }
      case Tok::LAngle: {
        bump();
        return variant(fields(Tok::RAngle, "'>'", true));
      }
      case Tok::Plus:
      case Tok::Amp: {
        View v = cur_.kind == Tok::Plus ? View::Internal : View::External;
        Token open = cur_;
        bump();
        expect(Tok::LBrace, "'{' after a choice marker");
        LabelMap bs = fields(Tok::RBrace, "'}'", false);
        if (bs.empty())
          throw ParseError("choice types require at least one branch",
                           open.line, open.col);
        return choice(v, std::move(bs));
      }
      case Tok::LParen: {
        bump();
        TypePtr t = type();
        expect(Tok::RParen, "')'");
        return t;
      }
      default: fail("expected a type");
    }
  }

  LabelMap fields(Tok close, const char* close_name, bool allow_empty) {
    LabelMap out;
    if (allow_empty && cur_.kind == close) {
      bump();
      return out;
    }
    while (true) {
      if (cur_.kind != Tok::Ident) fail("expected a field label");
      Token label = cur_;
      bump();
      expect(Tok::Colon, "':' after a field label");
      if (!out.emplace(label.text, type()).second)
        throw ParseError("duplicate label '" + label.text + "'", label.line,
                         label.col);
      if (eat(Tok::Comma)) continue;
      expect(close, close_name);
      return out;
    }
  }

  Lexer lex_;
  Token cur_;
  std::vector<std::pair<std::string, Ident>> scopes_;
  std::set<Ident> used_binders_;
};

// Printing precedence levels, loosest first.
enum Level { kArrow = 0, kSeq = 1, kAtom = 2 };

bool is_atom_shaped(const TypePtr& t) {
  return is<TUnit>(t) || is<TBase>(t) || is<TSkip>(t) || is<TEnd>(t) ||
         is<TVar>(t) || is<TRecord>(t) || is<TVariant>(t) || is<TChoice>(t);
}

void print(std::ostream& os, const TypePtr& t, int level);

void print_fields(std::ostream& os, const LabelMap& m) {
  bool first = true;
  for (const auto& [l, v] : m) {
    if (!first) os << ", ";
    first = false;
    os << l << ": ";
    print(os, v, kArrow);
  }
}

void print(std::ostream& os, const TypePtr& t, int level) {
  if (is<TUnit>(t)) { os << "unit"; return; }
  if (const auto* b = as<TBase>(t)) { os << b->name; return; }
  if (is<TSkip>(t)) { os << "skip"; return; }
  if (is<TEnd>(t)) { os << "end"; return; }
  if (const auto* v = as<TVar>(t)) { os << v->name; return; }
  if (const auto* r = as<TRecord>(t)) {
    os << "{";
    print_fields(os, r->fields);
    os << "}";
    return;
  }
  if (const auto* v = as<TVariant>(t)) {
    os << "<";
    print_fields(os, v->fields);
    os << ">";
    return;
  }
  if (const auto* c = as<TChoice>(t)) {
    os << (c->view == View::Internal ? "+{" : "&{");
    print_fields(os, c->branches);
    os << "}";
    return;
  }
  if (const auto* m = as<TMsg>(t)) {
    os << (m->pol == Polarity::Out ? "!" : "?");
    if (is_atom_shaped(m->payload)) {
      print(os, m->payload, kAtom);
    } else {
      os << "(";
      print(os, m->payload, kArrow);
      os << ")";
    }
    return;
  }
  if (const auto* s = as<TSeq>(t)) {
    bool parens = level > kSeq;
    if (parens) os << "(";
    // the head binds tighter; sequencing is printed right-nested
    if (is<TSeq>(s->head) || is<TArrow>(s->head) || is<TRec>(s->head)) {
      os << "(";
      print(os, s->head, kArrow);
      os << ")";
    } else {
      print(os, s->head, kSeq);
    }
    os << " ; ";
    print(os, s->tail, kSeq);
    if (parens) os << ")";
    return;
  }
  if (const auto* a = as<TArrow>(t)) {
    bool parens = level > kArrow;
    if (parens) os << "(";
    if (is<TArrow>(a->dom) || is<TRec>(a->dom)) {
      os << "(";
      print(os, a->dom, kArrow);
      os << ")";
    } else {
      print(os, a->dom, kSeq);
    }
    os << (a->mult == Multiplicity::Lin ? " -o " : " -> ");
    print(os, a->rng, kArrow);
    if (parens) os << ")";
    return;
  }
  const auto& r = std::get<TRec>(t->node);
  bool parens = level > kArrow;
  if (parens) os << "(";
  os << "rec " << r.var << " . ";
  print(os, r.body, kArrow);
  if (parens) os << ")";
}

}  // namespace

TypePtr parse_type(std::string_view text) { return Parser(text).parse(); }

std::string print_type(const TypePtr& t) {
  std::ostringstream os;
  print(os, t, kArrow);
  return os.str();
}

}  // namespace cfsub
