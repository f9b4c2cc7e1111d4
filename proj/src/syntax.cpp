#include "paralite/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <optional>

#include "paralite/error.hpp"

namespace paralite {

// {{{ Concept

Concept Concept::Top() { return Concept{}; }

Concept Concept::Bot() {
  Concept c;
  c.kind_ = Kind::kBot;
  return c;
}

Concept Concept::Name(std::string name) {
  Concept c;
  c.kind_ = Kind::kName;
  c.name_ = std::move(name);
  return c;
}

Concept Concept::AtLeast(Number n, Role role) {
  Concept c;
  c.kind_ = Kind::kAtLeast;
  c.number_ = n;
  c.role_ = std::move(role);
  return c;
}

Concept Concept::AtMost(Number n, Role role) {
  Concept c;
  c.kind_ = Kind::kAtMost;
  c.number_ = n;
  c.role_ = std::move(role);
  return c;
}

Concept Concept::Exists(Role role) {
  Concept c;
  c.kind_ = Kind::kExists;
  c.role_ = std::move(role);
  return c;
}

Concept Concept::Not(Concept operand) {
  Concept c;
  c.kind_ = Kind::kNot;
  c.kids_.push_back(std::move(operand));
  return c;
}

Concept Concept::And(Concept lhs, Concept rhs) {
  Concept c;
  c.kind_ = Kind::kAnd;
  c.kids_.push_back(std::move(lhs));
  c.kids_.push_back(std::move(rhs));
  return c;
}

Concept Concept::Or(Concept lhs, Concept rhs) {
  Concept c;
  c.kind_ = Kind::kOr;
  c.kids_.push_back(std::move(lhs));
  c.kids_.push_back(std::move(rhs));
  return c;
}

bool Concept::is_normal() const {
  switch (kind_) {
    case Kind::kTop:
    case Kind::kName:
    case Kind::kAtLeast:
      return true;
    case Kind::kNot:
      return lhs().is_normal();
    case Kind::kAnd:
      return lhs().is_normal() && rhs().is_normal();
    default:
      return false;
  }
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.name_ <=> b.name_; c != 0) return c;
  if (auto c = a.number_ <=> b.number_; c != 0) return c;
  if (auto c = a.role_ <=> b.role_; c != 0) return c;
  if (auto c = a.kids_.size() <=> b.kids_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.kids_.size(); ++i) {
    if (auto c = a.kids_[i] <=> b.kids_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Concept normalize(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::kTop:
    case K::kName:
    case K::kAtLeast:
      return c;
    case K::kBot:
      return Concept::Not(Concept::Top());
    case K::kExists:
      return Concept::AtLeast(1, c.role());
    case K::kAtMost:
      return Concept::Not(Concept::AtLeast(c.number() + 1, c.role()));
    case K::kNot:
      return Concept::Not(normalize(c.lhs()));
    case K::kAnd:
      return Concept::And(normalize(c.lhs()), normalize(c.rhs()));
    case K::kOr:
      return Concept::Not(
          Concept::And(Concept::Not(normalize(c.lhs())), Concept::Not(normalize(c.rhs()))));
  }
  return c;
}

// }}}

RoleAssertion make_role_assertion(const Role& role, std::string subject, std::string object) {
  if (role.inverted) return RoleAssertion{role.name, std::move(object), std::move(subject)};
  return RoleAssertion{role.name, std::move(subject), std::move(object)};
}

// {{{ KnowledgeBase

void KnowledgeBase::add(Inclusion inclusion) {
  if (std::find(tbox_.begin(), tbox_.end(), inclusion) == tbox_.end())
    tbox_.push_back(std::move(inclusion));
}

void KnowledgeBase::add(Assertion assertion) {
  if (std::find(abox_.begin(), abox_.end(), assertion) == abox_.end())
    abox_.push_back(std::move(assertion));
}

void KnowledgeBase::add(const Axiom& axiom) {
  std::visit(
      [this](const auto& ax) {
        using T = std::decay_t<decltype(ax)>;
        if constexpr (std::is_same_v<T, Inclusion>)
          add(ax);
        else
          add(Assertion{ax});
      },
      axiom);
}

KnowledgeBase KnowledgeBase::with(const Axiom& axiom) const {
  KnowledgeBase out = *this;
  out.add(axiom);
  return out;
}

// }}}

// {{{ Signatures

namespace {

enum class Category { kConcept, kRole, kIndividual };

const char* category_name(Category c) {
  switch (c) {
    case Category::kConcept:
      return "concept";
    case Category::kRole:
      return "role";
    case Category::kIndividual:
      return "individual";
  }
  return "?";
}

class SignatureBuilder {
 public:
  void concept_name(const std::string& n) { note(n, Category::kConcept); sig_.concepts.insert(n); }
  void role_name(const std::string& n) { note(n, Category::kRole); sig_.roles.insert(n); }
  void individual(const std::string& n) { note(n, Category::kIndividual); sig_.individuals.insert(n); }
  void number(Number n) { sig_.numbers.insert(n); }

  void visit(const Concept& c) {
    using K = Concept::Kind;
    switch (c.kind()) {
      case K::kTop:
      case K::kBot:
        break;
      case K::kName:
        concept_name(c.name());
        break;
      case K::kAtLeast:
        role_name(c.role().name);
        number(c.number());
        break;
      case K::kAtMost:
        role_name(c.role().name);
        number(c.number() + 1);
        break;
      case K::kExists:
        role_name(c.role().name);
        break;
      case K::kNot:
        visit(c.lhs());
        break;
      case K::kAnd:
      case K::kOr:
        visit(c.lhs());
        visit(c.rhs());
        break;
    }
  }

  void axiom(const Inclusion& inc) {
    visit(inc.lhs);
    visit(inc.rhs);
  }
  void axiom(const ConceptAssertion& ca) {
    visit(ca.what);
    individual(ca.individual);
  }
  void axiom(const RoleAssertion& ra) {
    role_name(ra.role);
    individual(ra.subject);
    individual(ra.object);
  }

  void signature(const Signature& s) {
    for (const auto& n : s.concepts) concept_name(n);
    for (const auto& n : s.roles) role_name(n);
    for (const auto& n : s.individuals) individual(n);
    for (Number n : s.numbers) number(n);
  }

  Signature take() { return std::move(sig_); }

 private:
  void note(const std::string& name, Category cat) {
    auto [it, fresh] = seen_.emplace(name, cat);
    if (!fresh && it->second != cat) {
      throw ArityError("symbol '" + name + "' used as both " + category_name(it->second) + " and " +
                       category_name(cat));
    }
  }

  Signature sig_;
  std::map<std::string, Category> seen_;
};

}  // namespace

Signature merge(const Signature& a, const Signature& b) {
  SignatureBuilder builder;
  builder.signature(a);
  builder.signature(b);
  return builder.take();
}

Signature signature_of(const Concept& c) {
  SignatureBuilder builder;
  builder.visit(c);
  return builder.take();
}

Signature signature_of(const Axiom& axiom) {
  SignatureBuilder builder;
  std::visit([&](const auto& ax) { builder.axiom(ax); }, axiom);
  return builder.take();
}

Signature signature_of(const KnowledgeBase& kb) {
  SignatureBuilder builder;
  for (const auto& inc : kb.tbox()) builder.axiom(inc);
  for (const auto& as : kb.abox()) std::visit([&](const auto& ax) { builder.axiom(ax); }, as);
  return builder.take();
}

Signature sig_star(const KnowledgeBase& kb) {
  Signature sig = signature_of(kb);
  // Distinct successors / predecessors per (individual, role).
  std::map<std::pair<std::string, std::string>, std::set<std::string>> out, in;
  for (const auto& as : kb.abox()) {
    if (const auto* ra = std::get_if<RoleAssertion>(&as)) {
      out[{ra->subject, ra->role}].insert(ra->object);
      in[{ra->object, ra->role}].insert(ra->subject);
    }
  }
  std::size_t widest = 0;
  for (const auto& [key, succ] : out) widest = std::max(widest, succ.size());
  for (const auto& [key, pred] : in) widest = std::max(widest, pred.size());
  for (std::size_t m = 1; m <= widest; ++m) sig.numbers.insert(static_cast<Number>(m));
  return sig;
}

Signature sig_star(const KnowledgeBase& kb, const Axiom& axiom) { return sig_star(kb.with(axiom)); }

std::set<std::string> symbol_names(const Signature& sig) {
  std::set<std::string> out = sig.concepts;
  out.insert(sig.roles.begin(), sig.roles.end());
  out.insert(sig.individuals.begin(), sig.individuals.end());
  return out;
}

// }}}

// {{{ Lexer

namespace {

enum class Tok {
  kIdent,
  kNat,
  kSubsumed,  // [=
  kNot,       // !
  kAnd,       // &
  kOr,        // |
  kGeq,       // >=
  kLeq,       // <=
  kLParen,
  kRParen,
  kComma,
  kMinus,
  kTbox,  // tbox:
  kAbox,  // abox:
  kNewline,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto push = [&](Tok k, std::string text, std::size_t len) {
    out.push_back(Token{k, std::move(text), line, col});
    i += len;
    col += len;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      out.push_back(Token{Tok::kNewline, "", line, col});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') {
        ++i;
        ++col;
      }
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string word(src.substr(i, j - i));
      if ((word == "tbox" || word == "abox") && j < src.size() && src[j] == ':') {
        push(word == "tbox" ? Tok::kTbox : Tok::kAbox, word + ":", j - i + 1);
      } else {
        push(Tok::kIdent, word, j - i);
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::kNat, std::string(src.substr(i, j - i)), j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "[=") { push(Tok::kSubsumed, "[=", 2); continue; }
    if (two == ">=") { push(Tok::kGeq, ">=", 2); continue; }
    if (two == "<=") { push(Tok::kLeq, "<=", 2); continue; }
    switch (c) {
      case '!': push(Tok::kNot, "!", 1); continue;
      case '&': push(Tok::kAnd, "&", 1); continue;
      case '|': push(Tok::kOr, "|", 1); continue;
      case '(': push(Tok::kLParen, "(", 1); continue;
      case ')': push(Tok::kRParen, ")", 1); continue;
      case ',': push(Tok::kComma, ",", 1); continue;
      case '-': push(Tok::kMinus, "-", 1); continue;
      default:
        throw SyntaxError(line, col, "a token (unexpected character '" + std::string(1, c) + "')");
    }
  }
  out.push_back(Token{Tok::kEnd, "", line, col});
  return out;
}

bool is_keyword(const std::string& word) { return word == "Top" || word == "Bot" || word == "exists"; }

// }}}

// {{{ Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  KnowledgeBase knowledge_base() {
    KnowledgeBase kb;
    enum class Section { kNone, kTbox, kAbox } section = Section::kNone;
    while (peek().kind != Tok::kEnd) {
      const Token& t = peek();
      if (t.kind == Tok::kNewline) {
        advance();
        continue;
      }
      if (t.kind == Tok::kTbox || t.kind == Tok::kAbox) {
        section = t.kind == Tok::kTbox ? Section::kTbox : Section::kAbox;
        advance();
        continue;
      }
      if (section == Section::kNone) fail("'tbox:' or 'abox:'");
      if (section == Section::kTbox)
        kb.add(inclusion());
      else
        kb.add(assertion());
      end_of_axiom();
    }
    return kb;
  }

  Axiom axiom() {
    skip_newlines();
    Axiom out = has_subsumption() ? Axiom{inclusion()} : assertion_axiom();
    skip_newlines();
    expect(Tok::kEnd, "end of input");
    return out;
  }

  Concept whole_concept() {
    skip_newlines();
    Concept c = parse_concept_expr();
    skip_newlines();
    expect(Tok::kEnd, "end of input");
    return c;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().line, peek().column, expected);
  }

  const Token& expect(Tok kind, const std::string& expected) {
    if (peek().kind != kind) fail(expected);
    return advance();
  }

  void skip_newlines() {
    while (peek().kind == Tok::kNewline) advance();
  }

  void end_of_axiom() {
    if (peek().kind == Tok::kNewline || peek().kind == Tok::kEnd) return;
    fail("end of line");
  }

  bool has_subsumption() const {
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      if (toks_[i].kind == Tok::kSubsumed) return true;
    }
    return false;
  }

  Inclusion inclusion() {
    Concept lhs = parse_concept_expr();
    expect(Tok::kSubsumed, "'[='");
    Concept rhs = parse_concept_expr();
    return Inclusion{normalize(lhs), normalize(rhs)};
  }

  Axiom assertion_axiom() {
    Assertion as = assertion();
    return std::visit([](auto&& a) -> Axiom { return a; }, std::move(as));
  }

  bool at_role_assertion() const {
    if (peek().kind != Tok::kIdent || is_keyword(peek().text)) return false;
    std::size_t k = 1;
    if (peek(k).kind == Tok::kMinus) return true;
    return peek(k).kind == Tok::kLParen && peek(k + 1).kind == Tok::kIdent &&
           peek(k + 2).kind == Tok::kComma;
  }

  Assertion assertion() {
    if (at_role_assertion()) {
      Role r = role();
      expect(Tok::kLParen, "'('");
      std::string subject = individual();
      expect(Tok::kComma, "','");
      std::string object = individual();
      expect(Tok::kRParen, "')'");
      return make_role_assertion(r, std::move(subject), std::move(object));
    }
    Concept c = parse_concept_expr();
    expect(Tok::kLParen, "'('");
    std::string who = individual();
    if (peek().kind == Tok::kComma) {
      throw ArityError("concept expression used as a role in assertion about '" + who + "'", peek().line,
                       peek().column);
    }
    expect(Tok::kRParen, "')'");
    return ConceptAssertion{normalize(c), std::move(who)};
  }

  std::string ident() {
    if (peek().kind != Tok::kIdent || is_keyword(peek().text)) fail("identifier");
    return advance().text;
  }

  std::string individual() {
    note(peek(), Category::kIndividual);
    return ident();
  }

  // Records the category a name is first used in and rejects later uses in
  // another one, pointing at the offending token.
  void note(const Token& t, Category cat) {
    if (t.kind != Tok::kIdent) return;
    auto [it, fresh] = categories_.emplace(t.text, cat);
    if (!fresh && it->second != cat) {
      throw ArityError("symbol '" + t.text + "' used as both " + category_name(it->second) + " and " +
                           category_name(cat),
                       t.line, t.column);
    }
  }

  Role role() {
    note(peek(), Category::kRole);
    Role r{ident(), false};
    if (peek().kind == Tok::kMinus) {
      advance();
      r.inverted = true;
    }
    return r;
  }

  Number nat() {
    const Token& t = peek();
    if (t.kind != Tok::kNat) fail("positive integer");
    advance();
    if (t.text.find_first_not_of('0') == std::string::npos) throw CardinalityError(t.line, t.column);
    if (t.text.size() > 9) throw SyntaxError(t.line, t.column, "integer below 10^9");
    return static_cast<Number>(std::stoul(t.text));
  }

  Concept parse_concept_expr() {
    Concept c = conj();
    while (peek().kind == Tok::kOr) {
      advance();
      c = Concept::Or(std::move(c), conj());
    }
    return c;
  }

  Concept conj() {
    Concept c = unary();
    while (peek().kind == Tok::kAnd) {
      advance();
      c = Concept::And(std::move(c), unary());
    }
    return c;
  }

  Concept unary() {
    if (peek().kind == Tok::kNot) {
      advance();
      return Concept::Not(unary());
    }
    return atom();
  }

  Concept atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kIdent:
        if (t.text == "Top") {
          advance();
          return Concept::Top();
        }
        if (t.text == "Bot") {
          advance();
          return Concept::Bot();
        }
        if (t.text == "exists") {
          advance();
          return Concept::Exists(role());
        }
        note(t, Category::kConcept);
        return Concept::Name(advance().text);
      case Tok::kGeq: {
        advance();
        Number n = nat();
        return Concept::AtLeast(n, role());
      }
      case Tok::kLeq: {
        advance();
        Number n = nat();
        return Concept::AtMost(n, role());
      }
      case Tok::kLParen: {
        advance();
        Concept c = parse_concept_expr();
        expect(Tok::kRParen, "')'");
        return c;
      }
      default:
        fail("concept");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Category> categories_;
};

}  // namespace

KnowledgeBase parse_kb(std::string_view text) { return Parser(text).knowledge_base(); }
Axiom parse_axiom(std::string_view text) { return Parser(text).axiom(); }
Concept parse_concept(std::string_view text) { return normalize(Parser(text).whole_concept()); }
Concept parse_concept_surface(std::string_view text) { return Parser(text).whole_concept(); }

// }}}

// {{{ Printing

std::string to_string(const Role& role) { return role.inverted ? role.name + "-" : role.name; }

namespace {

enum class Prec { kDisj = 0, kConj = 1, kUnary = 2 };

std::string render(const Concept& c, Prec ctx) {
  using K = Concept::Kind;
  auto wrap = [ctx](std::string s, Prec own) { return own < ctx ? "(" + s + ")" : s; };
  switch (c.kind()) {
    case K::kTop:
      return "Top";
    case K::kBot:
      return "Bot";
    case K::kName:
      return c.name();
    case K::kAtLeast:
      return ">= " + std::to_string(c.number()) + " " + to_string(c.role());
    case K::kAtMost:
      return "<= " + std::to_string(c.number()) + " " + to_string(c.role());
    case K::kExists:
      return "exists " + to_string(c.role());
    case K::kNot:
      return "!" + render(c.lhs(), Prec::kUnary);
    case K::kAnd:
      return wrap(render(c.lhs(), Prec::kConj) + " & " + render(c.rhs(), Prec::kUnary), Prec::kConj);
    case K::kOr:
      return wrap(render(c.lhs(), Prec::kDisj) + " | " + render(c.rhs(), Prec::kConj), Prec::kDisj);
  }
  return "?";
}

}  // namespace

std::string to_string(const Concept& c) { return render(c, Prec::kDisj); }

std::string to_string(const Inclusion& inc) { return to_string(inc.lhs) + " [= " + to_string(inc.rhs); }

std::string to_string(const ConceptAssertion& a) {
  // A trailing "(x)" binds to the whole disjunction, so no extra parentheses.
  return to_string(a.what) + "(" + a.individual + ")";
}

std::string to_string(const RoleAssertion& a) { return a.role + "(" + a.subject + ", " + a.object + ")"; }

std::string to_string(const Assertion& a) {
  return std::visit([](const auto& x) { return to_string(x); }, a);
}

std::string to_string(const Axiom& a) {
  return std::visit([](const auto& x) { return to_string(x); }, a);
}

std::string print_kb(const KnowledgeBase& kb) {
  std::string out = "tbox:\n";
  for (const auto& inc : kb.tbox()) out += "  " + to_string(inc) + "\n";
  out += "abox:\n";
  for (const auto& as : kb.abox()) out += "  " + to_string(as) + "\n";
  return out;
}

// }}}

}  // namespace paralite
