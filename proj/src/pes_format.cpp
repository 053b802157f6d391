#include "pesgame/pes_format.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace pesgame {

namespace {

constexpr std::string_view kSharp = "♯";  // ♯

struct Token {
  std::string text;
  int column = 0;
  bool ident = false;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' || c == '\'';
}

std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const bool after_space = i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t';
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (c == '#') {
      // "conflict x # y" keeps its operator; any other '#' after blank space
      // opens a comment.
      const bool operator_slot = out.size() == 2 && out[0].text == "conflict" && out[1].ident;
      if (after_space && !operator_slot) break;
      out.push_back({"#", col, false});
      ++i;
      continue;
    }
    if (line.substr(i, kSharp.size()) == kSharp) {
      out.push_back({"#", col, false});
      i += kSharp.size();
      continue;
    }
    if (c == ':' || c == '<' || c == '{' || c == '}' || c == ',') {
      out.push_back({std::string(1, c), col, false});
      ++i;
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({std::string(line.substr(i, j - i)), col, true});
      i = j;
      continue;
    }
    throw ParseError({line_no, col}, std::string("unexpected character '") + c + "'");
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line_no, int line_len)
      : toks_(std::move(tokens)), line_(line_no), end_col_(line_len + 1) {}

  SourceSpan here() const { return {line_, pos_ < toks_.size() ? toks_[pos_].column : end_col_}; }

  const Token& ident(const char* what) {
    if (pos_ >= toks_.size() || !toks_[pos_].ident) throw ParseError(here(), std::string("expected ") + what);
    return toks_[pos_++];
  }

  void expect(const char* punct) {
    if (pos_ >= toks_.size() || toks_[pos_].ident || toks_[pos_].text != punct) {
      throw ParseError(here(), std::string("expected '") + punct + "'");
    }
    ++pos_;
  }

  bool peek(const char* punct) const {
    return pos_ < toks_.size() && !toks_[pos_].ident && toks_[pos_].text == punct;
  }

  void finish() {
    if (pos_ < toks_.size()) throw ParseError(here(), "unexpected '" + toks_[pos_].text + "'");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
  int end_col_;
};

}  // namespace

PesDocument parse_document(std::string_view text) {
  PesDocument doc;
  bool have_name = false;
  bool have_termination = false;
  std::set<std::string> declared;
  int line_no = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;

    std::vector<Token> toks = tokenize(line, line_no);
    if (toks.empty()) continue;
    const Token head = toks.front();
    LineParser lp(std::move(toks), line_no, static_cast<int>(line.size()));
    const SourceSpan head_span{line_no, head.column};
    auto declared_event = [&](const Token& t) {
      if (!declared.count(t.text)) throw ParseError({line_no, t.column}, "undeclared event '" + t.text + "'");
      return t.text;
    };

    if (!head.ident) throw ParseError(head_span, "expected a statement keyword");
    if (!have_name && head.text != "pes") throw ParseError(head_span, "expected 'pes <name>' header");
    lp.ident("keyword");

    if (head.text == "pes") {
      if (have_name) throw ParseError(head_span, "duplicate 'pes' header");
      doc.name = lp.ident("structure name").text;
      doc.name_span = head_span;
      have_name = true;
      lp.finish();
      continue;
    }

    Declaration d;
    d.span = head_span;
    if (head.text == "event") {
      const Token& id = lp.ident("event identifier");
      if (declared.count(id.text)) throw ParseError({line_no, id.column}, "duplicate event '" + id.text + "'");
      lp.expect(":");
      const Token& label = lp.ident("label");
      lp.finish();
      declared.insert(id.text);
      d.kind = Declaration::Kind::Event;
      d.args = {id.text, label.text};
    } else if (head.text == "cause") {
      const std::string a = declared_event(lp.ident("event identifier"));
      lp.expect("<");
      const std::string b = declared_event(lp.ident("event identifier"));
      lp.finish();
      d.kind = Declaration::Kind::Cause;
      d.args = {a, b};
    } else if (head.text == "conflict") {
      const std::string a = declared_event(lp.ident("event identifier"));
      lp.expect("#");
      const std::string b = declared_event(lp.ident("event identifier"));
      lp.finish();
      d.kind = Declaration::Kind::Conflict;
      d.args = {a, b};
    } else if (head.text == "terminating") {
      if (have_termination) throw ParseError(head_span, "more than one terminating statement");
      have_termination = true;
      d.kind = Declaration::Kind::Terminating;
      if (lp.peek("{")) {
        lp.expect("{");
        d.termination = TerminationPolicy::Kind::Explicit;
        while (!lp.peek("}")) {
          lp.expect("{");
          std::vector<std::string> set;
          if (!lp.peek("}")) {
            set.push_back(declared_event(lp.ident("event identifier")));
            while (lp.peek(",")) {
              lp.expect(",");
              set.push_back(declared_event(lp.ident("event identifier")));
            }
          }
          lp.expect("}");
          d.terminating_sets.push_back(std::move(set));
        }
        lp.expect("}");
      } else {
        const SourceSpan at = lp.here();
        const std::string word = lp.ident("'maximal', 'none' or '{'").text;
        if (word == "maximal") {
          d.termination = TerminationPolicy::Kind::Maximal;
        } else if (word == "none") {
          d.termination = TerminationPolicy::Kind::None;
        } else {
          throw ParseError(at, "expected 'maximal', 'none' or '{'");
        }
      }
      lp.finish();
    } else {
      throw ParseError(head_span, "unknown statement '" + head.text + "'");
    }
    doc.declarations.push_back(std::move(d));
  }
  if (!have_name) throw ParseError({line_no, 1}, "missing 'pes <name>' header");
  return doc;
}

RawPes to_raw(const PesDocument& doc) {
  RawPes raw;
  raw.name = doc.name;
  for (const Declaration& d : doc.declarations) {
    switch (d.kind) {
      case Declaration::Kind::Event: raw.events.push_back({d.args[0], d.args[1]}); break;
      case Declaration::Kind::Cause: raw.causes.emplace_back(d.args[0], d.args[1]); break;
      case Declaration::Kind::Conflict: raw.conflicts.emplace_back(d.args[0], d.args[1]); break;
      case Declaration::Kind::Terminating:
        raw.termination.kind = d.termination;
        raw.termination.configurations = d.terminating_sets;
        break;
    }
  }
  return raw;
}

Pes parse_pes(std::string_view text, const Caps& caps) { return validate_pes(to_raw(parse_document(text)), caps); }

std::string print_pes(const Pes& p) {
  const RawPes raw = to_raw(p);
  std::ostringstream os;
  os << "pes " << raw.name << "\n";
  for (const auto& e : raw.events) os << "event " << e.id << " : " << e.label << "\n";
  for (const auto& [a, b] : raw.causes) os << "cause " << a << " < " << b << "\n";
  for (const auto& [a, b] : raw.conflicts) os << "conflict " << a << " # " << b << "\n";
  switch (raw.termination.kind) {
    case TerminationPolicy::Kind::Maximal: os << "terminating maximal\n"; break;
    case TerminationPolicy::Kind::None: os << "terminating none\n"; break;
    case TerminationPolicy::Kind::Explicit: {
      os << "terminating {";
      for (const auto& set : raw.termination.configurations) {
        os << " {";
        for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set[i];
        os << "}";
      }
      os << " }\n";
      break;
    }
  }
  return os.str();
}

}  // namespace pesgame
