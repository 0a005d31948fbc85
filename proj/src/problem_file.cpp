#include "derksen/problem_file.hpp"

#include <algorithm>

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "derksen/errors.hpp"

namespace derksen {

namespace {

struct Value {
  enum class Kind { String, Number, Bool, Array } kind;
  std::string text;
  std::vector<Value> items;
  std::size_t line, column;
};

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::map<std::string, std::pair<Value, std::pair<std::size_t, std::size_t>>> entries() {
    std::map<std::string, std::pair<Value, std::pair<std::size_t, std::size_t>>> out;
    for (;;) {
      skip_blank(true);
      if (at_end()) return out;
      const std::size_t kline = line_, kcol = col_;
      std::string key = identifier();
      skip_blank(false);
      expect('=');
      skip_blank(false);
      Value v = value();
      skip_blank(false);
      if (!at_end() && peek() != '\n') fail("expected end of line after value");
      if (out.contains(key)) throw ParseError("duplicate key '" + key + "'", kline, kcol);
      out.emplace(std::move(key), std::pair{std::move(v), std::pair{kline, kcol}});
    }
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  /// Skips spaces and comments; newlines only when `newlines` is set.
  void skip_blank(bool newlines) {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        advance();
      } else {
        return;
      }
    }
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  std::string identifier() {
    std::string out;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      out += peek();
      advance();
    }
    if (out.empty()) fail("expected a key");
    return out;
  }

  Value value() {
    if (at_end()) fail("expected a value");
    Value v{Value::Kind::String, {}, {}, line_, col_};
    char c = peek();
    if (c == '"') {
      advance();
      while (!at_end() && peek() != '"' && peek() != '\n') {
        v.text += peek();
        advance();
      }
      expect('"');
    } else if (c == '[') {
      v.kind = Value::Kind::Array;
      advance();
      skip_blank(true);
      if (!at_end() && peek() == ']') {
        advance();
        return v;
      }
      for (;;) {
        v.items.push_back(value());
        skip_blank(true);
        if (at_end()) fail("unterminated array");
        if (peek() == ']') {
          advance();
          return v;
        }
        expect(',');
        skip_blank(true);
        if (!at_end() && peek() == ']') {
          advance();
          return v;
        }
      }
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      v.kind = Value::Kind::Bool;
      v.text = identifier();
      if (v.text != "true" && v.text != "false") throw ParseError("unknown word '" + v.text + "'", v.line, v.column);
    } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      v.kind = Value::Kind::Number;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-' || peek() == '+' ||
                           peek() == '/')) {
        v.text += peek();
        advance();
      }
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

[[noreturn]] void fail_at(const Value& v, const std::string& what) { throw ParseError(what, v.line, v.column); }

void expect_kind(const Value& v, Value::Kind kind, const char* what) {
  if (v.kind != kind) fail_at(v, std::string("expected ") + what);
}

std::size_t positive_integer(const Value& v) {
  expect_kind(v, Value::Kind::Number, "an integer");
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
  if (ec != std::errc() || ptr != v.text.data() + v.text.size() || out == 0) fail_at(v, "expected a positive integer");
  return out;
}

GroupElement matrix_from(const Value& v, const FieldSpec& field) {
  expect_kind(v, Value::Kind::Array, "a matrix [[...], ...]");
  const std::size_t d = v.items.size();
  if (d == 0) fail_at(v, "empty matrix");
  std::vector<Scalar> entries;
  for (const auto& row : v.items) {
    expect_kind(row, Value::Kind::Array, "a matrix row [...]");
    if (row.items.size() != d) fail_at(row, "matrix row has " + std::to_string(row.items.size()) + " entries, expected " +
                                               std::to_string(d));
    for (const auto& e : row.items) {
      expect_kind(e, Value::Kind::Number, "a scalar");
      try {
        entries.push_back(field.parse_scalar(e.text));
      } catch (const Error& err) {
        fail_at(e, std::string("bad scalar: ") + err.what());
      }
    }
  }
  return GroupElement(field, d, std::move(entries));
}

}  // namespace

std::pair<unsigned, unsigned> parse_range(std::string_view text) {
  auto number = [&](std::string_view s) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v == 0)
      throw std::invalid_argument("bad exponent range '" + std::string(text) + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    unsigned a = number(text);
    return {a, a};
  }
  unsigned a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
  if (a > b) throw std::invalid_argument("empty exponent range '" + std::string(text) + "'");
  return {a, b};
}

ProblemFile parse_problem(std::string_view text) {
  auto entries = Reader(text).entries();
  static const std::vector<std::string> known{"field", "d", "generators", "preset", "n", "local"};
  for (const auto& [key, entry] : entries)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("unknown key '" + key + "'", entry.second.first, entry.second.second);

  ProblemFile out;
  auto find = [&](const char* key) -> const Value* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second.first;
  };

  const Value* field = find("field");
  if (!field) throw ParseError("missing key 'field'", 1, 1);
  expect_kind(*field, Value::Kind::String, "a quoted field such as \"QQ\" or \"GF(7)\"");
  try {
    out.field = FieldSpec::parse(field->text);
  } catch (const Error& e) {
    fail_at(*field, e.what());
  } catch (const std::invalid_argument& e) {
    fail_at(*field, e.what());
  }

  const Value* d = find("d");
  if (d) out.dim = positive_integer(*d);

  const Value* gens = find("generators");
  const Value* preset = find("preset");
  if (gens && preset) fail_at(*preset, "give either 'generators' or 'preset', not both");
  if (!gens && !preset) throw ParseError("missing key 'generators' or 'preset'", 1, 1);

  if (preset) {
    expect_kind(*preset, Value::Kind::String, "a quoted preset such as \"sign(1,2)\"");
    try {
      Preset p = make_preset(preset->text, out.field);
      if (d && out.dim != p.dim)
        fail_at(*d, "d = " + std::to_string(out.dim) + " but the preset acts on " + std::to_string(p.dim) + " variables");
      out.dim = p.dim;
      out.generators = std::move(p.generators);
      out.preset = preset->text;
    } catch (const std::invalid_argument& e) {
      fail_at(*preset, e.what());
    } catch (const NoSuchRoot& e) {
      fail_at(*preset, e.what());
    }
  } else {
    expect_kind(*gens, Value::Kind::Array, "a list of matrices");
    for (const auto& m : gens->items) {
      GroupElement g = matrix_from(m, out.field);
      if (out.dim == 0) out.dim = g.dim();
      if (g.dim() != out.dim)
        fail_at(m, "matrix is " + std::to_string(g.dim()) + "x" + std::to_string(g.dim()) + " but d = " +
                       std::to_string(out.dim));
      out.generators.push_back(std::move(g));
    }
    if (out.dim == 0) fail_at(*gens, "no generators: give 'd' for the trivial group");
  }

  if (const Value* n = find("n")) {
    try {
      if (n->kind == Value::Kind::Number || n->kind == Value::Kind::String)
        out.n_range = parse_range(n->text);
      else
        fail_at(*n, "expected an exponent range such as \"1..3\"");
    } catch (const std::invalid_argument& e) {
      fail_at(*n, e.what());
    }
  }
  if (const Value* local = find("local")) {
    expect_kind(*local, Value::Kind::Bool, "true or false");
    out.local = local->text == "true";
  }
  return out;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string(), 0, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

DerksenProblem build_problem(const ProblemFile& file, std::size_t cap) {
  return DerksenProblem(generate_group(file.field, file.dim, file.generators, cap));
}

}  // namespace derksen
