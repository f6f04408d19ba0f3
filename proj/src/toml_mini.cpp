#include "qml/toml_mini.hpp"

#include "qml/rational.hpp"

#include <cctype>

namespace qml::toml_mini {

std::optional<std::string> Table::find_string(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  if (auto* s = std::get_if<std::string>(&it->second)) return *s;
  return std::nullopt;
}

std::optional<long> Table::find_int(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  if (auto* v = std::get_if<long>(&it->second)) return *v;
  return std::nullopt;
}

std::optional<std::vector<std::string>> Table::find_string_array(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  if (auto* v = std::get_if<std::vector<std::string>>(&it->second)) return *v;
  return std::nullopt;
}

const Table* Table::find_table(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  if (auto* v = std::get_if<std::shared_ptr<Table>>(&it->second)) return v->get();
  return nullptr;
}

const std::vector<Table>* Table::find_table_array(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  if (auto* v = std::get_if<std::vector<Table>>(&it->second)) return v;
  return nullptr;
}

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_space(bool newlines) {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return text_[pos_++]; }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      throw input_error(std::string("module spec: expected '") + c + "' at offset " +
                        std::to_string(pos_));
  }

  std::string take_key() {
    skip_space(false);
    std::string key;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        key.push_back(c);
        ++pos_;
      } else {
        break;
      }
    }
    if (key.empty()) throw input_error("module spec: expected a key");
    return key;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

Value parse_value(Cursor& cur);

std::string parse_quoted(Cursor& cur) {
  cur.expect('"');
  std::string out;
  while (!cur.done()) {
    char c = cur.take();
    if (c == '"') return out;
    if (c == '\n') break;
    out.push_back(c);
  }
  throw input_error("module spec: unterminated string");
}

Table parse_inline_table(Cursor& cur) {
  cur.expect('{');
  Table table;
  cur.skip_space(true);
  if (cur.accept('}')) return table;
  while (true) {
    std::string key = cur.take_key();
    cur.skip_space(false);
    cur.expect('=');
    cur.skip_space(false);
    table.set(key, parse_value(cur));
    cur.skip_space(true);
    if (cur.accept('}')) return table;
    cur.expect(',');
    cur.skip_space(true);
  }
}

Value parse_array(Cursor& cur) {
  cur.expect('[');
  std::vector<std::string> strings;
  std::vector<Table> tables;
  cur.skip_space(true);
  if (cur.accept(']')) return strings;
  while (true) {
    cur.skip_space(true);
    if (cur.peek() == '"') {
      strings.push_back(parse_quoted(cur));
    } else if (cur.peek() == '{') {
      tables.push_back(parse_inline_table(cur));
    } else {
      throw input_error("module spec: arrays hold strings or inline tables");
    }
    cur.skip_space(true);
    if (cur.accept(']')) break;
    cur.expect(',');
    cur.skip_space(true);
    if (cur.accept(']')) break;  // trailing comma
  }
  if (!strings.empty() && !tables.empty())
    throw input_error("module spec: mixed array contents");
  if (!tables.empty()) return tables;
  return strings;
}

Value parse_value(Cursor& cur) {
  cur.skip_space(false);
  char c = cur.peek();
  if (c == '"') return parse_quoted(cur);
  if (c == '[') return parse_array(cur);
  if (c == '{') return std::make_shared<Table>(parse_inline_table(cur));
  std::string token;
  while (!cur.done()) {
    char ch = cur.peek();
    if (ch == '\n' || ch == '#' || ch == ',' || ch == '}' || ch == ']' || ch == ' ' || ch == '\t' || ch == '\r')
      break;
    token.push_back(cur.take());
  }
  if (token.empty()) throw input_error("module spec: missing value");
  try {
    std::size_t used = 0;
    long v = std::stol(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  throw input_error("module spec: unsupported value '" + token + "' (quote strings)");
}

}  // namespace

Table parse(const std::string& text) {
  Cursor cur(text);
  Table root;
  while (true) {
    cur.skip_space(true);
    if (cur.done()) break;
    std::string key = cur.take_key();
    cur.skip_space(false);
    cur.expect('=');
    cur.skip_space(false);
    root.set(key, parse_value(cur));
  }
  return root;
}

}  // namespace qml::toml_mini
