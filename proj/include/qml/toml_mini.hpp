#ifndef QML_TOML_MINI_HPP
#define QML_TOML_MINI_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qml::toml_mini {

// Just enough TOML for module-spec files: string and integer scalars,
// arrays of strings, inline tables, and arrays of inline tables.
class Table;

using Value = std::variant<std::string, long, std::shared_ptr<Table>,
                           std::vector<std::string>, std::vector<Table>>;

class Table {
 public:
  void set(const std::string& key, Value value) { entries_[key] = std::move(value); }
  bool contains(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<std::string> find_string(const std::string& key) const;
  std::optional<long> find_int(const std::string& key) const;
  std::optional<std::vector<std::string>> find_string_array(const std::string& key) const;
  const Table* find_table(const std::string& key) const;
  const std::vector<Table>* find_table_array(const std::string& key) const;

 private:
  std::map<std::string, Value> entries_;
};

Table parse(const std::string& text);

}  // namespace qml::toml_mini

#endif
