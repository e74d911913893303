#include "okapain/variable.hpp"

#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <tuple>

namespace okapain::cas {
namespace {

// Sort key: parameters after everything else (t < a0 < a1 among themselves),
// other names by (alphabetic prefix, numeric suffix as a number, full name).
// Comparing keys is stable under later interning, unlike a rank integer.
using SortKey = std::tuple<int, std::string, long, std::string>;

struct Entry {
  std::string name;
  bool is_param;
  SortKey sort_key;
};

Entry make_entry(std::string_view name) {
  Entry e;
  e.name = std::string(name);
  e.is_param = (name == "t" || name == "a0" || name == "a1");
  if (e.is_param) {
    long rank = name == "t" ? 0 : (name == "a0" ? 1 : 2);
    e.sort_key = {1, "", rank, e.name};
    return e;
  }
  size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  std::string prefix(name.substr(0, i));
  long suffix = 0;
  if (i < name.size()) suffix = std::stol(std::string(name.substr(i)));
  e.sort_key = {0, prefix, suffix, e.name};
  return e;
}

struct Registry {
  std::mutex mu;
  std::deque<Entry> entries;  // deque: references stay valid while interning
  std::map<std::string, int, std::less<>> by_name;

  int intern(std::string_view name) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = by_name.find(name);
    if (it != by_name.end()) return it->second;
    int id = static_cast<int>(entries.size());
    entries.push_back(make_entry(name));
    by_name.emplace(std::string(name), id);
    return id;
  }

  const Entry& entry(int id) {
    std::lock_guard<std::mutex> lock(mu);
    return entries[id];
  }
};

Registry& registry() {
  static Registry* r = new Registry();
  return *r;
}

}  // namespace

Variable::Variable(std::string_view name) : id_(registry().intern(name)) {}

const std::string& Variable::name() const { return registry().entry(id_).name; }

bool Variable::is_parameter() const { return registry().entry(id_).is_param; }

int Variable::compare(const Variable& o) const {
  if (id_ == o.id_) return 0;
  const SortKey& a = registry().entry(id_).sort_key;
  const SortKey& b = registry().entry(o.id_).sort_key;
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace okapain::cas
