#include "asub/symbol.hpp"

#include <mutex>
#include <unordered_set>

namespace asub {

namespace {

// Node-based set: element addresses stay valid across rehashes.
struct Table {
    std::mutex mu;
    std::unordered_set<std::string> names;
};

Table& table() {
    static Table t;
    return t;
}

const std::string* intern(std::string_view text) {
    Table& t = table();
    std::lock_guard lock(t.mu);
    return &*t.names.emplace(text).first;
}

}  // namespace

Symbol::Symbol() : text_(intern("")) {}

Symbol::Symbol(std::string_view text) : text_(intern(text)) {}

}  // namespace asub
