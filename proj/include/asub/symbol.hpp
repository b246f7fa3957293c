#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace asub {

// Interned message name. Two symbols are equal iff they were interned from
// the same string. Ordering is lexicographic on the underlying text.
class Symbol {
public:
    Symbol();
    explicit Symbol(std::string_view text);

    const std::string& str() const { return *text_; }

    friend bool operator==(Symbol a, Symbol b) { return a.text_ == b.text_; }
    friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
        if (a.text_ == b.text_) return std::strong_ordering::equal;
        return a.text_->compare(*b.text_) < 0 ? std::strong_ordering::less
                                              : std::strong_ordering::greater;
    }

    std::size_t hash() const { return std::hash<const void*>{}(text_); }

private:
    const std::string* text_;
};

}  // namespace asub

template <>
struct std::hash<asub::Symbol> {
    std::size_t operator()(asub::Symbol s) const noexcept { return s.hash(); }
};
