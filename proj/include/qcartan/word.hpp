// Generator words with the degree-lexicographic monomial order.

#pragma once

#include <cstdint>
#include <vector>

namespace qcartan {

using GenId = std::uint16_t;

struct Word {
    std::vector<GenId> g;

    Word() = default;
    explicit Word(std::vector<GenId> ids) : g(std::move(ids)) {}
    static Word unit() { return Word(); }
    static Word single(GenId id) { return Word({id}); }
    static Word pair(GenId x, GenId y) { return Word({x, y}); }

    bool empty() const { return g.empty(); }
    std::size_t size() const { return g.size(); }

    Word concat(const Word& o) const {
        Word r = *this;
        r.g.insert(r.g.end(), o.g.begin(), o.g.end());
        return r;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.g == b.g; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
};

// degree first, then lexicographic on generator indices
struct DegLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.g.size() != b.g.size()) return a.g.size() < b.g.size();
        return a.g < b.g;
    }
};

inline bool deglex_less(const Word& a, const Word& b) { return DegLex{}(a, b); }

}  // namespace qcartan
