#pragma once

#include <map>
#include <set>
#include <string>

#include "expofield/mpoly.hpp"

namespace expofield {

/// Generates prefix<k> names with one monotone counter per prefix, skipping
/// anything already in use.
class FreshNamer {
public:
    explicit FreshNamer(std::set<Symbol> used = {}, unsigned start = 1)
        : used_(std::move(used)), start_(start) {}

    Symbol next(const std::string& prefix) {
        auto it = counters_.try_emplace(prefix, start_).first;
        for (;;) {
            Symbol s = prefix + std::to_string(it->second++);
            if (used_.insert(s).second) return s;
        }
    }
    void reserve(const Symbol& s) { used_.insert(s); }
    bool used(const Symbol& s) const { return used_.count(s) != 0; }

private:
    std::set<Symbol> used_;
    unsigned start_;
    std::map<std::string, unsigned> counters_;
};

}  // namespace expofield
