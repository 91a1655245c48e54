#pragma once

#include <cstdint>
#include <vector>

#include "pdhp/language_model.hpp"

namespace pdhp {

// One timestamped bag-of-words document, the unit of streaming input.
struct Document {
    std::int64_t id = 0;
    double time = 0.0;
    DocCounts counts;
};

// Time-ordered documents plus the vocabulary they are indexed against.
struct Corpus {
    std::vector<Document> documents;
    Vocabulary vocabulary;

    bool sorted_by_time() const {
        for (std::size_t i = 1; i < documents.size(); ++i)
            if (documents[i].time < documents[i - 1].time) return false;
        return true;
    }
};

} // namespace pdhp
