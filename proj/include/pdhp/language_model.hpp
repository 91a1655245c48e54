#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace pdhp {

// Dense token <-> index map, built in first-appearance order.
class Vocabulary {
public:
    std::int32_t add(const std::string& token); // returns the index, inserting if new
    std::int32_t lookup(const std::string& token) const; // -1 if absent
    const std::string& token(std::int32_t index) const { return tokens_.at(index); }
    std::size_t size() const { return tokens_.size(); }

private:
    std::unordered_map<std::string, std::int32_t> index_;
    std::vector<std::string> tokens_;
};

// Lowercases ASCII letters and strips leading/trailing non-alphanumeric
// characters; returns "" for tokens that vanish entirely.
std::string normalize_token(std::string token);

// Sparse word counts of one document.
struct DocCounts {
    std::int64_t total = 0;
    std::unordered_map<std::int32_t, std::int32_t> per_word;

    void add(std::int32_t word, std::int32_t count = 1);
};

// Collapsed sufficient statistics of one cluster's words.
struct ClusterWordCounts {
    std::int64_t total = 0;
    std::unordered_map<std::int32_t, std::int32_t> per_word;
};

// Symmetric Dirichlet-Multinomial smoothing: theta0_word per word, with total
// concentration theta0 = vocab_size * theta0_word.
struct DmParams {
    double theta0_word = 0.01;
    std::size_t vocab_size = 0;

    double theta0() const { return theta0_word * static_cast<double>(vocab_size); }
    void validate() const;
};

// Log predictive probability of the document's word counts given the
// cluster's accumulated counts, with the word-distribution parameters
// integrated out (gamma-ratio form, computed with log-gamma). For an empty
// cluster this is the marginal of the document alone. Throws
// std::domain_error for word indices outside the vocabulary.
double dm_log_predictive(const ClusterWordCounts& cluster, const DocCounts& doc,
                         const DmParams& params);

// Adds the document's counts into the cluster.
void update_counts(ClusterWordCounts& cluster, const DocCounts& doc);

} // namespace pdhp
