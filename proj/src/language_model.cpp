#include "pdhp/language_model.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "pdhp/errors.hpp"

namespace pdhp {

std::int32_t Vocabulary::add(const std::string& token) {
    auto it = index_.find(token);
    if (it != index_.end()) return it->second;
    const auto idx = static_cast<std::int32_t>(tokens_.size());
    index_.emplace(token, idx);
    tokens_.push_back(token);
    return idx;
}

std::int32_t Vocabulary::lookup(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : it->second;
}

std::string normalize_token(std::string token) {
    std::size_t begin = 0, end = token.size();
    while (begin < end && !std::isalnum(static_cast<unsigned char>(token[begin]))) ++begin;
    while (end > begin && !std::isalnum(static_cast<unsigned char>(token[end - 1]))) --end;
    std::string out = token.substr(begin, end - begin);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

void DocCounts::add(std::int32_t word, std::int32_t count) {
    per_word[word] += count;
    total += count;
}

void DmParams::validate() const {
    if (!(theta0_word > 0.0)) throw config_error("dm: theta0_word must be positive");
    if (vocab_size == 0) throw config_error("dm: vocabulary is empty");
}

double dm_log_predictive(const ClusterWordCounts& cluster, const DocCounts& doc,
                         const DmParams& params) {
    params.validate();
    const double theta0 = params.theta0();
    const auto n_c = static_cast<double>(cluster.total);
    const auto n_i = static_cast<double>(doc.total);

    double acc = std::lgamma(n_c + theta0) - std::lgamma(n_c + n_i + theta0);
    for (const auto& [word, count] : doc.per_word) {
        if (word < 0 || static_cast<std::size_t>(word) >= params.vocab_size)
            throw std::domain_error("dm_log_predictive: word index outside vocabulary");
        auto it = cluster.per_word.find(word);
        const double n_cv = it == cluster.per_word.end() ? 0.0 : static_cast<double>(it->second);
        acc += std::lgamma(n_cv + count + params.theta0_word) -
               std::lgamma(n_cv + params.theta0_word);
    }
    return acc;
}

void update_counts(ClusterWordCounts& cluster, const DocCounts& doc) {
    for (const auto& [word, count] : doc.per_word) cluster.per_word[word] += count;
    cluster.total += doc.total;
}

} // namespace pdhp
