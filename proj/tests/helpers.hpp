#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "blindeval/label_store.hpp"

namespace testhelp {

// Ids are zero-padded so sorted judgment order equals matrix order.
inline std::string cid(std::size_t k) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "c%02zu", k);
    return buf;
}

inline std::string iid(std::size_t m) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "i%04zu", m);
    return buf;
}

inline blindeval::LabelMatrix make_matrix(const std::vector<std::vector<int>>& rows) {
    const std::size_t k_count = rows.size();
    const std::size_t m_count = rows.empty() ? 0 : rows[0].size();
    std::vector<std::string> classifiers;
    std::vector<std::string> items;
    std::vector<std::uint8_t> labels;
    for (std::size_t k = 0; k < k_count; ++k) classifiers.push_back(cid(k));
    for (std::size_t m = 0; m < m_count; ++m) items.push_back(iid(m));
    for (const auto& row : rows)
        for (int cell : row) labels.push_back(static_cast<std::uint8_t>(cell));
    return {std::move(classifiers), std::move(items), std::move(labels)};
}

inline blindeval::JudgmentSet make_judgments(
    const blindeval::LabelMatrix& matrix, const std::vector<int>& labels,
    blindeval::JudgmentSource source = blindeval::JudgmentSource::gold) {
    std::map<std::string, std::uint8_t> entries;
    for (std::size_t m = 0; m < labels.size(); ++m)
        entries[matrix.item_ids()[m]] = static_cast<std::uint8_t>(labels[m]);
    return {std::move(entries), source};
}

inline blindeval::LabelMatrix random_matrix(std::mt19937& gen, std::size_t k_count,
                                            std::size_t m_count) {
    std::vector<std::vector<int>> rows(k_count, std::vector<int>(m_count));
    std::bernoulli_distribution bit(0.5);
    for (auto& row : rows)
        for (auto& cell : row) cell = bit(gen) ? 1 : 0;
    return make_matrix(rows);
}

}  // namespace testhelp
