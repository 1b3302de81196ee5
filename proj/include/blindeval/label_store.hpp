#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace blindeval {

// Dense K x M matrix of binary labels: K classifiers each labeling the
// same M items. Immutable after construction and safe to share across
// threads.
class LabelMatrix {
public:
    // labels is row-major K x M, every cell 0 or 1. Ids must be
    // duplicate-free. K >= 1 and M >= 0 are accepted here so that
    // degenerate carriers (single classifier, empty restriction) can be
    // built in-process; file loading enforces the stricter K >= 2, M >= 1.
    LabelMatrix(std::vector<std::string> classifier_ids, std::vector<std::string> item_ids,
                std::vector<std::uint8_t> labels);

    std::size_t classifier_count() const { return classifier_ids_.size(); }
    std::size_t item_count() const { return item_ids_.size(); }

    const std::vector<std::string>& classifier_ids() const { return classifier_ids_; }
    const std::vector<std::string>& item_ids() const { return item_ids_; }

    std::uint8_t label(std::size_t classifier, std::size_t item) const {
        return labels_[classifier * item_ids_.size() + item];
    }
    // All labels of one classifier, in item order.
    std::span<const std::uint8_t> row(std::size_t classifier) const {
        return {labels_.data() + classifier * item_ids_.size(), item_ids_.size()};
    }

    std::optional<std::size_t> item_index(const std::string& item_id) const;
    std::optional<std::size_t> classifier_index(const std::string& classifier_id) const;

private:
    std::vector<std::string> classifier_ids_;
    std::vector<std::string> item_ids_;
    std::vector<std::uint8_t> labels_;  // row-major K x M
    std::unordered_map<std::string, std::size_t> item_index_;
    std::unordered_map<std::string, std::size_t> classifier_index_;
};

enum class JudgmentSource { gold, crowd, pseudo_gold };

const char* to_string(JudgmentSource source);

// One binary label per item for some set of items. May cover only a
// subset of a matrix's items. Entries iterate in sorted item-id order.
class JudgmentSet {
public:
    JudgmentSet() : source_(JudgmentSource::gold) {}
    JudgmentSet(std::map<std::string, std::uint8_t> entries, JudgmentSource source,
                std::string method_name = "");

    const std::map<std::string, std::uint8_t>& entries() const { return entries_; }
    JudgmentSource source() const { return source_; }
    // Producing method for pseudo-gold sets, empty otherwise.
    const std::string& method_name() const { return method_name_; }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::optional<std::uint8_t> label(const std::string& item_id) const;

private:
    std::map<std::string, std::uint8_t> entries_;
    JudgmentSource source_;
    std::string method_name_;
};

// A label matrix with optional gold and crowd judgments over its items.
struct Dataset {
    LabelMatrix matrix;
    std::optional<JudgmentSet> gold;
    std::optional<JudgmentSet> crowd;
};

// Checks that every judged item exists in the matrix; throws DataError.
Dataset make_dataset(LabelMatrix matrix, std::optional<JudgmentSet> gold,
                     std::optional<JudgmentSet> crowd);

// File format (see README): header `item_id,<cid1>,...,<cidK>`, one row
// per item with cells in {0,1}. Lines starting with '#' are skipped.
LabelMatrix load_label_matrix(const std::string& path);
LabelMatrix parse_label_matrix(std::istream& in, const std::string& path_for_errors);

// Two-column file: header `item_id,label`, then one row per item.
// An empty file yields an empty set.
JudgmentSet load_judgment_set(const std::string& path, JudgmentSource source);
JudgmentSet parse_judgment_set(std::istream& in, const std::string& path_for_errors,
                               JudgmentSource source);

// Column subset in matrix item order, classifier order preserved.
// Throws DataError on unknown item ids. An empty item set yields a
// valid M=0 carrier.
LabelMatrix restrict(const LabelMatrix& matrix, const std::unordered_set<std::string>& items);

// Canonical writers: header then rows in stored order, LF line endings.
// Loading a canonically formatted file and writing it back is
// byte-identical.
void write_label_matrix(const LabelMatrix& matrix, std::ostream& out);
void write_label_matrix(const LabelMatrix& matrix, const std::string& path);
void write_judgment_set(const JudgmentSet& judgments, std::ostream& out);
void write_judgment_set(const JudgmentSet& judgments, const std::string& path);

}  // namespace blindeval
