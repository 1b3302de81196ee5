#include "blindeval/label_store.hpp"

#include <fstream>
#include <sstream>

#include "blindeval/errors.hpp"

namespace blindeval {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

// Reads the next meaningful line, skipping comments and blank lines.
// Returns false at EOF. line_no tracks physical 1-based line numbers.
bool next_record(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        return true;
    }
    return false;
}

std::uint8_t parse_binary_cell(const std::string& field, const std::string& path,
                               std::size_t line, std::size_t column) {
    if (field == "0") return 0;
    if (field == "1") return 1;
    throw ParseError(path, line, column, "expected 0 or 1, got \"" + field + "\"");
}

}  // namespace

LabelMatrix::LabelMatrix(std::vector<std::string> classifier_ids,
                         std::vector<std::string> item_ids, std::vector<std::uint8_t> labels)
    : classifier_ids_(std::move(classifier_ids)),
      item_ids_(std::move(item_ids)),
      labels_(std::move(labels)) {
    if (classifier_ids_.empty()) throw DataError("label matrix needs at least one classifier");
    if (labels_.size() != classifier_ids_.size() * item_ids_.size()) {
        throw DataError("label matrix shape mismatch");
    }
    for (std::uint8_t cell : labels_) {
        if (cell > 1) throw DataError("label matrix cell outside {0,1}");
    }
    for (std::size_t k = 0; k < classifier_ids_.size(); ++k) {
        if (!classifier_index_.emplace(classifier_ids_[k], k).second) {
            throw DataError("duplicate classifier id: " + classifier_ids_[k]);
        }
    }
    for (std::size_t m = 0; m < item_ids_.size(); ++m) {
        if (!item_index_.emplace(item_ids_[m], m).second) {
            throw DataError("duplicate item id: " + item_ids_[m]);
        }
    }
}

std::optional<std::size_t> LabelMatrix::item_index(const std::string& item_id) const {
    const auto it = item_index_.find(item_id);
    if (it == item_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> LabelMatrix::classifier_index(const std::string& classifier_id) const {
    const auto it = classifier_index_.find(classifier_id);
    if (it == classifier_index_.end()) return std::nullopt;
    return it->second;
}

const char* to_string(JudgmentSource source) {
    switch (source) {
        case JudgmentSource::gold: return "gold";
        case JudgmentSource::crowd: return "crowd";
        case JudgmentSource::pseudo_gold: return "pseudo_gold";
    }
    return "unknown";
}

JudgmentSet::JudgmentSet(std::map<std::string, std::uint8_t> entries, JudgmentSource source,
                         std::string method_name)
    : entries_(std::move(entries)), source_(source), method_name_(std::move(method_name)) {
    for (const auto& [id, label] : entries_) {
        if (label > 1) throw DataError("judgment label outside {0,1} for item " + id);
    }
}

std::optional<std::uint8_t> JudgmentSet::label(const std::string& item_id) const {
    const auto it = entries_.find(item_id);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

Dataset make_dataset(LabelMatrix matrix, std::optional<JudgmentSet> gold,
                     std::optional<JudgmentSet> crowd) {
    for (const auto* judgments : {&gold, &crowd}) {
        if (!judgments->has_value()) continue;
        for (const auto& [item_id, label] : (*judgments)->entries()) {
            (void)label;
            if (!matrix.item_index(item_id)) {
                throw DataError("judged item not present in matrix: " + item_id);
            }
        }
    }
    return Dataset{std::move(matrix), std::move(gold), std::move(crowd)};
}

LabelMatrix parse_label_matrix(std::istream& in, const std::string& path) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_record(in, line, line_no)) {
        throw ParseError(path, line_no == 0 ? 1 : line_no, 1, "missing header row");
    }
    std::vector<std::string> header = split_fields(line);
    if (header.size() < 2 || header[0] != "item_id") {
        throw ParseError(path, line_no, 1, "header must be item_id,<classifier ids>");
    }
    std::vector<std::string> classifier_ids(header.begin() + 1, header.end());
    if (classifier_ids.size() < 2) {
        throw ParseError(path, line_no, 2, "need at least two classifier columns");
    }

    std::vector<std::string> item_ids;
    // Collected item-major, transposed into classifier-major storage below.
    std::vector<std::uint8_t> cells_by_item;
    while (next_record(in, line, line_no)) {
        std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw ParseError(path, line_no, fields.size(),
                             "expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw ParseError(path, line_no, 1, "empty item id");
        item_ids.push_back(fields[0]);
        for (std::size_t k = 0; k < classifier_ids.size(); ++k) {
            cells_by_item.push_back(parse_binary_cell(fields[k + 1], path, line_no, k + 2));
        }
    }
    if (item_ids.empty()) throw ParseError(path, line_no, 1, "matrix has no item rows");

    const std::size_t K = classifier_ids.size();
    const std::size_t M = item_ids.size();
    std::vector<std::uint8_t> labels(K * M);
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t k = 0; k < K; ++k) {
            labels[k * M + m] = cells_by_item[m * K + k];
        }
    }
    try {
        return LabelMatrix(std::move(classifier_ids), std::move(item_ids), std::move(labels));
    } catch (const DataError& e) {
        throw ParseError(path, line_no, 1, e.what());
    }
}

LabelMatrix load_label_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    return parse_label_matrix(in, path);
}

JudgmentSet parse_judgment_set(std::istream& in, const std::string& path,
                               JudgmentSource source) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_record(in, line, line_no)) {
        return JudgmentSet({}, source);  // empty file: valid empty set
    }
    if (line != "item_id,label") {
        throw ParseError(path, line_no, 1, "header must be item_id,label");
    }
    std::map<std::string, std::uint8_t> entries;
    while (next_record(in, line, line_no)) {
        std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 2) {
            throw ParseError(path, line_no, fields.size(), "expected item_id,label");
        }
        if (fields[0].empty()) throw ParseError(path, line_no, 1, "empty item id");
        const std::uint8_t label = parse_binary_cell(fields[1], path, line_no, 2);
        if (!entries.emplace(fields[0], label).second) {
            throw ParseError(path, line_no, 1, "duplicate item id: " + fields[0]);
        }
    }
    return JudgmentSet(std::move(entries), source);
}

JudgmentSet load_judgment_set(const std::string& path, JudgmentSource source) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    return parse_judgment_set(in, path, source);
}

LabelMatrix restrict(const LabelMatrix& matrix, const std::unordered_set<std::string>& items) {
    for (const std::string& id : items) {
        if (!matrix.item_index(id)) throw DataError("unknown item id in restriction: " + id);
    }
    std::vector<std::string> kept_ids;
    std::vector<std::size_t> kept_cols;
    for (std::size_t m = 0; m < matrix.item_count(); ++m) {
        if (items.count(matrix.item_ids()[m])) {
            kept_ids.push_back(matrix.item_ids()[m]);
            kept_cols.push_back(m);
        }
    }
    const std::size_t K = matrix.classifier_count();
    std::vector<std::uint8_t> labels(K * kept_cols.size());
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t j = 0; j < kept_cols.size(); ++j) {
            labels[k * kept_cols.size() + j] = matrix.label(k, kept_cols[j]);
        }
    }
    return LabelMatrix(matrix.classifier_ids(), std::move(kept_ids), std::move(labels));
}

void write_label_matrix(const LabelMatrix& matrix, std::ostream& out) {
    out << "item_id";
    for (const std::string& cid : matrix.classifier_ids()) out << ',' << cid;
    out << '\n';
    for (std::size_t m = 0; m < matrix.item_count(); ++m) {
        out << matrix.item_ids()[m];
        for (std::size_t k = 0; k < matrix.classifier_count(); ++k) {
            out << ',' << static_cast<int>(matrix.label(k, m));
        }
        out << '\n';
    }
}

void write_label_matrix(const LabelMatrix& matrix, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    write_label_matrix(matrix, out);
}

void write_judgment_set(const JudgmentSet& judgments, std::ostream& out) {
    out << "item_id,label\n";
    for (const auto& [item_id, label] : judgments.entries()) {
        out << item_id << ',' << static_cast<int>(label) << '\n';
    }
}

void write_judgment_set(const JudgmentSet& judgments, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    write_judgment_set(judgments, out);
}

}  // namespace blindeval
