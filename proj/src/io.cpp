#include "txdiag/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "txdiag/error.hpp"

namespace txdiag::io {

using json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Format, std::string("invalid JSON: ") + e.what());
    }
}

std::string require_string(const json& j, const char* what) {
    if (!j.is_string()) throw Error(ErrorCode::Format, std::string(what) + " must be a string");
    return j.get<std::string>();
}

const json& require_key(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw Error(ErrorCode::Format, std::string("missing key '") + key + "'");
    }
    return obj.at(key);
}

std::vector<std::string> string_array(const json& j, const char* what) {
    if (!j.is_array()) throw Error(ErrorCode::Format, std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) out.push_back(require_string(e, what));
    return out;
}

TestSegment parse_test(const json& j) {
    TestSegment t;
    t.id = require_string(require_key(j, "id"), "test id");
    const json& path = require_key(j, "path");
    if (!path.is_array() || path.empty()) throw Error(ErrorCode::Format, "test '" + t.id + "' needs a non-empty path");
    if (path.front().is_object()) {
        for (const auto& hop : path) {
            const auto from = require_string(require_key(hop, "from"), "hop from");
            const auto block = require_string(require_key(hop, "block"), "hop block");
            const auto to = require_string(require_key(hop, "to"), "hop to");
            if (t.path.empty()) {
                t.path.push_back(from);
            } else if (t.path.back() != from) {
                throw Error(ErrorCode::Format, "test '" + t.id + "': hop from " + from + " does not continue the path");
            }
            t.blocks.push_back(block);
            t.path.push_back(to);
        }
    } else {
        t.path = string_array(path, "test path");
    }
    return t;
}

json test_to_json(const TestSegment& t) {
    json path = json::array();
    if (t.blocks.empty()) {
        for (const auto& v : t.path) path.push_back(v);
    } else {
        for (std::size_t k = 0; k < t.blocks.size(); ++k) {
            path.push_back(json{{"from", t.path[k]}, {"block", t.blocks[k]}, {"to", t.path[k + 1]}});
        }
    }
    return json{{"id", t.id}, {"path", path}};
}

std::vector<TestSegment> parse_test_array(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::Format, "tests must be an array");
    std::vector<TestSegment> out;
    for (const auto& t : j) out.push_back(parse_test(t));
    return out;
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream ss(text);
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

bool parse_bit(const std::string& cell, const std::string& where) {
    if (cell == "1") return true;
    if (cell == "0") return false;
    throw Error(ErrorCode::Format, where + ": bit cell must be 0 or 1, got '" + cell + "'");
}

}  // namespace

ModelFile parse_model_json(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw Error(ErrorCode::Format, "graph file must be a JSON object");
    auto nodes = string_array(require_key(j, "nodes"), "nodes");
    std::vector<Arc> arcs;
    const json& ja = require_key(j, "arcs");
    if (!ja.is_array()) throw Error(ErrorCode::Format, "arcs must be an array");
    for (const auto& a : ja) {
        arcs.push_back({require_string(require_key(a, "id"), "arc id"), require_string(require_key(a, "from"), "arc from"),
                        require_string(require_key(a, "to"), "arc to")});
    }
    std::vector<NodeId> monitors;
    if (j.contains("monitors")) monitors = string_array(j.at("monitors"), "monitors");
    ModelFile model{TransactionGraph(std::move(nodes), std::move(arcs), std::move(monitors)), {}};
    if (j.contains("tests")) model.tests = parse_test_array(j.at("tests"));
    return model;
}

std::string model_to_json(const ModelFile& model) {
    json j;
    j["nodes"] = model.graph.nodes();
    json arcs = json::array();
    for (const auto& a : model.graph.arcs()) arcs.push_back(json{{"id", a.id}, {"from", a.from}, {"to", a.to}});
    j["arcs"] = arcs;
    j["monitors"] = model.graph.monitors();
    json tests = json::array();
    for (const auto& t : model.tests) tests.push_back(test_to_json(t));
    j["tests"] = tests;
    return j.dump(2) + "\n";
}

std::vector<TestSegment> parse_tests_json(const std::string& text) {
    const json j = parse_json(text);
    if (j.is_array()) return parse_test_array(j);
    return parse_test_array(require_key(j, "tests"));
}

std::string tests_to_json(const std::vector<TestSegment>& tests) {
    json arr = json::array();
    for (const auto& t : tests) arr.push_back(test_to_json(t));
    return json{{"tests", arr}}.dump(2) + "\n";
}

ActivationMatrix parse_matrix_csv(const std::string& text, bool transposed) {
    std::vector<std::vector<std::string>> grid;
    for (const auto& line : split_lines(text)) grid.push_back(split_cells(line));
    if (transposed && !grid.empty()) {
        const std::size_t width = grid.front().size();
        for (const auto& row : grid) {
            if (row.size() != width) throw Error(ErrorCode::Format, "transposed CSV is not rectangular");
        }
        std::vector<std::vector<std::string>> t(width, std::vector<std::string>(grid.size()));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (std::size_t j = 0; j < width; ++j) t[j][i] = grid[i][j];
        }
        grid = std::move(t);
    }
    if (grid.empty()) throw Error(ErrorCode::Format, "matrix CSV is empty");
    const auto& header = grid.front();
    if (header.size() < 2 || header[0] != "row" || header[1] != "monitor") {
        throw Error(ErrorCode::Format, "matrix CSV header must start with 'row,monitor'");
    }
    std::vector<BlockId> cols(header.begin() + 2, header.end());
    std::vector<RowKey> rows;
    std::vector<BitVector> bits;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const auto& cells = grid[i];
        const std::string where = "matrix line " + std::to_string(i + 1);
        if (cells.size() != header.size()) {
            throw Error(ErrorCode::Format, where + " has " + std::to_string(cells.size()) + " cells, expected " +
                                               std::to_string(header.size()));
        }
        rows.push_back({cells[0], cells[1]});
        BitVector row(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) row.set(j, parse_bit(cells[j + 2], where));
        bits.push_back(std::move(row));
    }
    return ActivationMatrix(std::move(rows), std::move(cols), std::move(bits));
}

std::string matrix_to_csv(const ActivationMatrix& m) {
    std::string out = "row,monitor";
    for (const auto& c : m.cols()) out += "," + c;
    out += "\n";
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        out += m.rows()[i].test + "," + m.rows()[i].monitor;
        for (std::size_t j = 0; j < m.col_count(); ++j) out += m.bit(i, j) ? ",1" : ",0";
        out += "\n";
    }
    return out;
}

std::string render_matrix_text(const ActivationMatrix& m) {
    std::size_t label_width = 0;
    for (const auto& r : m.rows()) label_width = std::max(label_width, to_string(r).size());
    auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w - std::min(w, s.size()), ' ') + s; };

    std::string out(label_width, ' ');
    for (const auto& c : m.cols()) out += " " + c;
    out += "\n";
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        const std::string label = to_string(m.rows()[i]);
        out += label + std::string(label_width - label.size(), ' ');
        for (std::size_t j = 0; j < m.col_count(); ++j) {
            out += " " + pad_left(m.bit(i, j) ? "1" : ".", m.cols()[j].size());
        }
        out += "\n";
    }
    return out;
}

ResponseVector parse_response(const std::string& text, const ActivationMatrix& m) {
    ResponseVector r(m.row_count());
    std::vector<bool> seen(m.row_count(), false);
    std::size_t line_no = 0;
    for (const auto& line : split_lines(text)) {
        ++line_no;
        const auto cells = split_cells(line);
        const std::string where = "response line " + std::to_string(line_no);
        if (cells.size() != 3) throw Error(ErrorCode::Format, where + " must be '<test>,<monitor>,<0|1>'");
        const RowKey key{cells[0], cells[1]};
        auto i = m.row_index(key);
        if (!i) throw Error(ErrorCode::Format, where + ": no matrix row " + to_string(key));
        if (seen[*i]) throw Error(ErrorCode::Format, where + ": row " + to_string(key) + " given twice");
        seen[*i] = true;
        r.set(*i, parse_bit(cells[2], where));
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) throw Error(ErrorCode::Format, "response is missing row " + to_string(m.rows()[i]));
    }
    return r;
}

std::string response_to_text(const ActivationMatrix& m, const ResponseVector& r) {
    if (r.size() != m.row_count()) throw Error(ErrorCode::LengthMismatch, "response length differs from rows");
    std::string out;
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        out += m.rows()[i].test + "," + m.rows()[i].monitor + (r.test(i) ? ",1\n" : ",0\n");
    }
    return out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    for (auto& item : split_cells(text)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

namespace {

DiagnosisTree tree_from_json(const json& j, const std::filesystem::path& base, std::set<std::filesystem::path>& open) {
    if (j.is_string()) {
        const auto path = std::filesystem::weakly_canonical(base / j.get<std::string>());
        if (!open.insert(path).second) throw Error(ErrorCode::Format, "tree file includes itself: " + path.string());
        auto sub = tree_from_json(parse_json(read_file(path)), path.parent_path(), open);
        open.erase(path);
        return sub;
    }
    const auto matrix_path = base / require_string(require_key(j, "matrix"), "tree matrix");
    DiagnosisTree node(parse_matrix_csv(read_file(matrix_path)));
    if (j.contains("children")) {
        const json& children = j.at("children");
        if (!children.is_object()) throw Error(ErrorCode::Format, "tree children must be an object");
        for (const auto& [block, sub] : children.items()) node.add_child(block, tree_from_json(sub, base, open));
    }
    return node;
}

}  // namespace

DiagnosisTree load_tree(const std::filesystem::path& path) {
    std::set<std::filesystem::path> open{std::filesystem::weakly_canonical(path)};
    return tree_from_json(parse_json(read_file(path)), path.parent_path(), open);
}

ResponseVector DirectoryResponseProvider::response(const TreeLocation& where, const ActivationMatrix& matrix) const {
    return parse_response(read_file(dir_ / (where.branch + ".resp")), matrix);
}

}  // namespace txdiag::io
