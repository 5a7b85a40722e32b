#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "txdiag/graph.hpp"
#include "txdiag/hier_engine.hpp"
#include "txdiag/matrix.hpp"
#include "txdiag/xor_diagnosis.hpp"

namespace txdiag::io {

// Thrown for unreadable files; parse errors inside a readable file raise
// txdiag::Error with ErrorCode::Format.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Graph JSON: {nodes, arcs: [{id, from, to}], monitors, tests}. A test path is
// either node names or {from, block, to} hops.
struct ModelFile {
    TransactionGraph graph;
    std::vector<TestSegment> tests;

    bool operator==(const ModelFile&) const = default;
};

ModelFile parse_model_json(const std::string& text);
std::string model_to_json(const ModelFile& model);

// A tests file is a JSON array of tests or any object with a "tests" key
// (so a graph file doubles as a tests file).
std::vector<TestSegment> parse_tests_json(const std::string& text);
std::string tests_to_json(const std::vector<TestSegment>& tests);

// Matrix CSV: header "row,monitor,<blocks>", then "<test>,<monitor>,<bits>".
// With `transposed`, the file is the cell-wise transpose of that grid.
ActivationMatrix parse_matrix_csv(const std::string& text, bool transposed = false);
std::string matrix_to_csv(const ActivationMatrix& m);

// Table rendering: '1' for set bits, '.' for clear ones.
std::string render_matrix_text(const ActivationMatrix& m);

// Response file: "<test>,<monitor>,<0|1>" per row in any order; every matrix
// row must appear exactly once.
ResponseVector parse_response(const std::string& text, const ActivationMatrix& m);
std::string response_to_text(const ActivationMatrix& m, const ResponseVector& r);

// Comma-separated id list ("S3,S6,S9").
std::vector<std::string> split_list(const std::string& text);

// Tree JSON: {"matrix": "<csv path>", "children": {"<block>": <tree object or
// path to a tree JSON file>}}. Relative paths resolve against the directory
// of the file that names them.
DiagnosisTree load_tree(const std::filesystem::path& path);

// Reads "<branch>.resp" from a directory when the engine visits a node
// (root.resp, root.B4.resp, ...). A missing file raises IoError.
class DirectoryResponseProvider : public ResponseProvider {
public:
    explicit DirectoryResponseProvider(std::filesystem::path dir) : dir_(std::move(dir)) {}
    ResponseVector response(const TreeLocation& where, const ActivationMatrix& matrix) const override;

private:
    std::filesystem::path dir_;
};

}  // namespace txdiag::io
