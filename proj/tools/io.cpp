#include "io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace hvh::cli {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token) {
    token = trim(token);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("not a number: '" + std::string(token) + "'");
    }
    return value;
}

Point json_vector(const json& node, const std::string& what) {
    if (!node.is_array()) throw ParseError(what + " must be an array of numbers");
    Point out;
    out.reserve(node.size());
    for (const auto& v : node) {
        if (!v.is_number()) throw ParseError(what + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<Point> json_points(const json& node, const std::string& what) {
    if (!node.is_array()) throw ParseError(what + " must be an array of arrays");
    std::vector<Point> out;
    out.reserve(node.size());
    for (const auto& p : node) out.push_back(json_vector(p, what + " entry"));
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

InputDocument parse_json_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("input document must be a JSON object");
    if (!doc.contains("points")) throw ParseError("input document has no \"points\"");

    InputDocument out;
    out.points = json_points(doc["points"], "points");
    if (doc.contains("reference")) out.reference = json_vector(doc["reference"], "reference");

    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) throw ParseError("mode must be a string");
        const auto mode = doc["mode"].get<std::string>();
        if (mode == "objective") out.mode = InputMode::objective;
        else if (mode == "decision") out.mode = InputMode::decision;
        else throw ParseError("unknown mode '" + mode + "'");
    }
    if (doc.contains("problem")) {
        const auto& node = doc["problem"];
        if (!node.is_object()) throw ParseError("problem must be an object");
        ProblemParams problem;
        if (node.contains("name")) {
            if (!node["name"].is_string()) throw ParseError("problem.name must be a string");
            problem.name = node["name"].get<std::string>();
        }
        if (problem.name != "quad") throw ParseError("unknown problem '" + problem.name + "'");
        if (!node.contains("centers")) throw ParseError("problem.centers is required");
        problem.centers = json_points(node["centers"], "problem.centers");
        out.problem = std::move(problem);
    }
    if (out.mode == InputMode::decision && !out.problem) throw ParseError("decision mode needs a problem");
    return out;
}

std::vector<Point> parse_csv_points(std::string_view text) {
    std::vector<Point> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        try {
            out.push_back(parse_vector(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

Point parse_vector(std::string_view text) {
    Point out;
    for (;;) {
        const auto comma = text.find(',');
        out.push_back(parse_number(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return out;
}

InputDocument read_input(const std::string& path, const std::optional<Point>& reference) {
    const std::string text = slurp(path);
    InputDocument doc;
    if (path.size() >= 4 && path.ends_with(".csv")) {
        if (!reference) throw ParseError("CSV input needs --ref");
        doc.points = parse_csv_points(text);
    } else {
        doc = parse_json_document(text);
    }
    if (reference) doc.reference = *reference;
    if (doc.reference.empty()) throw ParseError("no reference point given");
    return doc;
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_sparse(std::ostream& out, const SparseSymMatrix& matrix) {
    out << "dim=" << matrix.dim() << '\n' << "nonzeros=" << matrix.nonzero_count() << '\n';
    for (const auto& e : matrix.full_entries()) out << e.row << ' ' << e.col << ' ' << format_double(e.value) << '\n';
}

SparseSymMatrix read_sparse(std::istream& in) {
    const auto header = [&](const std::string& key) {
        std::string line;
        if (!std::getline(in, line) || !line.starts_with(key + "=")) throw ParseError("expected '" + key + "=' line");
        std::size_t value = 0;
        const std::string_view digits = trim(std::string_view(line).substr(key.size() + 1));
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
            throw ParseError("bad " + key + " value");
        }
        return value;
    };
    const std::size_t dim = header("dim");
    const std::size_t nonzeros = header("nonzeros");

    std::vector<MatrixEntry> entries;
    entries.reserve(nonzeros);
    std::string line;
    while (entries.size() < nonzeros) {
        if (!std::getline(in, line)) {
            throw ParseError("header promises " + std::to_string(nonzeros) + " entries, found " +
                             std::to_string(entries.size()));
        }
        std::istringstream fields(line);
        MatrixEntry e{0, 0, 0.0};
        std::string value;
        if (!(fields >> e.row >> e.col >> value)) throw ParseError("bad entry line '" + line + "'");
        e.value = parse_number(value);
        if (e.row >= dim || e.col >= dim) throw ParseError("entry outside a " + std::to_string(dim) + " matrix");
        entries.push_back(e);
    }
    try {
        return SparseSymMatrix::from_entries(dim, std::move(entries), 0.0, 0.0);
    } catch (const Error& e) {
        throw ParseError(std::string("inconsistent matrix: ") + e.what());
    }
}

void write_dense_csv(std::ostream& out, const Eigen::MatrixXd& matrix) {
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            if (c > 0) out << ',';
            out << format_double(matrix(r, c));
        }
        out << '\n';
    }
}

} // namespace hvh::cli
