#include "blockcoh/io.hpp"

#include <fstream>

namespace blockcoh {
namespace io {

json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaViolation("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaViolation(path + ": " + e.what());
    }
}

void save_document(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw SchemaViolation("cannot write " + path);
    out << doc.dump(2) << '\n';
}

Cx parse_complex(const json& node, const std::string& where) {
    if (node.is_number()) return Cx(node.get<double>(), 0.0);
    if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number())
        return Cx(node[0].get<double>(), node[1].get<double>());
    throw SchemaViolation(where + ": expected a number or [re, im]");
}

Vector parse_vector(const json& node, const std::string& where) {
    if (!node.is_array() || node.empty())
        throw SchemaViolation(where + ": expected a non-empty array");
    Vector v(node.size());
    for (std::size_t i = 0; i < node.size(); ++i)
        v(static_cast<int>(i)) = parse_complex(node[i], where + "/" + std::to_string(i));
    return v;
}

Matrix parse_matrix(const json& node, const std::string& where) {
    if (!node.is_array() || node.empty())
        throw SchemaViolation(where + ": expected a non-empty array of rows");
    const std::size_t rows = node.size();
    std::size_t cols = 0;
    Matrix m;
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = node[r];
        const std::string rwhere = where + "/" + std::to_string(r);
        if (!row.is_array() || row.empty())
            throw SchemaViolation(rwhere + ": expected a non-empty row array");
        if (r == 0) {
            cols = row.size();
            m.resize(rows, cols);
        } else if (row.size() != cols) {
            throw SchemaViolation(rwhere + ": ragged row (expected " + std::to_string(cols) +
                                  " entries)");
        }
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<int>(r), static_cast<int>(c)) =
                parse_complex(row[c], rwhere + "/" + std::to_string(c));
    }
    return m;
}

BlockStructure parse_structure(const json& doc) {
    if (!doc.contains("groups")) throw SchemaViolation("/groups: missing");
    const json& groups = doc["groups"];
    if (!groups.is_array() || groups.empty())
        throw SchemaViolation("/groups: expected a non-empty array of index arrays");
    std::vector<std::vector<int>> g;
    int dim = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const std::string where = "/groups/" + std::to_string(i);
        if (!groups[i].is_array()) throw SchemaViolation(where + ": expected an index array");
        std::vector<int> part;
        for (std::size_t j = 0; j < groups[i].size(); ++j) {
            if (!groups[i][j].is_number_integer())
                throw SchemaViolation(where + "/" + std::to_string(j) + ": expected an integer");
            part.push_back(groups[i][j].get<int>());
            dim = std::max(dim, part.back() + 1);
        }
        g.push_back(std::move(part));
    }
    try {
        return BlockStructure(g, dim);
    } catch (const Error& e) {
        throw SchemaViolation(std::string("/groups: ") + e.what());
    }
}

Vector parse_amplitudes(const json& doc) {
    if (!doc.contains("amplitudes")) throw SchemaViolation("/amplitudes: missing");
    return parse_vector(doc["amplitudes"], "/amplitudes");
}

Matrix parse_square_matrix(const json& doc) {
    if (!doc.contains("matrix")) throw SchemaViolation("/matrix: missing");
    Matrix m = parse_matrix(doc["matrix"], "/matrix");
    if (m.rows() != m.cols()) throw SchemaViolation("/matrix: expected a square matrix");
    return m;
}

KrausChannel parse_channel(const json& doc, const BlockStructure& s) {
    if (!doc.contains("kraus")) throw SchemaViolation("/kraus: missing");
    const json& ops = doc["kraus"];
    if (!ops.is_array() || ops.empty())
        throw SchemaViolation("/kraus: expected a non-empty array of matrices");
    std::vector<Matrix> kraus;
    for (std::size_t i = 0; i < ops.size(); ++i)
        kraus.push_back(parse_matrix(ops[i], "/kraus/" + std::to_string(i)));
    try {
        KrausChannel ch(std::move(kraus), s);
        auto rep = validate_cptp(ch);
        if (!rep.ok)
            throw SchemaViolation("/kraus: completeness residual " + std::to_string(rep.residual));
        return ch;
    } catch (const DimensionMismatch& e) {
        throw SchemaViolation(std::string("/kraus: ") + e.what());
    }
}

json complex_to_json(const Cx& z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

json structure_to_json(const BlockStructure& s) {
    json groups = json::array();
    for (const auto& g : s.groups()) groups.push_back(g);
    return json{{"groups", groups}};
}

json channel_to_json(const KrausChannel& ch) {
    json ops = json::array();
    for (const Matrix& k : ch.kraus) ops.push_back(matrix_to_json(k));
    return json{{"kraus", ops}};
}

}  // namespace io
}  // namespace blockcoh
