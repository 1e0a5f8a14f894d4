#include "copt/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace copt {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json vectors_to_json(const std::vector<Vector>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(v);
    return out;
}

std::vector<Vector> vectors_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
    std::vector<Vector> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(e.get<Vector>());
    return out;
}

} // namespace

json cell_to_json(const Cell& cell, const Box& root) {
    json j;
    if (cell.is_simplex()) {
        const auto& s = std::get<Simplex>(cell.shape);
        j["kind"] = "simplex";
        j["vertices"] = vectors_to_json(s.vertices);
        j["apexes"] = json::array();
        j["fixed"] = json::object();
    } else {
        const auto& bp = std::get<BoundaryPolytope>(cell.shape);
        j["kind"] = "boundary";
        j["vertices"] = vectors_to_json(face_vertices(bp.base));
        j["apexes"] = vectors_to_json(bp.apexes);
        json fixed = json::object();
        for (const auto& [axis, bound] : bp.base.fixed) {
            fixed[std::to_string(axis)] = bound == Bound::Lower ? "lower" : "upper";
        }
        j["fixed"] = fixed;
    }
    (void)root;
    return j;
}

Cell cell_from_json(const json& j, const Box& root, CellId id) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "simplex") {
        return make_simplex_cell(id, vectors_from_json(j.at("vertices"), "cell.vertices"));
    }
    if (kind != "boundary") throw std::invalid_argument("cell: unknown kind '" + kind + "'");
    BoxFace face;
    face.box = root;
    for (const auto& [key, val] : j.at("fixed").items()) {
        const std::size_t axis = std::stoul(key);
        if (axis >= root.dim()) throw std::invalid_argument("cell.fixed: axis out of range");
        const std::string side = val.get<std::string>();
        if (side != "lower" && side != "upper") {
            throw std::invalid_argument("cell.fixed: bound must be 'lower' or 'upper'");
        }
        face.fixed[axis] = side == "lower" ? Bound::Lower : Bound::Upper;
    }
    return make_cell(id, vectors_from_json(j.at("apexes"), "cell.apexes"), std::move(face));
}

json division_to_json(const Division& div, const std::vector<Vector>& gamma) {
    json j;
    j["schema"] = kDivisionSchema;
    j["root"] = {{"lower", div.root.lower}, {"upper", div.root.upper}};
    json cells = json::array();
    for (const auto& [id, cell] : div.cells) {
        json c = cell_to_json(cell, div.root);
        c["id"] = id;
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    if (!gamma.empty()) j["gamma"] = vectors_to_json(gamma);
    return j;
}

Division division_from_json(const json& j) {
    if (j.value("schema", std::string()) != kDivisionSchema) {
        throw std::invalid_argument("division: missing or unsupported schema tag");
    }
    Division div;
    div.root.lower = j.at("root").at("lower").get<Vector>();
    div.root.upper = j.at("root").at("upper").get<Vector>();
    validate_box(div.root);
    for (const auto& c : j.at("cells")) {
        const CellId id = c.at("id").get<CellId>();
        Cell cell = cell_from_json(c, div.root, id);
        if (!div.cells.emplace(id, cell).second) {
            throw std::invalid_argument("division: duplicate cell id " + std::to_string(id));
        }
        div.barycenters.emplace(id, barycenter(cell));
        div.next_id = std::max(div.next_id, id + 1);
    }
    if (div.cells.empty()) throw std::invalid_argument("division: no cells");
    return div;
}

std::vector<Vector> gamma_from_json(const json& j) {
    if (!j.contains("gamma")) return {};
    return vectors_from_json(j.at("gamma"), "gamma");
}

json eim_to_json(const EimBasis& basis) {
    json j;
    j["schema"] = kEimSchema;
    j["Q"] = vectors_to_json(basis.Q);
    j["I"] = basis.I;
    json rows = json::array();
    for (std::size_t r = 0; r < basis.B.rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < basis.B.cols; ++c) row.push_back(basis.B(r, c));
        rows.push_back(std::move(row));
    }
    j["B"] = std::move(rows);
    return j;
}

EimBasis eim_from_json(const json& j) {
    if (j.value("schema", std::string()) != kEimSchema) {
        throw std::invalid_argument("eim basis: missing or unsupported schema tag");
    }
    EimBasis basis;
    basis.Q = vectors_from_json(j.at("Q"), "eim.Q");
    basis.I = j.at("I").get<std::vector<std::size_t>>();
    const auto& rows = j.at("B");
    const std::size_t k = basis.Q.size();
    if (basis.I.size() != k || rows.size() != k) {
        throw std::invalid_argument("eim basis: Q, I, B size mismatch");
    }
    basis.B = Matrix(k, k);
    for (std::size_t r = 0; r < k; ++r) {
        const auto row = rows[r].get<Vector>();
        if (row.size() != k) throw std::invalid_argument("eim basis: B is not square");
        for (std::size_t c = 0; c < k; ++c) basis.B(r, c) = row[c];
    }
    return basis;
}

std::string trace_to_csv(const std::vector<StepRecord>& trace, const std::string& config_line) {
    std::ostringstream out;
    out << "# schema=" << kTraceSchema << "\n";
    out << "# config=" << config_line << "\n";
    out << "step,selected_cell,err,n_cells,distinct_points,total_evals,wall_ms\n";
    char buf[64];
    for (const auto& r : trace) {
        out << r.step << ',' << r.selected_cell << ',' << fmt_double(r.err) << ',' << r.n_cells
            << ',' << r.distinct_points << ',' << r.total_evals << ',';
        std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
        out << buf << "\n";
    }
    return out.str();
}

std::string strip_wall_ms(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            const auto pos = line.rfind(',');
            if (pos != std::string::npos) line.erase(pos);
        }
        out << line << "\n";
    }
    return out.str();
}

std::string render_division_svg(const Division& div, const std::vector<Vector>& gamma) {
    if (div.root.dim() != 2) {
        throw std::invalid_argument("svg rendering requires a 2-dimensional division");
    }
    const Box& box = div.root;
    const double side = 600.0;
    const double margin = 20.0;
    const double wx = box.upper[0] - box.lower[0];
    const double wy = box.upper[1] - box.lower[1];
    const double scale = std::min((side - 2 * margin) / wx, (side - 2 * margin) / wy);
    auto sx = [&](double x) { return margin + (x - box.lower[0]) * scale; };
    // SVG y grows downward; flip so the plot reads like the plane.
    auto sy = [&](double y) { return side - margin - (y - box.lower[1]) * scale; };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
        << "\" viewBox=\"0 0 " << side << " " << side << "\">\n";
    out << "<rect x=\"" << fmt(sx(box.lower[0])) << "\" y=\"" << fmt(sy(box.upper[1]))
        << "\" width=\"" << fmt(wx * scale) << "\" height=\"" << fmt(wy * scale)
        << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (const auto& [id, cell] : div.cells) {
        out << "<polygon points=\"";
        bool first = true;
        for (const auto& v : cell.vertex_list()) {
            if (!first) out << ' ';
            out << fmt(sx(v[0])) << ',' << fmt(sy(v[1]));
            first = false;
        }
        out << "\" fill=\"none\" stroke=\"#3366aa\" stroke-width=\"1\"/>\n";
        const Vector b = div.barycenters.count(id) ? div.barycenters.at(id) : barycenter(cell);
        out << "<circle cx=\"" << fmt(sx(b[0])) << "\" cy=\"" << fmt(sy(b[1]))
            << "\" r=\"2\" fill=\"#aa6633\"/>\n";
    }
    for (const auto& g : gamma) {
        out << "<circle cx=\"" << fmt(sx(g[0])) << "\" cy=\"" << fmt(sy(g[1]))
            << "\" r=\"3.5\" fill=\"black\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace copt
