#include "dirac/model.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "dirac/parser.hpp"

namespace dirac {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"')
            quoted = !quoted;
        else if (line[i] == '#' && !quoted)
            return line.substr(0, i);
    }
    return line;
}

bool is_ident(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

std::string unquote(const std::string& s, int line_no, const char* key) {
    std::string t = trim(s);
    if (t.size() < 2 || t.front() != '"' || t.back() != '"')
        throw ValidationError("model line " + std::to_string(line_no) + ": " + key +
                              " must be a quoted string");
    return t.substr(1, t.size() - 2);
}

std::vector<std::string> bracket_list(const std::string& s, int line_no, const char* key) {
    std::string t = trim(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ValidationError("model line " + std::to_string(line_no) + ": " + key +
                              " must be a bracketed list");
    std::vector<std::string> items;
    std::string body = t.substr(1, t.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            items.push_back(item);
    }
    if (items.empty() && !trim(body).empty())
        throw ValidationError("model line " + std::to_string(line_no) + ": malformed list");
    return items;
}

} // namespace

std::string momentum_name_for(const std::string& coordinate) {
    if (coordinate.size() > 1 && coordinate[0] == 'q')
        return "p" + coordinate.substr(1);
    return "p_" + coordinate;
}

DegenerateModel load_model_text(const std::string& content, const std::string& display_name) {
    std::map<std::string, std::pair<std::string, int>> entries;
    std::istringstream in(content);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(strip_comment(raw));
        if (line.empty())
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("model line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!is_ident(key))
            throw ValidationError("model line " + std::to_string(line_no) + ": bad key '" + key +
                                  "'");
        if (key != "name" && key != "coordinates" && key != "parameters" && key != "lagrangian")
            throw ValidationError("model line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
        if (!entries.emplace(key, std::make_pair(value, line_no)).second)
            throw ValidationError("model line " + std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
    }
    for (const char* key : {"name", "coordinates", "lagrangian"})
        if (!entries.count(key))
            throw ValidationError("model '" + display_name + "': missing key '" + key + "'");

    std::string model_name = unquote(entries["name"].first, entries["name"].second, "name");

    // Parameters.
    std::vector<VarInfo> params;
    std::vector<std::uint8_t> nonzero;
    if (entries.count("parameters")) {
        auto [value, pline] = entries["parameters"];
        for (const std::string& item : bracket_list(value, pline, "parameters")) {
            std::string name = item;
            bool nz = false;
            std::size_t bang = item.find("!=");
            if (bang != std::string::npos) {
                name = trim(item.substr(0, bang));
                std::string rhs = trim(item.substr(bang + 2));
                if (rhs != "0")
                    throw ValidationError("model line " + std::to_string(pline) +
                                          ": only '!= 0' assumptions are supported");
                nz = true;
            }
            if (!is_ident(name))
                throw ValidationError("model line " + std::to_string(pline) +
                                      ": bad parameter name '" + name + "'");
            params.push_back(VarInfo{name, VarRole::Aux, -1, -1, 0});
            nonzero.push_back(nz ? 1 : 0);
        }
    }

    // Coordinates and the [velocities | momenta | coordinates] layout.
    auto [cvalue, cline] = entries["coordinates"];
    std::vector<std::string> coord_names = bracket_list(cvalue, cline, "coordinates");
    if (coord_names.empty())
        throw ValidationError("model '" + model_name + "': coordinates list is empty");
    for (const std::string& c : coord_names)
        if (!is_ident(c))
            throw ValidationError("model line " + std::to_string(cline) +
                                  ": bad coordinate name '" + c + "'");
    const std::size_t n = coord_names.size();
    std::vector<VarInfo> vars;
    vars.reserve(3 * n);
    for (std::size_t i = 0; i < n; ++i)
        vars.push_back(VarInfo{"dot(" + coord_names[i] + ")", VarRole::Velocity,
                               static_cast<std::int32_t>(2 * n + i), -1, 0});
    for (std::size_t i = 0; i < n; ++i)
        vars.push_back(VarInfo{momentum_name_for(coord_names[i]), VarRole::Momentum,
                               static_cast<std::int32_t>(2 * n + i), -1, 0});
    for (std::size_t i = 0; i < n; ++i)
        vars.push_back(VarInfo{coord_names[i], VarRole::Coordinate, -1, -1, 0});

    TablePtr var_table = make_table(std::move(vars)); // throws on duplicate symbols
    TablePtr param_table = make_table(std::move(params));
    for (std::size_t i = 0; i < n; ++i) {
        // coordinates/momenta and parameters must not collide either
        if (param_table->find(coord_names[i]) ||
            param_table->find(momentum_name_for(coord_names[i])))
            throw ValidationError("model '" + model_name + "': symbol '" + coord_names[i] +
                                  "' declared as both coordinate/momentum and parameter");
    }
    RingPtr ring = std::make_shared<const Ring>(var_table, param_table, std::move(nonzero));
    std::vector<VarId> velocities, momenta, coordinates;
    for (std::size_t i = 0; i < n; ++i) {
        velocities.push_back(static_cast<VarId>(i));
        momenta.push_back(static_cast<VarId>(n + i));
        coordinates.push_back(static_cast<VarId>(2 * n + i));
    }

    auto [lvalue, lline] = entries["lagrangian"];
    std::string lagr = unquote(lvalue, lline, "lagrangian");
    OrderPtr order = make_order(MonomialOrder::degrevlex());
    PhasePoly lagrangian = [&] {
        try {
            return parse_expression(lagr, ring, order);
        } catch (const ParseError& e) {
            throw ParseError(std::string("in lagrangian: ") + e.what(), e.line(), e.column());
        }
    }();
    for (VarId v : lagrangian.support_vars()) {
        VarRole role = var_table->role(v);
        if (role != VarRole::Coordinate && role != VarRole::Velocity)
            throw ValidationError("model '" + model_name + "': lagrangian references '" +
                                  var_table->name(v) + "', which is not a coordinate or velocity");
    }
    return DegenerateModel{std::move(model_name), std::move(ring),      std::move(coordinates),
                           std::move(velocities), std::move(momenta),   std::move(lagrangian)};
}

DegenerateModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open model file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_model_text(buf.str(), path);
}

} // namespace dirac
