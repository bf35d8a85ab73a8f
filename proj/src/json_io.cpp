#include "mvdyn/json_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mvdyn {

using nlohmann::json;

MultiSystem system_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("system file must be a JSON object");
    if (!j.contains("points") || !j["points"].is_array())
        throw std::invalid_argument("system file needs a \"points\" array");
    if (!j.contains("maps") || !j["maps"].is_array())
        throw std::invalid_argument("system file needs a \"maps\" array");

    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (const auto& p : j["points"]) {
        if (!p.is_string()) throw std::invalid_argument("point labels must be strings");
        std::string label = p.get<std::string>();
        if (!seen.insert(label).second) throw std::invalid_argument("duplicate point label: " + label);
        labels.push_back(std::move(label));
    }
    const int m = static_cast<int>(labels.size());
    if (m == 0) throw std::invalid_argument("system needs at least one point");

    std::vector<std::vector<int>> maps;
    for (const auto& row : j["maps"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != m)
            throw std::invalid_argument("each map must list one image per point");
        std::vector<int> table;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw std::invalid_argument("map entries must be integers");
            int y = v.get<int>();
            if (y < 0 || y >= m) throw std::invalid_argument("map entry out of range");
            table.push_back(y);
        }
        maps.push_back(std::move(table));
    }
    if (maps.empty()) throw std::invalid_argument("system needs at least one map");
    return MultiSystem(m, std::move(maps), std::move(labels));
}

json system_to_json(const MultiSystem& sys, const std::string& name) {
    json j;
    if (!name.empty()) j["name"] = name;
    j["points"] = sys.labels;
    j["maps"] = sys.maps;
    return j;
}

MultiSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
    }
    return system_from_json(j);
}

Polynomial poly_from_json(const json& j, int m, int n) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw std::invalid_argument("polynomial file needs a \"terms\" array");
    Polynomial a;
    for (const auto& term : j["terms"]) {
        if (!term.contains("word") || !term["word"].is_array())
            throw std::invalid_argument("term needs a \"word\" array");
        if (!term.contains("coeff") || !term["coeff"].is_array())
            throw std::invalid_argument("term needs a \"coeff\" array");
        Word w;
        for (const auto& letter : term["word"]) {
            int l = letter.get<int>();
            if (l < 1 || l > n) throw std::invalid_argument("word letter out of range");
            w.letters.push_back(l);
        }
        if (static_cast<int>(term["coeff"].size()) != m)
            throw std::invalid_argument("coefficient needs one value per point");
        CoeffFn f;
        for (const auto& pair : term["coeff"]) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("coefficient entries are [re, im] pairs");
            f.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        validate_coeff(f);
        Polynomial monomial = Polynomial::monomial(std::move(w), std::move(f));
        a += monomial;
    }
    return a;
}

json poly_to_json(const Polynomial& a) {
    json terms = json::array();
    for (const auto& [w, f] : a.terms) {
        json coeff = json::array();
        for (const auto& v : f) coeff.push_back({v.real(), v.imag()});
        terms.push_back({{"word", w.letters}, {"coeff", coeff}});
    }
    return json{{"terms", terms}};
}

Polynomial load_poly(const std::string& path, int m, int n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
    }
    return poly_from_json(j, m, n);
}

Perm parse_cycles(const std::string& text, int n) {
    Perm alpha = perm_identity(n);
    if (text == "e" || text.empty()) return alpha;
    size_t pos = 0;
    std::vector<bool> assigned(n + 1, false);
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size()) break;
        if (text[pos] != '(') throw std::invalid_argument("cycle notation expects '('");
        size_t close = text.find(')', pos);
        if (close == std::string::npos) throw std::invalid_argument("unbalanced cycle");
        std::istringstream body(text.substr(pos + 1, close - pos - 1));
        std::vector<int> cycle;
        int value;
        while (body >> value) {
            if (value < 1 || value > n) throw std::invalid_argument("cycle entry out of range");
            if (assigned[value]) throw std::invalid_argument("letter repeated across cycles");
            assigned[value] = true;
            cycle.push_back(value);
        }
        if (!body.eof()) throw std::invalid_argument("cycle entries must be integers");
        for (size_t k = 0; k < cycle.size(); ++k) alpha[cycle[k] - 1] = cycle[(k + 1) % cycle.size()];
        pos = close + 1;
    }
    return alpha;
}

std::string cycles_string(const Perm& alpha) {
    const int n = static_cast<int>(alpha.size());
    std::vector<bool> visited(n, false);
    std::string out;
    for (int start = 0; start < n; ++start) {
        if (visited[start] || alpha[start] == start + 1) {
            visited[start] = true;
            continue;
        }
        out += '(';
        int cur = start;
        bool first = true;
        while (!visited[cur]) {
            visited[cur] = true;
            if (!first) out += ' ';
            out += std::to_string(cur + 1);
            first = false;
            cur = alpha[cur] - 1;
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

std::string fmt_fixed(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", value);
    return buf;
}

json cplx_json(const cplx& value) { return json::array({fmt_fixed(value.real()), fmt_fixed(value.imag())}); }

}  // namespace mvdyn
