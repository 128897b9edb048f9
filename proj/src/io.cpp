#include "gframelet/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gframelet {

using json = nlohmann::json;

namespace {

constexpr char kMagic[8] = {'G', 'F', 'R', 'M', 'B', 'L', 'K', '1'};

json parse_json(const std::string& text, const char* what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string(what) + ": " + e.what());
    }
}

void expect_format(const json& j, const char* format)
{
    if (!j.is_object() || j.value("format", "") != format)
        throw IoError(std::string("expected a '") + format + "' document");
    if (j.value("version", -1) != kFormatVersion)
        throw IoError(std::string(format) + ": unsupported version (expected " + std::to_string(kFormatVersion) + ")");
}

// Wraps nlohmann type errors so malformed documents surface as IoError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw IoError(std::string(what) + ": " + e.what());
    }
}

json edges_json(const Graph& g)
{
    json e = json::array();
    for (const Edge& x : g.edges()) e.push_back({x.u, x.v, x.w});
    return e;
}

Graph graph_from(const json& j)
{
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) throw IoError("edge entries must be [u, v, w]");
        edges.push_back({e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), e[2].get<double>()});
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return build_graph(n, edges, labels);
}

json graph_body(const Graph& g)
{
    json j;
    j["n"] = g.n;
    j["edges"] = edges_json(g);
    if (!g.labels.empty()) j["labels"] = g.labels;
    return j;
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

}  // namespace

Graph parse_graph_tsv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0, n = 0, max_id = 0;
    bool have_n = false, any = false;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::istringstream c(line.substr(first + 1));
            std::string key;
            std::size_t v = 0;
            if (c >> key && key == "nodes:" && c >> v) {
                n = v;
                have_n = true;
            }
            continue;
        }
        std::istringstream ls(line);
        long long u = -1, v = -1;
        double w = 1.0;
        std::string extra;
        if (!(ls >> u >> v)) throw IoError("graph line " + std::to_string(lineno) + ": expected 'u<TAB>v<TAB>weight'");
        if (!(ls >> w)) {
            if (!ls.eof()) throw IoError("graph line " + std::to_string(lineno) + ": bad weight");
            w = 1.0;
        }
        if (ls >> extra) throw IoError("graph line " + std::to_string(lineno) + ": trailing fields");
        if (u < 0 || v < 0) throw IoError("graph line " + std::to_string(lineno) + ": negative vertex id");
        edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), w});
        max_id = std::max<std::size_t>(max_id, static_cast<std::size_t>(std::max(u, v)));
        any = true;
    }
    if (!have_n) n = any ? max_id + 1 : 0;
    return build_graph(n, edges);
}

std::string graph_to_tsv(const Graph& g)
{
    std::ostringstream out;
    out << "# nodes: " << g.n << "\n";
    char buf[96];
    for (const Edge& e : g.edges()) {
        std::snprintf(buf, sizeof buf, "%u\t%u\t%.17g\n", e.u, e.v, e.w);
        out << buf;
    }
    return out.str();
}

Graph parse_graph_json(const std::string& text)
{
    const json j = parse_json(text, "graph");
    return guarded("graph", [&] {
        if (j.contains("format")) expect_format(j, "graph");
        return graph_from(j);
    });
}

std::string graph_to_json(const Graph& g)
{
    json j;
    j["format"] = "graph";
    j["version"] = kFormatVersion;
    j.update(graph_body(g));
    return dump(j);
}

std::string chain_to_json(const Chain& c)
{
    json j;
    j["format"] = "chain";
    j["version"] = kFormatVersion;
    j["id"] = c.id;
    j["sizes"] = c.sizes();
    json levels = json::array();
    for (std::size_t k = 0; k < c.levels.size(); ++k) {
        json lv = graph_body(c.levels[k]);
        lv["parent"] = c.parent[k];
        levels.push_back(std::move(lv));
    }
    j["levels"] = std::move(levels);
    return dump(j);
}

Chain parse_chain_json(const std::string& text)
{
    const json j = parse_json(text, "chain");
    return guarded("chain", [&] {
        expect_format(j, "chain");
        Chain c;
        for (const auto& lv : j.at("levels")) {
            c.levels.push_back(graph_from(lv));
            c.parent.push_back(lv.at("parent").get<Assignment>());
        }
        if (c.levels.empty()) throw IoError("chain: no levels");
        const std::size_t J = c.levels.size() - 1;
        c.cluster_size.assign(J + 1, {});
        c.cluster_size[J].assign(c.levels[J].n, 1);
        for (std::size_t k = J; k >= 1; --k) {
            c.cluster_size[k - 1].assign(c.levels[k - 1].n, 0);
            if (c.parent[k].size() != c.levels[k].n) throw IoError("chain: parent array length differs from level size");
            for (std::size_t q = 0; q < c.parent[k].size(); ++q) {
                if (c.parent[k][q] >= c.levels[k - 1].n) throw IoError("chain: parent index out of range");
                c.cluster_size[k - 1][c.parent[k][q]] += c.cluster_size[k][q];
            }
        }
        c.id = compute_chain_id(c);
        if (j.at("id").get<std::string>() != c.id) throw IoError("chain: content does not match its id (file altered?)");
        return c;
    });
}

std::string basis_to_json(const ChainBasis& b)
{
    json j;
    j["format"] = "basis";
    j["version"] = kFormatVersion;
    j["kind"] = to_string(b.kind);
    j["id"] = b.id;
    j["chain_id"] = b.chain_id;
    j["n"] = b.n;
    j["level_sizes"] = b.level_sizes;
    j["order"] = b.order;
    j["block"] = b.block;
    j["level_of"] = b.level_of;
    json runs = json::array();
    for (const auto& rv : b.runs) {
        json a = json::array();
        for (const Run& r : rv) a.push_back({r.start, r.end, r.value});
        runs.push_back(std::move(a));
    }
    j["runs"] = std::move(runs);
    if (!b.level_eigenvalues.empty()) j["level_eigenvalues"] = b.level_eigenvalues;
    return dump(j);
}

ChainBasis parse_basis_json(const std::string& text, const Chain& c)
{
    const json j = parse_json(text, "basis");
    ChainBasis b = guarded("basis", [&] {
        expect_format(j, "basis");
        ChainBasis b;
        b.kind = basis_kind_from_string(j.at("kind").get<std::string>());
        b.chain_id = j.at("chain_id").get<std::string>();
        b.n = j.at("n").get<std::size_t>();
        b.level_sizes = j.at("level_sizes").get<std::vector<std::size_t>>();
        b.order = j.at("order").get<std::vector<std::vector<std::uint32_t>>>();
        b.block = j.at("block").get<std::vector<std::vector<std::uint32_t>>>();
        b.level_of = j.at("level_of").get<std::vector<std::uint32_t>>();
        for (const auto& rv : j.at("runs")) {
            std::vector<Run> runs;
            std::vector<double> vals;
            for (const auto& r : rv) {
                runs.push_back({r.at(0).get<std::uint32_t>(), r.at(1).get<std::uint32_t>(), r.at(2).get<double>()});
                vals.push_back(runs.back().value);
            }
            b.spoc.push_back(spoc(vals));
            b.runs.push_back(std::move(runs));
        }
        if (j.contains("level_eigenvalues"))
            b.level_eigenvalues = j.at("level_eigenvalues").get<std::vector<std::vector<double>>>();
        const std::string stored = j.at("id").get<std::string>();
        b.id = stored;
        return b;
    });
    if (b.chain_id != c.id) throw std::invalid_argument("basis was built for chain " + b.chain_id + ", not " + c.id);
    if (b.level_sizes != c.sizes() || b.n != c.n() || b.order.size() != b.level_sizes.size() ||
        b.block.size() != b.level_sizes.size() || b.runs.size() != b.n || b.level_of.size() != b.n)
        throw IoError("basis: inconsistent dimensions");
    const std::size_t J = b.level_sizes.size() - 1;
    b.position.assign(J + 1, {});
    b.ancestor.assign(J + 1, {});
    for (std::size_t k = 0; k <= J; ++k) {
        if (b.order[k].size() != b.level_sizes[k]) throw IoError("basis: layout has the wrong length");
        b.position[k].assign(b.level_sizes[k], 0);
        for (std::uint32_t i = 0; i < b.order[k].size(); ++i) {
            if (b.order[k][i] >= b.level_sizes[k]) throw IoError("basis: layout entry out of range");
            b.position[k][b.order[k][i]] = i;
        }
        if (k > 0 && (b.block[k].size() != b.level_sizes[k - 1] + 1 || b.block[k].back() != b.level_sizes[k]))
            throw IoError("basis: block table malformed");
        b.ancestor[k] = c.ancestors(k);
    }
    for (std::size_t l = 0; l < b.n; ++l) {
        if (b.level_of[l] > J) throw IoError("basis: group index out of range");
        for (const Run& r : b.runs[l])
            if (r.start >= r.end || r.end > b.level_sizes[b.level_of[l]]) throw IoError("basis: run out of range");
    }
    b.lambda.resize(b.n);
    for (std::size_t l = 0; l < b.n; ++l) b.lambda[l] = static_cast<double>(l);
    if (compute_basis_id(b) != b.id) throw IoError("basis: content does not match its id (file altered?)");
    return b;
}

std::string filter_bank_to_json(const FilterBank& fb)
{
    json j;
    j["format"] = "filterbank";
    j["version"] = kFormatVersion;
    j["label"] = fb.label;
    j["id"] = fb.id;
    j["n"] = fb.n;
    j["level_sizes"] = fb.level_sizes;
    json levels = json::array();
    for (std::size_t k = 1; k <= fb.depth(); ++k) {
        json lv;
        lv["level"] = k;
        lv["a"] = fb.a[k];
        lv["b"] = fb.b[k];
        std::vector<int> sup(fb.support[k].begin(), fb.support[k].end());
        lv["support"] = sup;
        levels.push_back(std::move(lv));
    }
    j["levels"] = std::move(levels);
    return dump(j);
}

FilterBank parse_filter_bank_json(const std::string& text)
{
    const json j = parse_json(text, "filterbank");
    return guarded("filterbank", [&] {
        expect_format(j, "filterbank");
        FilterBank fb;
        fb.label = j.at("label").get<std::string>();
        fb.n = j.at("n").get<std::size_t>();
        fb.level_sizes = j.at("level_sizes").get<std::vector<std::size_t>>();
        const std::size_t J = fb.depth();
        fb.a.assign(J + 1, {});
        fb.b.assign(J + 1, {});
        fb.support.assign(J + 1, {});
        const auto& levels = j.at("levels");
        if (levels.size() != J) throw IoError("filterbank: expected one entry per level transition");
        for (const auto& lv : levels) {
            const auto k = lv.at("level").get<std::size_t>();
            if (k < 1 || k > J) throw IoError("filterbank: level out of range");
            fb.a[k] = lv.at("a").get<Vec>();
            fb.b[k] = lv.at("b").get<std::vector<Vec>>();
            const auto sup = lv.at("support").get<std::vector<int>>();
            fb.support[k].assign(sup.begin(), sup.end());
            bool ok = fb.a[k].size() == fb.n && fb.support[k].size() == fb.n;
            for (const Vec& b : fb.b[k]) ok = ok && b.size() == fb.n;
            if (!ok) throw IoError("filterbank: sample vectors must have length n");
        }
        fb.id = compute_filter_id(fb);
        if (j.at("id").get<std::string>() != fb.id) throw IoError("filterbank: content does not match its id");
        return fb;
    });
}

std::string coefficients_to_json(const Coefficients& co)
{
    json j;
    j["format"] = "coefficients";
    j["version"] = kFormatVersion;
    j["J1"] = co.J1;
    j["chain_id"] = co.chain_id;
    j["basis_id"] = co.basis_id;
    j["filter_id"] = co.filter_id;
    j["low"] = co.low;
    j["high"] = co.high;
    return dump(j);
}

Coefficients parse_coefficients_json(const std::string& text)
{
    const json j = parse_json(text, "coefficients");
    return guarded("coefficients", [&] {
        expect_format(j, "coefficients");
        Coefficients co;
        co.J1 = j.at("J1").get<std::size_t>();
        co.chain_id = j.at("chain_id").get<std::string>();
        co.basis_id = j.at("basis_id").get<std::string>();
        co.filter_id = j.at("filter_id").get<std::string>();
        co.low = j.at("low").get<Vec>();
        co.high = j.at("high").get<std::vector<std::vector<Vec>>>();
        return co;
    });
}

Vec parse_signal_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    Vec out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(line.substr(first), &used);
        } catch (const std::exception&) {
            throw IoError("signal line " + std::to_string(lineno) + ": not a number");
        }
        if (line.find_first_not_of(" \t", first + used) != std::string::npos)
            throw IoError("signal line " + std::to_string(lineno) + ": trailing characters");
        out.push_back(v);
    }
    return out;
}

std::string signal_to_csv(const Vec& v)
{
    std::string out;
    char buf[40];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        out += buf;
    }
    return out;
}

std::string block_to_bytes(const Eigen::MatrixXd& m)
{
    static_assert(sizeof(double) == 8, "float64 required");
    const auto rows = static_cast<std::uint32_t>(m.rows()), cols = static_cast<std::uint32_t>(m.cols());
    std::string out(16 + 8 * static_cast<std::size_t>(rows) * cols, '\0');
    std::memcpy(out.data(), kMagic, 8);
    auto put32 = [&](std::size_t at, std::uint32_t v) {
        for (int k = 0; k < 4; ++k) out[at + static_cast<std::size_t>(k)] = static_cast<char>((v >> (8 * k)) & 0xff);
    };
    put32(8, rows);
    put32(12, cols);
    std::size_t at = 16;
    for (std::uint32_t r = 0; r < rows; ++r)
        for (std::uint32_t c = 0; c < cols; ++c) {
            std::uint64_t bits;
            const double x = m(r, c);
            std::memcpy(&bits, &x, 8);
            for (int k = 0; k < 8; ++k) out[at++] = static_cast<char>((bits >> (8 * k)) & 0xff);
        }
    return out;
}

Eigen::MatrixXd parse_block_bytes(const std::string& bytes)
{
    if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, 8) != 0) throw IoError("block: bad header");
    auto get32 = [&](std::size_t at) {
        std::uint32_t v = 0;
        for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + static_cast<std::size_t>(k)])) << (8 * k);
        return v;
    };
    const std::uint32_t rows = get32(8), cols = get32(12);
    if (bytes.size() != 16 + 8 * static_cast<std::size_t>(rows) * cols) throw IoError("block: payload size mismatch");
    Eigen::MatrixXd m(rows, cols);
    std::size_t at = 16;
    for (std::uint32_t r = 0; r < rows; ++r)
        for (std::uint32_t c = 0; c < cols; ++c) {
            std::uint64_t bits = 0;
            for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[at++])) << (8 * k);
            double x;
            std::memcpy(&x, &bits, 8);
            m(r, c) = x;
        }
    return m;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << contents;
    if (!out) throw IoError("write failed for '" + path + "'");
}

Graph load_graph(const std::string& path)
{
    const std::string text = read_file(path);
    const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    try {
        return is_json ? parse_graph_json(text) : parse_graph_tsv(text);
    } catch (const std::invalid_argument& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save_graph(const std::string& path, const Graph& g)
{
    const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    write_file(path, is_json ? graph_to_json(g) : graph_to_tsv(g));
}

}  // namespace gframelet
