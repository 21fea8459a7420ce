#include "hrt/io.hpp"

#include <algorithm>
#include <set>

#include "hrt/rng.hpp"

namespace hrt {

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

void reject_floats(const Json& j, const std::string& where) {
    if (j.is_number_float()) schema_fail(where, "floating point values are not allowed");
    if (j.is_object())
        for (auto it = j.begin(); it != j.end(); ++it)
            reject_floats(it.value(), where + "." + it.key());
    if (j.is_array())
        for (std::size_t i = 0; i < j.size(); ++i)
            reject_floats(j[i], where + "[" + std::to_string(i) + "]");
}

void expect_keys(const Json& j, const std::string& where, const std::set<std::string>& required,
                 const std::set<std::string>& optional = {}) {
    if (!j.is_object()) schema_fail(where, "expected an object");
    for (const auto& key : required)
        if (!j.contains(key)) schema_fail(where, "missing key '" + key + "'");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!required.count(it.key()) && !optional.count(it.key()))
            schema_fail(where, "unknown key '" + it.key() + "'");
}

long long get_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) schema_fail(where, "expected an integer");
    return j.get<long long>();
}

std::string get_string(const Json& j, const std::string& where) {
    if (!j.is_string()) schema_fail(where, "expected a string");
    return j.get<std::string>();
}

const Json& get_array(const Json& j, const std::string& where) {
    if (!j.is_array()) schema_fail(where, "expected an array");
    return j;
}

std::vector<int> int_vector(const Json& j, const std::string& where) {
    get_array(j, where);
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(static_cast<int>(get_int(j[i], where + "[" + std::to_string(i) + "]")));
    return out;
}

Rat get_rat(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    return rat_parse(get_string(j, where));
}

Json index_json(const IndexSet& I) { return Json(I.ids); }

IndexSet index_from_json(const Json& j, const std::string& where) {
    auto ids = int_vector(j, where);
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != ids) schema_fail(where, "index sets must be sorted");
    try {
        return IndexSet(ids);
    } catch (const std::invalid_argument& e) {
        schema_fail(where, e.what());
    }
}

Json edge_json(const Edge& e) {
    Json out = Json::array();
    for (const auto& v : e.verts) out.push_back(Json::array({v.cls, v.local}));
    return out;
}

Edge edge_from_json(const Json& j, const std::string& where) {
    get_array(j, where);
    std::vector<Vertex> verts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto pair = int_vector(j[i], where + "[" + std::to_string(i) + "]");
        if (pair.size() != 2) schema_fail(where, "vertex must be [class, local]");
        verts.push_back(Vertex{pair[0], pair[1]});
    }
    try {
        return Edge(std::move(verts));
    } catch (const std::invalid_argument& e) {
        schema_fail(where, e.what());
    }
}

Json palettes_json(const std::map<IndexSet, Palette>& palettes) {
    Json out = Json::array();
    for (const auto& [I, pal] : palettes) {
        Json p;
        p["index"] = index_json(I);
        p["labels"] = pal.labels;
        p["cap"] = pal.cap;
        out.push_back(std::move(p));
    }
    return out;
}

std::map<IndexSet, Palette> palettes_from_json(const Json& j, const std::string& where) {
    get_array(j, where);
    std::map<IndexSet, Palette> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string at = where + "[" + std::to_string(i) + "]";
        expect_keys(j[i], at, {"index", "labels", "cap"});
        Palette pal;
        pal.index = index_from_json(j[i]["index"], at + ".index");
        for (const auto& label : get_array(j[i]["labels"], at + ".labels"))
            pal.labels.push_back(get_string(label, at + ".labels[]"));
        pal.cap = static_cast<int>(get_int(j[i]["cap"], at + ".cap"));
        if (!out.emplace(pal.index, pal).second) schema_fail(at, "duplicate palette index");
    }
    return out;
}

}  // namespace

Document make_document(const std::string& kind, Json payload) {
    Document doc;
    doc.kind = kind;
    doc.payload = std::move(payload);
    return doc;
}

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        // translate the byte offset into line/column
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                          ": " + e.what());
    }
    reject_floats(j, "$");
    expect_keys(j, "$", {"format_version", "kind", "payload"});
    Document doc;
    doc.format_version = static_cast<int>(get_int(j["format_version"], "$.format_version"));
    if (doc.format_version != 1) schema_fail("$.format_version", "unsupported version");
    doc.kind = get_string(j["kind"], "$.kind");
    static const std::set<std::string> kinds = {"hypergraph", "complex", "coloring", "report"};
    if (!kinds.count(doc.kind)) schema_fail("$.kind", "unknown kind '" + doc.kind + "'");
    doc.payload = j["payload"];
    if (!doc.payload.is_object()) schema_fail("$.payload", "expected an object");
    // validate the payloads with a structured schema
    if (doc.kind == "hypergraph") {
        std::string variant =
            doc.payload.contains("variant") ? get_string(doc.payload["variant"], "$.payload.variant")
                                            : "partite";
        if (variant == "partite")
            hypergraph_from_json(doc.payload);
        else if (variant == "uniform")
            uniform_from_json(doc.payload);
        else
            schema_fail("$.payload.variant", "unknown variant");
    } else if (doc.kind == "complex") {
        complex_from_json(doc.payload);
    } else if (doc.kind == "coloring") {
        coloring_from_json(doc.payload);
    }
    return doc;
}

std::string serialize_document(const Document& doc) {
    Json j;
    j["format_version"] = doc.format_version;
    j["kind"] = doc.kind;
    // canonicalize known payloads through their native representations
    if (doc.kind == "hypergraph") {
        std::string variant =
            doc.payload.contains("variant") ? doc.payload["variant"].get<std::string>() : "partite";
        j["payload"] = variant == "uniform" ? uniform_to_json(uniform_from_json(doc.payload))
                                            : hypergraph_to_json(hypergraph_from_json(doc.payload));
    } else if (doc.kind == "complex") {
        j["payload"] = complex_to_json(complex_from_json(doc.payload));
    } else if (doc.kind == "coloring") {
        j["payload"] = coloring_to_json(coloring_from_json(doc.payload));
    } else {
        j["payload"] = doc.payload;
    }
    return j.dump(2) + "\n";
}

Json hypergraph_to_json(const ColoredHypergraph& G) {
    Json payload;
    payload["variant"] = "partite";
    payload["r"] = G.r;
    payload["k"] = G.k;
    payload["class_sizes"] = G.class_sizes;
    payload["palettes"] = palettes_json(G.palettes);
    Json coloring = Json::array();
    for (const auto& [I, table] : G.coloring) {
        Json block;
        block["index"] = index_json(I);
        if (table.is_dense()) {
            Json values = Json::array();
            for (std::uint64_t rank = 0; rank < table.size(); ++rank)
                values.push_back(table.at(rank));
            block["values"] = std::move(values);
        } else {
            block["size"] = table.size();
            block["default"] = table.default_color();
            Json overrides = Json::array();
            for (const auto& [rank, c] : table.overrides())
                overrides.push_back(Json::array({rank, c}));
            block["overrides"] = std::move(overrides);
        }
        coloring.push_back(std::move(block));
    }
    payload["coloring"] = std::move(coloring);
    return payload;
}

ColoredHypergraph hypergraph_from_json(const Json& payload) {
    expect_keys(payload, "$.payload", {"r", "k", "class_sizes", "palettes", "coloring"},
                {"variant"});
    ColoredHypergraph G;
    G.r = static_cast<int>(get_int(payload["r"], "$.payload.r"));
    G.k = static_cast<int>(get_int(payload["k"], "$.payload.k"));
    G.class_sizes = int_vector(payload["class_sizes"], "$.payload.class_sizes");
    G.palettes = palettes_from_json(payload["palettes"], "$.payload.palettes");
    const Json& coloring = get_array(payload["coloring"], "$.payload.coloring");
    for (std::size_t i = 0; i < coloring.size(); ++i) {
        std::string at = "$.payload.coloring[" + std::to_string(i) + "]";
        const Json& block = coloring[i];
        if (!block.is_object()) schema_fail(at, "expected an object");
        if (!block.contains("index")) schema_fail(at, "missing key 'index'");
        IndexSet I = index_from_json(block["index"], at + ".index");
        ColorTable table;
        if (block.contains("values")) {
            expect_keys(block, at, {"index", "values"});
            const Json& values = get_array(block["values"], at + ".values");
            table = ColorTable::dense(values.size(), 0);
            for (std::size_t rank = 0; rank < values.size(); ++rank)
                table.set(rank, static_cast<int>(get_int(values[rank], at + ".values[]")));
        } else {
            expect_keys(block, at, {"index", "size", "default", "overrides"});
            std::uint64_t size = static_cast<std::uint64_t>(get_int(block["size"], at + ".size"));
            table = ColorTable::sparse(size, static_cast<int>(get_int(block["default"],
                                                                      at + ".default")));
            for (const auto& pair : get_array(block["overrides"], at + ".overrides")) {
                auto kv = int_vector(pair, at + ".overrides[]");
                if (kv.size() != 2) schema_fail(at, "override must be [rank, color]");
                table.set(static_cast<std::uint64_t>(kv[0]), kv[1]);
            }
        }
        if (!G.coloring.emplace(I, std::move(table)).second)
            schema_fail(at, "duplicate coloring index");
    }
    try {
        G.validate();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        schema_fail("$.payload", e.what());
    }
    return G;
}

Json uniform_to_json(const UniformHypergraph& H) {
    Json payload;
    payload["variant"] = "uniform";
    payload["n"] = H.n;
    payload["k"] = H.k;
    Json edges = Json::array();
    auto sorted = H.edges;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& e : sorted) edges.push_back(e);
    payload["edges"] = std::move(edges);
    return payload;
}

UniformHypergraph uniform_from_json(const Json& payload) {
    expect_keys(payload, "$.payload", {"variant", "n", "k", "edges"});
    UniformHypergraph H;
    H.n = static_cast<int>(get_int(payload["n"], "$.payload.n"));
    H.k = static_cast<int>(get_int(payload["k"], "$.payload.k"));
    for (const auto& e : get_array(payload["edges"], "$.payload.edges"))
        H.edges.push_back(int_vector(e, "$.payload.edges[]"));
    H.normalize();
    H.validate();
    return H;
}

Json complex_to_json(const Complex& S) {
    Json payload;
    payload["r"] = S.r;
    payload["k"] = S.k;
    payload["class_slots"] = S.class_slots;
    Json active = Json::array();
    for (int c = 0; c < S.r; ++c) {
        Json locals = Json::array();
        for (int l = 0; l < S.class_slots[c]; ++l)
            if (S.active[c][l]) locals.push_back(l);
        active.push_back(std::move(locals));
    }
    payload["active"] = std::move(active);
    payload["palettes"] = palettes_json(S.palettes);
    Json edges = Json::array();
    for (const auto& [e, col] : S.colors) {
        Json entry;
        entry["verts"] = edge_json(e);
        entry["color"] = col;
        edges.push_back(std::move(entry));
    }
    payload["edges"] = std::move(edges);
    return payload;
}

Complex complex_from_json(const Json& payload) {
    expect_keys(payload, "$.payload", {"r", "k", "class_slots", "active", "palettes", "edges"});
    int r = static_cast<int>(get_int(payload["r"], "$.payload.r"));
    int k = static_cast<int>(get_int(payload["k"], "$.payload.k"));
    Complex S = Complex::empty(r, k, palettes_from_json(payload["palettes"], "$.payload.palettes"));
    S.class_slots = int_vector(payload["class_slots"], "$.payload.class_slots");
    if (static_cast<int>(S.class_slots.size()) != r)
        schema_fail("$.payload.class_slots", "length != r");
    const Json& active = get_array(payload["active"], "$.payload.active");
    if (static_cast<int>(active.size()) != r) schema_fail("$.payload.active", "length != r");
    S.active.assign(r, {});
    for (int c = 0; c < r; ++c) {
        S.active[c].assign(S.class_slots[c], 0);
        for (int l : int_vector(active[c], "$.payload.active[]")) {
            if (l < 0 || l >= S.class_slots[c])
                throw DanglingReference("complex: active local outside slots");
            S.active[c][l] = 1;
        }
    }
    for (const auto& entry : get_array(payload["edges"], "$.payload.edges")) {
        expect_keys(entry, "$.payload.edges[]", {"verts", "color"});
        Edge e = edge_from_json(entry["verts"], "$.payload.edges[].verts");
        Color col = static_cast<int>(get_int(entry["color"], "$.payload.edges[].color"));
        if (col < 0) schema_fail("$.payload.edges[].color", "visible color must be >= 0");
        try {
            S.set_color(e, col);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e2) {
            schema_fail("$.payload.edges[]", e2.what());
        }
    }
    try {
        S.validate();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        schema_fail("$.payload", e.what());
    }
    return S;
}

Json coloring_to_json(const ColoringAssignment& col) {
    Json payload;
    payload["n"] = col.n;
    payload["k"] = col.k;
    payload["b"] = col.b;
    payload["order"] = "colex";
    payload["values"] = col.color;
    return payload;
}

ColoringAssignment coloring_from_json(const Json& payload) {
    expect_keys(payload, "$.payload", {"n", "k", "b", "order", "values"});
    if (get_string(payload["order"], "$.payload.order") != "colex")
        schema_fail("$.payload.order", "only colex order is supported");
    ColoringAssignment col;
    col.n = static_cast<int>(get_int(payload["n"], "$.payload.n"));
    col.k = static_cast<int>(get_int(payload["k"], "$.payload.k"));
    col.b = static_cast<int>(get_int(payload["b"], "$.payload.b"));
    col.color = int_vector(payload["values"], "$.payload.values");
    if (col.n < 0 || col.k < 1 || col.b < 1) schema_fail("$.payload", "bad coloring shape");
    if (col.color.size() != col.edge_count())
        schema_fail("$.payload.values", "length != C(n, k)");
    for (int c : col.color)
        if (c < -1 || c >= col.b) throw DanglingReference("coloring: color outside [0, b)");
    return col;
}

Json total_color_to_json(const TotalColor& tc) {
    Json j;
    j["index"] = index_json(tc.index);
    j["colors"] = tc.colors;
    return j;
}

TotalColor total_color_from_json(const Json& j) {
    expect_keys(j, "total_color", {"index", "colors"});
    TotalColor tc;
    tc.index = index_from_json(j["index"], "total_color.index");
    tc.colors = int_vector(j["colors"], "total_color.colors");
    if (tc.colors.size() != subset_masks(tc.index.size()).size())
        schema_fail("total_color.colors", "length != 2^|I| - 1");
    return tc;
}

Json witness_to_json(const RegularityWitness& w) {
    Json payload;
    payload["report_type"] = "regularity-witness";
    payload["h"] = w.h;
    Json delta = Json::array();
    for (const auto& [tc, value] : w.delta) {
        Json entry = total_color_to_json(tc);
        entry["value"] = rat_str(value);
        delta.push_back(std::move(entry));
    }
    payload["delta"] = std::move(delta);
    if (w.delta_default) payload["delta_default"] = rat_str(*w.delta_default);
    Json eps = Json::array();
    for (const auto& value : w.epsilon_levels) eps.push_back(rat_str(value));
    payload["epsilon"] = std::move(eps);
    return payload;
}

RegularityWitness witness_from_json(const Json& payload) {
    expect_keys(payload, "witness", {"report_type", "h", "delta", "epsilon"}, {"delta_default"});
    if (get_string(payload["report_type"], "witness.report_type") != "regularity-witness")
        schema_fail("witness.report_type", "expected regularity-witness");
    RegularityWitness w;
    w.h = static_cast<int>(get_int(payload["h"], "witness.h"));
    for (const auto& entry : get_array(payload["delta"], "witness.delta")) {
        expect_keys(entry, "witness.delta[]", {"index", "colors", "value"});
        Json key;
        key["index"] = entry["index"];
        key["colors"] = entry["colors"];
        TotalColor tc = total_color_from_json(key);
        Rat value = get_rat(entry["value"], "witness.delta[].value");
        if (value < 0) schema_fail("witness.delta[].value", "delta must be nonnegative");
        w.delta[tc] = value;
    }
    if (payload.contains("delta_default"))
        w.delta_default = get_rat(payload["delta_default"], "witness.delta_default");
    for (const auto& value : get_array(payload["epsilon"], "witness.epsilon"))
        w.epsilon_levels.push_back(get_rat(value, "witness.epsilon[]"));
    if (w.epsilon_levels.empty()) schema_fail("witness.epsilon", "need at least one level");
    w.use_epsilon_table();
    return w;
}

Json to_json(const DensityReport& report) {
    Json j;
    j["report_type"] = "regularity";
    Json ii = Json::array();
    for (const auto& check : report.condition_ii) {
        Json c;
        c["index"] = index_json(check.index);
        c["b_star"] = check.b_star;
        c["mean_delta"] = rat_str(check.mean_delta);
        c["epsilon"] = rat_str(check.epsilon);
        c["pass"] = check.pass;
        ii.push_back(std::move(c));
    }
    j["condition_ii"] = std::move(ii);
    j["pass_ii"] = report.pass_ii;
    j["patterns_checked"] = report.patterns_checked;
    j["patterns_vacuous"] = report.patterns_vacuous;
    j["budget_exhausted"] = report.budget_exhausted;
    Json failures = Json::array();
    for (const auto& f : report.failures) {
        Json entry;
        entry["pattern"] = complex_to_json(f.pattern);
        entry["probability"] = rat_str(f.probability);
        entry["lower"] = rat_str(f.lower);
        entry["upper"] = rat_str(f.upper);
        failures.push_back(std::move(entry));
    }
    j["failures"] = std::move(failures);
    j["pass_i"] = report.pass_i;
    Json densities = Json::array();
    for (const auto& entry : report.densities) {
        Json d = total_color_to_json(entry.color);
        d["density"] = rat_str(entry.density);
        d["delta"] = rat_str(entry.delta);
        densities.push_back(std::move(d));
    }
    j["densities"] = std::move(densities);
    Json slack = Json::array();
    for (const auto& [tc, value] : report.min_uniform_slack) {
        Json entry = total_color_to_json(tc);
        entry["slack"] = rat_str(value);
        slack.push_back(std::move(entry));
    }
    j["min_uniform_slack"] = std::move(slack);
    return j;
}

Json to_json(const ExceptionalReport& report) {
    Json j;
    j["report_type"] = "exceptional-edges";
    Json edges = Json::array();
    for (const auto& fe : report.edges) {
        Json entry;
        entry["edge"] = edge_json(fe.edge);
        entry["low_density"] = fe.low_density;
        entry["high_delta"] = fe.high_delta;
        edges.push_back(std::move(entry));
    }
    j["edges"] = std::move(edges);
    Json per_index = Json::array();
    for (const auto& stats : report.per_index) {
        Json entry;
        entry["index"] = index_json(stats.index);
        entry["edges"] = stats.edges;
        entry["exceptional"] = stats.exceptional;
        entry["low_density"] = stats.low_density;
        entry["high_delta"] = stats.high_delta;
        entry["fraction"] = rat_str(stats.fraction);
        entry["bound"] = rat_str(stats.bound);
        entry["within_bound"] = stats.within_bound;
        per_index.push_back(std::move(entry));
    }
    j["per_index"] = std::move(per_index);
    j["all_within_bound"] = report.all_within_bound;
    return j;
}

Json to_json(const Xx11aCheck& check) {
    Json j;
    j["pass"] = check.pass;
    j["blowups_checked"] = check.blowups_checked;
    j["worst_multiplicity"] = check.worst_multiplicity;
    j["worst_margin"] = rat_str(check.worst_margin);
    j["probability"] = rat_str(check.probability);
    j["lower"] = rat_str(check.lower);
    j["upper"] = rat_str(check.upper);
    return j;
}

Json to_json(const Xx15dCheck& check) {
    Json j;
    j["pass"] = check.pass;
    Json edges = Json::array();
    for (const auto& ec : check.edges) {
        Json entry;
        entry["edge"] = edge_json(ec.edge);
        entry["density"] = rat_str(ec.density);
        entry["rho"] = rat_str(ec.rho);
        entry["pass"] = ec.pass;
        edges.push_back(std::move(entry));
    }
    j["edges"] = std::move(edges);
    Json offending = Json::array();
    for (const auto& e : check.offending) offending.push_back(edge_json(e));
    j["offending"] = std::move(offending);
    return j;
}

Json to_json(const BetaReport& report) {
    Json j;
    j["report_type"] = "beta-stats";
    j["mean_error"] = rat_str(report.mean_error);
    j["beta"] = rat_str(report.beta);
    j["within"] = report.within;
    j["level"] = report.level;
    j["base_embeddings"] = report.base_embeddings.str();
    j["split_hypothesis_pass"] = report.split_hypothesis_pass;
    return j;
}

Json to_json(const LemmaReport& report) {
    Json j;
    j["report_type"] = "counting-lemma";
    j["hypothesis_xx11a"] = to_json(report.hyp_xx11a);
    j["hypothesis_xx15d"] = to_json(report.hyp_xx15d);
    j["lhs"] = rat_str(report.lhs);
    j["rhs"] = rat_str(report.rhs);
    j["density_product"] = rat_str(report.density_product);
    j["eta_threshold"] = rat_str(report.eta_threshold);
    j["holds"] = report.holds;
    j["root_q"] = report.root_q;
    return j;
}

namespace {

Json map_json(const PartitionwiseMap& phi) {
    Json out = Json::array();
    for (const auto& [v, img] : phi.assign) {
        Json entry;
        entry["from"] = Json::array({v.cls, v.local});
        entry["to"] = Json::array({img.cls, img.local});
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace

Json to_json(const CorollaryReport& report) {
    Json j;
    j["report_type"] = "corollary";
    j["p_injective"] = rat_str(report.p_injective);
    j["density_product"] = rat_str(report.density_product);
    j["bound"] = rat_str(report.bound);
    j["bound_positive"] = report.bound_positive;
    j["holds"] = report.holds;
    j["witness"] = report.witness ? map_json(*report.witness) : Json();
    j["witness_verified"] = report.witness_verified;
    j["root_q"] = report.root_q;
    return j;
}

Json to_json(const RamseyResult& result) {
    Json j;
    j["report_type"] = "ramsey";
    j["value"] = result.value ? Json(*result.value) : Json();
    j["lower"] = result.lower;
    j["upper"] = result.upper ? Json(*result.upper) : Json();
    j["witness"] = result.witness ? coloring_to_json(*result.witness) : Json();
    j["nodes_per_n"] = result.nodes_per_n;
    return j;
}

Json to_json(const PipelineReport& report) {
    Json j;
    j["report_type"] = "pipeline";
    j["success"] = report.success;
    j["failure"] = report.failure;
    j["exceptional"] = to_json(report.exceptional);
    j["representatives"] = report.representatives;
    j["tuple_attempts"] = report.tuple_attempts;
    j["clique_classes"] = report.clique_classes;
    j["mono_color"] = report.mono_color;
    j["partition_class_of"] = report.partition_class_of;
    Json embedding = Json::array();
    for (const auto& [v, img] : report.embedding) {
        Json entry;
        entry["vertex"] = v;
        entry["to"] = Json::array({img.cls, img.local});
        embedding.push_back(std::move(entry));
    }
    j["embedding"] = std::move(embedding);
    j["reverified"] = report.reverified;
    return j;
}

ColoredHypergraph random_instance(const GenConfig& config) {
    if (config.r < 1 || config.k < 1 || config.k > config.r)
        throw std::invalid_argument("random_instance: need 1 <= k <= r");
    if (static_cast<int>(config.class_sizes.size()) != config.r)
        throw std::invalid_argument("random_instance: class_sizes length != r");
    if (static_cast<int>(config.palette_sizes.size()) != config.k)
        throw std::invalid_argument("random_instance: palette_sizes length != k");
    for (int b : config.palette_sizes)
        if (b < 1) throw std::invalid_argument("random_instance: palette sizes must be positive");

    ColoredHypergraph G;
    G.r = config.r;
    G.k = config.k;
    G.class_sizes = config.class_sizes;
    G.palettes = uniform_palettes(config.r, config.k, config.palette_sizes);
    Rng rng(config.seed);
    for (const auto& I : all_indices(config.r, config.k)) {
        std::uint64_t count = G.edge_count(I);
        if (count > (std::uint64_t(1) << 22))
            throw std::invalid_argument("random_instance: index too large for dense generation");
        ColorTable table = ColorTable::dense(count, 0);
        int b = config.palette_sizes[I.size() - 1];
        for (std::uint64_t rank = 0; rank < count; ++rank)
            table.set(rank, b == 1 ? 0 : rng.below_int(b));
        G.coloring.emplace(I, std::move(table));
    }
    return G;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
    expect_keys(j, "config",
                {"seed", "samples", "r", "k", "class_sizes", "palette_sizes", "eta", "rho"},
                {"pattern_budget", "vertex_cap", "checks"});
    reject_floats(j, "config");
    ExperimentConfig config;
    config.seed = static_cast<std::uint64_t>(get_int(j["seed"], "config.seed"));
    config.samples = static_cast<int>(get_int(j["samples"], "config.samples"));
    if (config.samples < 0) schema_fail("config.samples", "must be nonnegative");
    config.shape.seed = config.seed;
    config.shape.r = static_cast<int>(get_int(j["r"], "config.r"));
    config.shape.k = static_cast<int>(get_int(j["k"], "config.k"));
    config.shape.class_sizes = int_vector(j["class_sizes"], "config.class_sizes");
    config.shape.palette_sizes = int_vector(j["palette_sizes"], "config.palette_sizes");
    for (const auto& v : get_array(j["eta"], "config.eta"))
        config.eta.push_back(get_rat(v, "config.eta[]"));
    for (const auto& v : get_array(j["rho"], "config.rho"))
        config.rho.push_back(get_rat(v, "config.rho[]"));
    if (j.contains("pattern_budget"))
        config.pattern_budget =
            static_cast<std::uint64_t>(get_int(j["pattern_budget"], "config.pattern_budget"));
    if (config.pattern_budget == 0) schema_fail("config.pattern_budget", "must be positive");
    if (j.contains("vertex_cap"))
        config.vertex_cap = static_cast<int>(get_int(j["vertex_cap"], "config.vertex_cap"));
    if (j.contains("checks"))
        for (const auto& c : get_array(j["checks"], "config.checks"))
            config.checks.push_back(get_string(c, "config.checks[]"));
    return config;
}

namespace {

// two vertices and the connecting pair, everything color 0
Complex pair_pattern(const ColoredHypergraph& G) {
    Complex S = Complex::empty(G.r, G.k, G.palettes);
    Vertex v0 = S.add_vertex(0);
    Vertex v1 = S.add_vertex(1);
    S.set_color(Edge{v0}, 0);
    S.set_color(Edge{v1}, 0);
    S.set_color(Edge{v0, v1}, 0);
    return S;
}

}  // namespace

Json run_experiment(const ExperimentConfig& config) {
    std::set<std::string> checks(config.checks.begin(), config.checks.end());
    if (checks.empty())
        checks = {"normalization", "chain-rule", "xx11a", "beta", "counting"};
    bool needs_pairs = checks.count("chain-rule") || checks.count("xx11a") ||
                       checks.count("beta") || checks.count("counting");
    if (needs_pairs && (config.shape.r < 2 || config.shape.k < 2))
        throw std::invalid_argument("experiment: pair-based checks need r >= 2 and k >= 2");

    EtaProfile profile{config.eta, config.rho};
    if (needs_pairs) profile.validate();

    Json results;
    std::uint64_t normalization_pass = 0, normalization_frames = 0;
    Rat worst_discrepancy = 0;
    std::vector<Rat> chain_samples;
    std::uint64_t xx11a_pass = 0;
    Rat xx11a_worst_margin = 0;
    std::uint64_t beta_pass = 0, beta_applicable = 0;
    std::uint64_t counting_hyp_pass = 0, counting_holds = 0, counting_applicable = 0;
    Rat max_eta_threshold = 0;

    for (int s = 0; s < config.samples; ++s) {
        GenConfig shape = config.shape;
        shape.seed = config.seed + static_cast<std::uint64_t>(s);
        ColoredHypergraph G = random_instance(shape);

        if (checks.count("normalization")) {
            for (const auto& I : all_indices(G.r, G.k)) {
                DensityTable t = density_table(G, I);
                for (const auto& [frame, count] : t.frame_counts) {
                    ++normalization_frames;
                    Rat sum = 0;
                    for (const auto& [colors, n] : t.total_counts) {
                        TotalColor tc{I, colors};
                        if (tc.frame() == frame) sum += Rat(n, count);
                    }
                    if (sum == 1) ++normalization_pass;
                }
            }
            // patterns with at most one visible edge have zero discrepancy
            Complex empty_pattern = Complex::empty(G.r, G.k, G.palettes);
            empty_pattern.add_vertex(0);
            worst_discrepancy =
                std::max(worst_discrepancy, abs(discrepancy(empty_pattern, G)));
            Complex single = Complex::empty(G.r, G.k, G.palettes);
            Vertex v = single.add_vertex(0);
            single.set_color(Edge{v}, 0);
            worst_discrepancy = std::max(worst_discrepancy, abs(discrepancy(single, G)));
        }
        if (checks.count("chain-rule")) chain_samples.push_back(
            embedding_probability(pair_pattern(G), G));
        if (checks.count("xx11a")) {
            auto check = check_hypothesis_xx11a(pair_pattern(G), G, profile, 1, config.vertex_cap);
            if (check.pass) ++xx11a_pass;
            xx11a_worst_margin = std::max(xx11a_worst_margin, check.worst_margin);
        }
        if (checks.count("beta")) {
            Complex Bpp = pair_pattern(G);
            Complex Bp = induced_subcomplex(Bpp, {Vertex{0, 0}});
            try {
                auto report = mean_extension_error(Bp, Bpp, G, profile, 2);
                if (report.split_hypothesis_pass) {
                    ++beta_applicable;
                    if (report.within) ++beta_pass;
                }
            } catch (const Error&) {
                // zero densities or no base embedding: not applicable
            }
        }
        if (checks.count("counting")) {
            Complex S = pair_pattern(G);
            BlowupSpec spec;
            spec.pattern = S;
            spec.degree_cap = 2;
            spec.multiplicity[Vertex{0, 0}] = 2;
            spec.multiplicity[Vertex{1, 0}] = 1;
            Blowup blowup = build_blowup(spec);
            try {
                auto report = verify_counting_inequality(blowup.complex, Vertex{0, 1}, S, G,
                                                         profile, config.vertex_cap);
                if (report.hyp_xx11a.pass && report.hyp_xx15d.pass) {
                    ++counting_hyp_pass;
                    if (report.holds) ++counting_holds;
                    max_eta_threshold = std::max(max_eta_threshold, report.eta_threshold);
                }
                ++counting_applicable;
            } catch (const Error&) {
            }
        }
    }

    Json report;
    report["report_type"] = "experiment";
    report["samples"] = config.samples;
    if (checks.count("normalization")) {
        Json r;
        r["frames"] = normalization_frames;
        r["frames_normalized"] = normalization_pass;
        r["pass"] = normalization_pass == normalization_frames;
        r["worst_small_pattern_discrepancy"] = rat_str(worst_discrepancy);
        results["normalization"] = std::move(r);
    }
    if (checks.count("chain-rule")) {
        Json r;
        std::size_t M = chain_samples.size();
        Rat target = Rat(1, config.shape.palette_sizes[0]) *
                     Rat(1, config.shape.palette_sizes[0]) *
                     Rat(1, config.shape.palette_sizes[1]);
        r["ensemble_product"] = rat_str(target);
        if (M == 0) {
            r["pass"] = true;
        } else {
            Rat mean = 0;
            for (const auto& p : chain_samples) mean += p;
            mean /= Rat(static_cast<unsigned long>(M));
            Rat variance = 0;
            for (const auto& p : chain_samples) variance += (p - mean) * (p - mean);
            // |mean - target| <= 3 s / sqrt(M), squared to stay rational
            bool pass;
            if (M == 1) {
                pass = mean == target;
            } else {
                variance /= Rat(static_cast<unsigned long>(M - 1));
                Rat lhs = (mean - target) * (mean - target) * Rat(static_cast<unsigned long>(M));
                pass = lhs <= 9 * variance;
                r["sample_variance"] = rat_str(variance);
            }
            r["sample_mean"] = rat_str(mean);
            r["pass"] = pass;
        }
        results["chain-rule"] = std::move(r);
    }
    if (checks.count("xx11a")) {
        Json r;
        r["pass_count"] = xx11a_pass;
        r["worst_margin"] = rat_str(xx11a_worst_margin);
        results["xx11a"] = std::move(r);
    }
    if (checks.count("beta")) {
        Json r;
        r["applicable"] = beta_applicable;
        r["within_beta"] = beta_pass;
        r["pass"] = beta_pass == beta_applicable;
        results["beta"] = std::move(r);
    }
    if (checks.count("counting")) {
        Json r;
        r["applicable"] = counting_applicable;
        r["hypotheses_pass"] = counting_hyp_pass;
        r["holds"] = counting_holds;
        r["pass"] = counting_holds == counting_hyp_pass;
        r["max_eta_threshold"] = rat_str(max_eta_threshold);
        results["counting"] = std::move(r);
    }
    report["results"] = std::move(results);
    return report;
}

}  // namespace hrt
