#include "lifegraph/gexf.hpp"

#include <algorithm>
#include <cctype>
#include <string_view>
#include <tuple>

#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"

namespace lifegraph {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

namespace {

std::string xml_unescape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        auto take = [&](std::string_view entity, char c) {
            if (s.compare(i, entity.size(), entity) == 0) {
                out += c;
                i += entity.size();
                return true;
            }
            return false;
        };
        if (!take("&amp;", '&') && !take("&lt;", '<') && !take("&gt;", '>') && !take("&quot;", '"') &&
            !take("&apos;", '\'')) {
            out += s[i++];
        }
    }
    return out;
}

struct XmlTag {
    std::string name;
    std::map<std::string, std::string> attrs;
    bool closing = false;      // </name>
    bool self_closing = false; // <name ... />
};

// Minimal tag scanner; enough for the GEXF subset we emit.
class XmlScanner {
public:
    explicit XmlScanner(const std::string& text, const std::string& origin) : text_(text), origin_(origin) {}

    std::optional<XmlTag> next() {
        while (true) {
            const std::size_t lt = text_.find('<', pos_);
            if (lt == std::string::npos) return std::nullopt;
            const std::size_t gt = text_.find('>', lt);
            if (gt == std::string::npos) throw DataError("unterminated tag in " + origin_);
            pos_ = gt + 1;
            std::string body = text_.substr(lt + 1, gt - lt - 1);
            if (body.empty()) throw DataError("empty tag in " + origin_);
            if (body[0] == '?' || body[0] == '!') continue;  // declaration / comment
            return parse_tag(body);
        }
    }

private:
    XmlTag parse_tag(std::string body) {
        XmlTag tag;
        if (body[0] == '/') {
            tag.closing = true;
            body.erase(0, 1);
        }
        if (!body.empty() && body.back() == '/') {
            tag.self_closing = true;
            body.pop_back();
        }
        std::size_t i = 0;
        while (i < body.size() && !isspace(static_cast<unsigned char>(body[i]))) ++i;
        tag.name = body.substr(0, i);
        while (i < body.size()) {
            while (i < body.size() && isspace(static_cast<unsigned char>(body[i]))) ++i;
            if (i >= body.size()) break;
            const std::size_t eq = body.find('=', i);
            if (eq == std::string::npos) throw DataError("malformed attribute in <" + tag.name + "> in " + origin_);
            const std::string key = body.substr(i, eq - i);
            if (eq + 1 >= body.size() || body[eq + 1] != '"') {
                throw DataError("unquoted attribute in <" + tag.name + "> in " + origin_);
            }
            const std::size_t close = body.find('"', eq + 2);
            if (close == std::string::npos) throw DataError("unterminated attribute in " + origin_);
            tag.attrs[key] = xml_unescape(body.substr(eq + 2, close - eq - 2));
            i = close + 1;
        }
        return tag;
    }

    const std::string& text_;
    std::string origin_;
    std::size_t pos_ = 0;
};

} // namespace

std::string gexf_to_string(const RetweetGraph& graph, const std::map<std::string, LifeStage>& lifestages,
                           const std::map<std::string, std::size_t>& communities,
                           const std::map<std::string, Vec2>& positions) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<gexf xmlns=\"http://www.gexf.net/1.2draft\" xmlns:viz=\"http://www.gexf.net/1.2draft/viz\" version=\"1.2\">\n";
    out += "  <graph defaultedgetype=\"directed\">\n";
    out += "    <attributes class=\"node\">\n";
    out += "      <attribute id=\"0\" title=\"lifestage\" type=\"string\"/>\n";
    out += "      <attribute id=\"1\" title=\"community\" type=\"integer\"/>\n";
    out += "    </attributes>\n";
    out += "    <nodes>\n";

    std::vector<std::string> names;
    names.reserve(graph.n_nodes());
    for (std::uint32_t i = 0; i < graph.n_nodes(); ++i) names.push_back(graph.node_name(i));
    std::sort(names.begin(), names.end());

    for (const auto& name : names) {
        const std::string esc = xml_escape(name);
        out += "      <node id=\"" + esc + "\" label=\"" + esc + "\"";
        const auto ls = lifestages.find(name);
        const auto cm = communities.find(name);
        const auto ps = positions.find(name);
        if (ls == lifestages.end() && cm == communities.end() && ps == positions.end()) {
            out += "/>\n";
            continue;
        }
        out += ">\n";
        if (ls != lifestages.end() || cm != communities.end()) {
            out += "        <attvalues>\n";
            if (ls != lifestages.end()) {
                out += "          <attvalue for=\"0\" value=\"" + std::string(to_string(ls->second)) + "\"/>\n";
            }
            if (cm != communities.end()) {
                out += "          <attvalue for=\"1\" value=\"" + fmt_int(static_cast<std::int64_t>(cm->second)) +
                       "\"/>\n";
            }
            out += "        </attvalues>\n";
        }
        if (ps != positions.end()) {
            out += "        <viz:position x=\"" + fmt_double(ps->second.x, 6) + "\" y=\"" +
                   fmt_double(ps->second.y, 6) + "\" z=\"0.0\"/>\n";
        }
        out += "      </node>\n";
    }
    out += "    </nodes>\n";
    out += "    <edges>\n";

    std::vector<std::tuple<std::string, std::string, std::int64_t>> rows;
    rows.reserve(graph.n_edges());
    for (std::uint32_t s = 0; s < graph.n_nodes(); ++s) {
        for (const auto& e : graph.out_edges(s)) {
            rows.emplace_back(graph.node_name(s), graph.node_name(e.target), e.weight);
        }
    }
    std::sort(rows.begin(), rows.end());
    std::size_t edge_id = 0;
    for (const auto& [s, t, w] : rows) {
        out += "      <edge id=\"" + fmt_int(static_cast<std::int64_t>(edge_id++)) + "\" source=\"" + xml_escape(s) +
               "\" target=\"" + xml_escape(t) + "\" weight=\"" + fmt_int(w) + "\"/>\n";
    }
    out += "    </edges>\n";
    out += "  </graph>\n";
    out += "</gexf>\n";
    return out;
}

void export_gexf(const RetweetGraph& graph, const std::map<std::string, LifeStage>& lifestages,
                 const std::map<std::string, std::size_t>& communities, const std::map<std::string, Vec2>& positions,
                 const std::string& path) {
    write_file(path, gexf_to_string(graph, lifestages, communities, positions));
}

GexfData parse_gexf(const std::string& xml, const std::string& origin) {
    GexfData data;
    XmlScanner scanner(xml, origin);

    std::map<std::string, std::string> attr_title;  // attribute id -> title
    std::string current_node;
    bool saw_gexf = false;

    while (auto tag = scanner.next()) {
        if (tag->closing) {
            if (tag->name == "node") current_node.clear();
            continue;
        }
        if (tag->name == "gexf") {
            saw_gexf = true;
        } else if (tag->name == "attribute") {
            attr_title[tag->attrs["id"]] = tag->attrs["title"];
        } else if (tag->name == "node") {
            auto it = tag->attrs.find("id");
            if (it == tag->attrs.end()) throw DataError("node without id in " + origin);
            data.graph.add_node(it->second);
            if (!tag->self_closing) current_node = it->second;
        } else if (tag->name == "attvalue") {
            if (current_node.empty()) throw DataError("attvalue outside node in " + origin);
            const std::string title = attr_title.count(tag->attrs["for"]) ? attr_title[tag->attrs["for"]] : "";
            if (title == "lifestage") {
                data.lifestages[current_node] = lifestage_from_string(tag->attrs["value"]);
            } else if (title == "community") {
                data.communities[current_node] =
                    static_cast<std::size_t>(parse_int(tag->attrs["value"], origin + " community"));
            }
        } else if (tag->name == "viz:position") {
            if (current_node.empty()) throw DataError("viz:position outside node in " + origin);
            data.positions[current_node] = {parse_double(tag->attrs["x"], origin + " x"),
                                            parse_double(tag->attrs["y"], origin + " y")};
        } else if (tag->name == "edge") {
            const std::string source = tag->attrs["source"];
            const std::string target = tag->attrs["target"];
            if (source.empty() || target.empty()) throw DataError("edge missing endpoints in " + origin);
            std::int64_t weight = 1;
            if (tag->attrs.count("weight")) weight = parse_int(tag->attrs["weight"], origin + " weight");
            data.graph.add_edge(source, target, weight);
        }
    }
    if (!saw_gexf) throw DataError("not a GEXF document: " + origin);
    for (std::uint32_t s = 0; s < data.graph.n_nodes(); ++s) {
        if (!data.graph.out_edges(s).empty()) data.graph.mark_in_sample(s);
    }
    data.graph.canonicalize();
    return data;
}

GexfData read_gexf(const std::string& path) { return parse_gexf(read_file(path), path); }

} // namespace lifegraph
