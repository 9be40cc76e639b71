#include "topicnet/network_io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "topicnet/error.hpp"
#include "topicnet/text.hpp"

namespace topicnet {

namespace {

bool keep(const Edge& e, std::optional<double> min_weight) { return !min_weight || e.weight >= *min_weight; }

double parse_double(const std::string& s, const std::string& source, std::size_t line) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(source, line, "unparsable number '" + s + "'");
    }
}

TopicNetwork assemble(std::map<TreeCode, NetworkNode> nodes_by_code,
                      const std::vector<std::tuple<TreeCode, TreeCode, double>>& links, Provenance provenance) {
    std::vector<NetworkNode> nodes;
    std::map<TreeCode, std::size_t> index;
    for (auto& [code, node] : nodes_by_code) {
        index.emplace(code, nodes.size());
        nodes.push_back(std::move(node));
    }
    std::vector<Edge> edges;
    for (const auto& [a, b, w] : links) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) {
            throw DataError("link " + a.str() + "-" + b.str() + " references an unknown node");
        }
        edges.push_back({ia->second, ib->second, w});
    }
    return TopicNetwork(std::move(nodes), std::move(edges), std::move(provenance));
}

}  // namespace

void write_edge_csv(std::ostream& out, const TopicNetwork& net, std::optional<double> min_weight) {
    out << "source,target,weight\n";
    for (const Edge& e : net.edges()) {
        if (!keep(e, min_weight)) continue;
        out << net.code(e.u) << ',' << net.code(e.v) << ',' << format_exact(e.weight) << '\n';
    }
}

void write_node_csv(std::ostream& out, const TopicNetwork& net) {
    out << "code,label,c_ii\n";
    for (const NetworkNode& n : net.nodes()) {
        out << n.code << ',' << csv_field(n.label) << ',' << n.paper_count << '\n';
    }
}

void write_graphml(std::ostream& out, const TopicNetwork& net, std::optional<double> min_weight) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
           "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
           "  <key id=\"c_ii\" for=\"node\" attr.name=\"c_ii\" attr.type=\"long\"/>\n"
           "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
    out << "  <graph id=\"" << xml_escape(net.provenance().label.empty() ? "network" : net.provenance().label)
        << "\" edgedefault=\"undirected\">\n";
    for (const NetworkNode& n : net.nodes()) {
        out << "    <node id=\"" << xml_escape(n.code.str()) << "\"><data key=\"label\">" << xml_escape(n.label)
            << "</data><data key=\"c_ii\">" << n.paper_count << "</data></node>\n";
    }
    for (const Edge& e : net.edges()) {
        if (!keep(e, min_weight)) continue;
        out << "    <edge source=\"" << xml_escape(net.code(e.u).str()) << "\" target=\""
            << xml_escape(net.code(e.v).str()) << "\"><data key=\"weight\">" << format_exact(e.weight)
            << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

TopicNetwork read_network_csv(std::istream& edges, std::istream& nodes, Provenance provenance) {
    std::map<TreeCode, NetworkNode> by_code;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(nodes, line)) {
        ++line_no;
        if (line_no == 1 || trim(line).empty()) continue;
        auto cols = split_csv(line);
        if (cols.size() != 3) throw ParseError("nodes.csv", line_no, "expected 3 columns");
        auto code = TreeCode::try_parse(cols[0]);
        if (!code) throw ParseError("nodes.csv", line_no, "unparsable tree code '" + cols[0] + "'");
        long long c = static_cast<long long>(parse_double(cols[2], "nodes.csv", line_no));
        NetworkNode node{*code, cols[1], c};
        if (!by_code.emplace(*code, std::move(node)).second) {
            throw ParseError("nodes.csv", line_no, "duplicate node " + cols[0]);
        }
    }
    std::vector<std::tuple<TreeCode, TreeCode, double>> links;
    line_no = 0;
    while (std::getline(edges, line)) {
        ++line_no;
        if (line_no == 1 || trim(line).empty()) continue;
        auto cols = split_csv(line);
        if (cols.size() != 3) throw ParseError("edges.csv", line_no, "expected 3 columns");
        auto a = TreeCode::try_parse(cols[0]);
        auto b = TreeCode::try_parse(cols[1]);
        if (!a || !b) throw ParseError("edges.csv", line_no, "unparsable tree code");
        links.emplace_back(*a, *b, parse_double(cols[2], "edges.csv", line_no));
    }
    return assemble(std::move(by_code), links, std::move(provenance));
}

TopicNetwork read_graphml(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw DataError(std::string("malformed GraphML: ") + e.what());
    }
    const pt::ptree& graph = tree.get_child("graphml.graph");
    Provenance prov;
    prov.label = graph.get<std::string>("<xmlattr>.id", "");
    if (prov.label == "network") prov.label.clear();
    std::map<TreeCode, NetworkNode> by_code;
    std::vector<std::tuple<TreeCode, TreeCode, double>> links;
    for (const auto& [tag, child] : graph) {
        if (tag == "node") {
            NetworkNode node;
            node.code = TreeCode::parse(child.get<std::string>("<xmlattr>.id"));
            for (const auto& [dtag, data] : child) {
                if (dtag != "data") continue;
                const auto key = data.get<std::string>("<xmlattr>.key");
                if (key == "label") node.label = data.get_value<std::string>();
                if (key == "c_ii") node.paper_count = data.get_value<long long>();
            }
            by_code.emplace(node.code, node);
        } else if (tag == "edge") {
            double w = 0.0;
            for (const auto& [dtag, data] : child) {
                if (dtag == "data" && data.get<std::string>("<xmlattr>.key") == "weight") {
                    w = std::stod(data.get_value<std::string>());
                }
            }
            links.emplace_back(TreeCode::parse(child.get<std::string>("<xmlattr>.source")),
                               TreeCode::parse(child.get<std::string>("<xmlattr>.target")), w);
        }
    }
    return assemble(std::move(by_code), links, std::move(prov));
}

NetworkFiles NetworkFiles::from_prefix(const std::filesystem::path& prefix) {
    return {prefix.string() + ".edges.csv", prefix.string() + ".nodes.csv"};
}

TopicNetwork load_network(const std::filesystem::path& prefix) {
    const NetworkFiles files = NetworkFiles::from_prefix(prefix);
    std::ifstream edges(files.edges);
    std::ifstream nodes(files.nodes);
    if (!edges || !nodes) {
        throw DataError("cannot open network files " + files.edges.string() + " / " + files.nodes.string());
    }
    return read_network_csv(edges, nodes, Provenance{prefix.filename().string(), 0, 0});
}

TopicNetwork load_graphml(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_graphml(in);
}

}  // namespace topicnet
