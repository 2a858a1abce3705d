#include "splaydeque/compression_trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "splaydeque/error.hpp"

namespace splaydeque::trace {

namespace {

void put_id(std::ostream& os, NodeId v) {
    if (v == kNil) {
        os << '-';
    } else {
        os << v;
    }
}

NodeId parse_id(const std::string& tok, std::size_t line) {
    if (tok == "-") return kNil;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used == tok.size()) return static_cast<NodeId>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": bad node id '" + tok + "'");
}

}  // namespace

Compress from_compression(const CompressionRecord& rec) {
    Compress c;
    c.kind = rec.kind;
    c.final_step = rec.final_step_applied;
    c.stunted = rec.stunted;
    c.path = rec.path;
    return c;
}

Init from_tree(const GeneralTree& tree) {
    Init init;
    for (NodeId v : tree.postorder()) {
        init.entries.emplace_back(v, tree.parent(v).value_or(kNil));
    }
    return init;
}

void write(std::ostream& os, const Record& rec) {
    std::visit(
        [&os](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Phase>) {
                os << "PHASE " << r.index;
            } else if constexpr (std::is_same_v<T, Init>) {
                os << "INIT";
                for (const auto& [v, p] : r.entries) {
                    os << ' ' << v << ':';
                    put_id(os, p);
                }
            } else if constexpr (std::is_same_v<T, Add>) {
                os << "ADD " << r.node << ' ';
                put_id(os, r.parent);
            } else if constexpr (std::is_same_v<T, Compress>) {
                os << "C "
                   << (r.kind == CompressionKind::total ? "total"
                       : r.final_step                   ? "halving-final"
                                                        : "halving")
                   << ' ' << (r.stunted ? 1 : 0);
                for (NodeId v : r.path) os << ' ' << v;
            } else if constexpr (std::is_same_v<T, Delete>) {
                os << "DEL " << r.node;
            } else {
                os << "ROOT ";
                put_id(os, r.node);
            }
        },
        rec);
    os << '\n';
}

void write(std::ostream& os, const std::vector<Record>& records) {
    for (const auto& r : records) write(os, r);
}

std::vector<Record> read(std::istream& is) {
    std::vector<Record> out;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&lineno](const std::string& why) {
        throw Error(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (tag == "PHASE") {
            if (toks.size() != 1) fail("PHASE takes one index");
            out.emplace_back(Phase{static_cast<std::size_t>(parse_id(toks[0], lineno))});
        } else if (tag == "INIT") {
            Init init;
            for (const auto& t : toks) {
                const auto colon = t.find(':');
                if (colon == std::string::npos) fail("INIT entry needs node:parent");
                init.entries.emplace_back(parse_id(t.substr(0, colon), lineno),
                                          parse_id(t.substr(colon + 1), lineno));
            }
            out.emplace_back(std::move(init));
        } else if (tag == "ADD") {
            if (toks.size() != 2) fail("ADD takes node and parent");
            out.emplace_back(Add{parse_id(toks[0], lineno), parse_id(toks[1], lineno)});
        } else if (tag == "C") {
            if (toks.size() < 4) fail("C needs kind, stunted flag and a path of two or more nodes");
            Compress c;
            if (toks[0] == "halving") {
                c.kind = CompressionKind::halving;
            } else if (toks[0] == "halving-final") {
                c.kind = CompressionKind::halving;
                c.final_step = true;
            } else if (toks[0] == "total") {
                c.kind = CompressionKind::total;
            } else {
                fail("unknown compression kind '" + toks[0] + "'");
            }
            if (toks[1] != "0" && toks[1] != "1") fail("stunted flag must be 0 or 1");
            c.stunted = toks[1] == "1";
            for (std::size_t i = 2; i < toks.size(); ++i) c.path.push_back(parse_id(toks[i], lineno));
            out.emplace_back(std::move(c));
        } else if (tag == "DEL") {
            if (toks.size() != 1) fail("DEL takes one node");
            out.emplace_back(Delete{parse_id(toks[0], lineno)});
        } else if (tag == "ROOT") {
            if (toks.size() != 1) fail("ROOT takes one node");
            out.emplace_back(Root{parse_id(toks[0], lineno)});
        } else {
            fail("unknown record '" + tag + "'");
        }
    }
    return out;
}

std::optional<CompressionRecord> apply(GeneralTree& tree, const Record& rec) {
    if (const auto* init = std::get_if<Init>(&rec)) {
        tree = GeneralTree::from_postorder(init->entries);
    } else if (const auto* add = std::get_if<Add>(&rec)) {
        if (add->parent == kNil) {
            tree.add_root(add->node);
        } else {
            tree.add_leftmost_child(add->parent, add->node);
        }
    } else if (const auto* c = std::get_if<Compress>(&rec)) {
        if (c->kind == CompressionKind::total) return tree.total_compress(c->path);
        return tree.halving_compress(c->path, c->final_step ? FinalStep::always : FinalStep::never);
    } else if (const auto* d = std::get_if<Delete>(&rec)) {
        tree.delete_leaf(d->node);
    } else if (std::holds_alternative<Phase>(rec)) {
        tree = GeneralTree{};
    }
    return std::nullopt;
}

}  // namespace splaydeque::trace
