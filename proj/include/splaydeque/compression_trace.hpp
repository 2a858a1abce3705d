#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "splaydeque/general_tree.hpp"

namespace splaydeque::trace {

/// `PHASE <index>`: a new phase starts; an INIT record follows.
struct Phase {
    std::size_t index = 0;
};

/// `INIT v:p v:p ...` in postorder, `-` as the parent of a root.
struct Init {
    std::vector<std::pair<NodeId, NodeId>> entries;
};

/// `ADD <node> <parent|->`: new leaf inserted as the leftmost child.
struct Add {
    NodeId node = kNil;
    NodeId parent = kNil;
};

/// `C <halving|halving-final|total> <stunted:0|1> <u1> ... <uk>`
struct Compress {
    CompressionKind kind = CompressionKind::halving;
    bool final_step = false;
    bool stunted = false;
    std::vector<NodeId> path;
};

/// `DEL <node>`: deletion of the leftmost leaf.
struct Delete {
    NodeId node = kNil;
};

/// `ROOT <node|->`: designated root relocation.
struct Root {
    NodeId node = kNil;
};

using Record = std::variant<Phase, Init, Add, Compress, Delete, Root>;

Compress from_compression(const CompressionRecord& rec);
Init from_tree(const GeneralTree& tree);

void write(std::ostream& os, const Record& rec);
void write(std::ostream& os, const std::vector<Record>& records);

/// Parses the line-oriented format; blank lines and `#` comments are skipped.
/// Throws Error(parse_error) with the offending line number.
std::vector<Record> read(std::istream& is);

/// Replays one record onto `tree`. Compressions are re-run with the step
/// policy their kind encodes. Returns the compression record for C lines.
std::optional<CompressionRecord> apply(GeneralTree& tree, const Record& rec);

}  // namespace splaydeque::trace
