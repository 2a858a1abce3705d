#include "splaydeque/transcription.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <unordered_set>

#include "splaydeque/error.hpp"

namespace splaydeque {

std::size_t default_block_size(std::size_t n) {
    if (n < 2) return 4;
    const double l = std::log2(static_cast<double>(n));
    return std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(l * l)));
}

std::vector<std::size_t> partition_blocks(std::size_t n, std::size_t block_size) {
    if (block_size == 0) throw Error(ErrorKind::invalid_argument, "block size must be positive");
    std::vector<std::size_t> sizes(n / block_size, block_size);
    if (n % block_size != 0) sizes.push_back(n % block_size);
    return sizes;
}

std::vector<std::vector<NodeId>> split_large(std::span<const NodeId> exposed, std::size_t t) {
    if (t == 0) throw Error(ErrorKind::invalid_argument, "split bound must be positive");
    std::vector<std::vector<NodeId>> pieces;
    for (std::size_t i = 0; i < exposed.size(); i += t) {
        const std::size_t end = std::min(exposed.size(), i + t);
        pieces.emplace_back(exposed.begin() + static_cast<std::ptrdiff_t>(i),
                            exposed.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return pieces;
}

bool is_dense(std::size_t exposed, std::size_t touched) {
    if (exposed == 0) return false;
    const double lhs = static_cast<double>(exposed) * std::log2(static_cast<double>(exposed));
    return !(lhs < static_cast<double>(touched));
}

void Transcript::end_phase() {
    if (!in_phase_) return;
    for (const auto& [v, lab] : labels_) {
        if (!lab.empty() && tree_.contains(v)) ++report_.labels_dropped;
    }
    labels_.clear();
    affiliations_.clear();
    block_.clear();
    in_phase_ = false;
}

void Transcript::begin_phase(GeneralTree tree, std::span<const NodeId> order) {
    end_phase();
    tree_ = std::move(tree);
    block_size_ = options_.block_size ? options_.block_size : default_block_size(order.size());
    split_bound_ = options_.split_bound ? options_.split_bound : block_size_;
    block_remaining_ = partition_blocks(order.size(), block_size_);
    phase_blocks_ = block_remaining_.size();
    for (std::size_t i = 0; i < order.size(); ++i) block_.emplace(order[i], i / block_size_);
    period_open_.assign(phase_blocks_, false);
    open_periods_ = 0;
    active_block_ = static_cast<std::size_t>(-1);
    report_.blocks += phase_blocks_;
    ++report_.phases;
    report_.block_size = block_size_;
    report_.split_bound = split_bound_;
    in_phase_ = true;
}

std::size_t Transcript::block_of(NodeId v) const {
    auto it = block_.find(v);
    if (it == block_.end()) throw Error(ErrorKind::not_found, "node has no block: " + std::to_string(v));
    return it->second;
}

std::span<const Symbol> Transcript::label(NodeId v) const {
    auto it = labels_.find(v);
    if (it == labels_.end()) return {};
    return it->second;
}

bool Transcript::affiliated(NodeId v) const {
    auto it = affiliations_.find(v);
    return it != affiliations_.end() && !it->second.empty();
}

bool Transcript::shares_affiliation(NodeId a, NodeId b) const {
    auto ia = affiliations_.find(a);
    auto ib = affiliations_.find(b);
    if (ia == affiliations_.end() || ib == affiliations_.end()) return false;
    for (std::size_t e : ia->second) {
        if (std::find(ib->second.begin(), ib->second.end(), e) != ib->second.end()) return true;
    }
    return false;
}

bool Transcript::exposed(NodeId v) const {
    const std::size_t b = block_of(v);
    for (auto p = tree_.parent(v); p; p = tree_.parent(*p)) {
        if (tree_.node_class(*p) != NodeClass::essential) continue;
        if (block_of(*p) == b || shares_affiliation(v, *p)) return false;
    }
    return true;
}

void Transcript::check_affiliation_contiguity() {
    // Spine members of each earlier dense epoch must form one unbroken run.
    struct Run { std::size_t first, last, count; };
    std::unordered_map<std::size_t, Run> runs;
    const auto spine = tree_.spine();
    for (std::size_t i = 0; i < spine.size(); ++i) {
        auto it = affiliations_.find(spine[i]);
        if (it == affiliations_.end()) continue;
        for (std::size_t e : it->second) {
            auto [r, fresh] = runs.try_emplace(e, Run{i, i, 0});
            r->second.last = i;
            ++r->second.count;
        }
    }
    for (const auto& [e, r] : runs) {
        if (r.last - r.first + 1 != r.count) ++report_.affiliation_violations;
    }
}

EpochReport& Transcript::begin_epoch(std::size_t block, std::span<const NodeId> touched) {
    EpochReport e;
    e.phase = report_.phases == 0 ? 0 : report_.phases - 1;
    e.index = next_epoch_++;
    e.block = block;
    e.touched = touched.size();

    std::vector<NodeId> members(touched.begin(), touched.end());
    for (NodeId v : members) {
        if (!tree_.contains(v)) throw Error(ErrorKind::invariant_violation, "touched node is not live");
    }
    // Bottom-up order; at commencement the touched set should be one
    // contiguous ancestor chain.
    std::vector<std::pair<std::size_t, NodeId>> by_depth;
    by_depth.reserve(members.size());
    for (NodeId v : members) by_depth.emplace_back(tree_.depth(v), v);
    std::sort(by_depth.begin(), by_depth.end(), std::greater<>());
    for (std::size_t i = 0; i < by_depth.size(); ++i) {
        members[i] = by_depth[i].second;
        if (i > 0 && tree_.parent(members[i - 1]) != members[i]) e.single_path = false;
    }
    if (!e.single_path) ++report_.path_violations;
    check_affiliation_contiguity();

    std::vector<NodeId> hat;
    std::unordered_set<std::size_t> hat_blocks;
    for (NodeId v : members) {
        if (tree_.node_class(v) != NodeClass::essential || !exposed(v)) continue;
        hat.push_back(v);
        if (!hat_blocks.insert(block_of(v)).second) ++report_.exposed_block_violations;
    }
    e.exposed = hat.size();
    e.dense = is_dense(hat.size(), members.size());
    if (e.dense) {
        for (NodeId v : members) affiliations_[v].push_back(e.index);
        const auto pieces = split_large(hat, split_bound_);
        e.pieces = pieces.size();
        for (const auto& piece : pieces) {
            const Symbol sym = next_symbol_++;
            for (NodeId v : piece) {
                labels_[v].push_back(sym);  // stored oldest first
                ++e.labels_assigned;
            }
        }
    }
    report_.epochs.push_back(e);
    return report_.epochs.back();
}

CompressionRecord Transcript::compress(const trace::Compress& c) {
    auto rec = trace::apply(tree_, trace::Record{c});
    if (!rec) throw Error(ErrorKind::invariant_violation, "compression replay produced no record");
    return *rec;
}

void Transcript::add_leaf(NodeId node, NodeId parent) {
    if (parent == kNil) {
        tree_.add_root(node);
    } else {
        tree_.add_leftmost_child(parent, node);
    }
}

void Transcript::track_period(NodeId deleted) {
    const std::size_t b = block_of(deleted);
    if (b >= phase_blocks_) return;
    if (!period_open_[b] && block_remaining_[b] > 0) {
        period_open_[b] = true;
        ++open_periods_;
        ++report_.periods;
    }
    if (active_block_ != b && active_block_ < phase_blocks_ && period_open_[active_block_]) {
        ++report_.on_hold_events;
    }
    active_block_ = b;
    report_.max_open_periods = std::max(report_.max_open_periods, open_periods_);
    if (block_remaining_[b] > 0 && --block_remaining_[b] == 0) {
        period_open_[b] = false;
        --open_periods_;
    }
}

void Transcript::emit_on_delete(NodeId node) {
    if (tree_.empty() || tree_.leftmost_leaf() != node) {
        throw Error(ErrorKind::invalid_argument, "deleted node is not the leftmost leaf: " + std::to_string(node));
    }
    if (auto it = labels_.find(node); it != labels_.end()) {
        report_.max_label_length = std::max(report_.max_label_length, it->second.size());
        for (auto s = it->second.rbegin(); s != it->second.rend(); ++s) s_prime_.push_back(*s);
        labels_.erase(it);
    }
    if (in_phase_) track_period(node);
    affiliations_.erase(node);
    tree_.delete_leaf(node);
}

TranscriptionReport Transcript::finalize() {
    end_phase();
    TranscriptionReport out = report_;
    out.s_prime = s_prime_;
    auto [s, removed] = remove_repetitions(s_prime_);
    out.s = std::move(s);
    out.removed_repetitions = removed;
    std::unordered_map<Symbol, std::size_t> mult;
    for (Symbol x : out.s.symbols()) out.max_multiplicity = std::max(out.max_multiplicity, ++mult[x]);
    out.contains_abababa = contains_pattern(SymbolSequence::from_letters("abababa"), out.s_prime);
    out.contains_abaabba = contains_pattern(SymbolSequence::from_letters("abaabba"), out.s_prime);
    return out;
}

namespace {

struct Epoch {
    std::size_t block = 0;
    std::vector<NodeId> touched;
    std::size_t compressions = 0;
    std::size_t stunted = 0;
};

struct PhaseSlice {
    GeneralTree initial;
    std::vector<NodeId> order;
    std::size_t begin = 0;  // first record after INIT
    std::size_t end = 0;
};

std::vector<PhaseSlice> split_phases(const std::vector<trace::Record>& records) {
    std::vector<PhaseSlice> phases;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (std::holds_alternative<trace::Phase>(r)) {
            if (!phases.empty()) phases.back().end = i;
            phases.emplace_back();
            phases.back().begin = i + 1;
        } else if (const auto* init = std::get_if<trace::Init>(&r)) {
            if (phases.empty()) phases.emplace_back();
            auto& p = phases.back();
            p.initial = GeneralTree::from_postorder(init->entries);
            p.begin = i + 1;
        } else if (phases.empty()) {
            phases.emplace_back();
            phases.back().begin = i;
        }
    }
    if (!phases.empty()) phases.back().end = records.size();
    for (auto& p : phases) {
        // Inserted leaves go in front of everything present earlier.
        std::vector<NodeId> added;
        for (std::size_t i = p.begin; i < p.end; ++i) {
            if (const auto* a = std::get_if<trace::Add>(&records[i])) added.push_back(a->node);
        }
        p.order.assign(added.rbegin(), added.rend());
        const auto post = p.initial.postorder();
        p.order.insert(p.order.end(), post.begin(), post.end());
    }
    return phases;
}

}  // namespace

TranscriptionReport transcribe(const std::vector<trace::Record>& records, TranscriptionOptions options) {
    Transcript tr(options);
    for (const auto& phase : split_phases(records)) {
        // Pass 1: epochs and their touched sets.
        const std::size_t bsize = options.block_size ? options.block_size : default_block_size(phase.order.size());
        std::unordered_map<NodeId, std::size_t> block;
        for (std::size_t i = 0; i < phase.order.size(); ++i) block.emplace(phase.order[i], i / bsize);
        std::vector<Epoch> epochs;
        std::vector<std::size_t> epoch_of_record(phase.end - phase.begin, static_cast<std::size_t>(-1));
        {
            GeneralTree tree = phase.initial;
            std::unordered_set<NodeId> seen;
            for (std::size_t i = phase.begin; i < phase.end; ++i) {
                const auto& r = records[i];
                if (const auto* c = std::get_if<trace::Compress>(&r)) {
                    const std::size_t b = block.at(tree.leftmost_leaf());
                    if (epochs.empty() || epochs.back().block != b) {
                        epochs.push_back(Epoch{b, {}, 0, 0});
                        seen.clear();
                    }
                    auto& e = epochs.back();
                    epoch_of_record[i - phase.begin] = epochs.size() - 1;
                    for (NodeId v : c->path) {
                        if (block.at(v) != b && seen.insert(v).second) e.touched.push_back(v);
                    }
                    ++e.compressions;
                    if (c->stunted) ++e.stunted;
                }
                trace::apply(tree, r);
            }
        }
        // Pass 2: replay with labelling.
        tr.begin_phase(phase.initial, phase.order);
        std::size_t current = static_cast<std::size_t>(-1);
        EpochReport* report = nullptr;
        std::unordered_set<NodeId> touched;
        for (std::size_t i = phase.begin; i < phase.end; ++i) {
            const auto& r = records[i];
            if (const auto* c = std::get_if<trace::Compress>(&r)) {
                const std::size_t e = epoch_of_record[i - phase.begin];
                if (e != current) {
                    current = e;
                    report = &tr.begin_epoch(epochs[e].block, epochs[e].touched);
                    report->compressions = epochs[e].compressions;
                    report->stunted = epochs[e].stunted;
                    touched = std::unordered_set<NodeId>(epochs[e].touched.begin(), epochs[e].touched.end());
                }
                const auto rec = tr.compress(*c);
                if (!report->dense) {
                    const std::size_t moved = rec.length;
                    for (std::size_t k = 0; k < moved && k < rec.path.size(); k += 2) {
                        const NodeId v = rec.path[k];
                        if (touched.count(v) && !tr.affiliated(v)) ++report->cascade_cost;
                    }
                }
            } else if (const auto* a = std::get_if<trace::Add>(&r)) {
                tr.add_leaf(a->node, a->parent);
            } else if (const auto* d = std::get_if<trace::Delete>(&r)) {
                tr.emit_on_delete(d->node);
            }
        }
    }
    return tr.finalize();
}

std::optional<std::pair<Symbol, Symbol>> find_babba(const SymbolSequence& seq) {
    std::unordered_map<Symbol, std::vector<std::size_t>> occ;
    for (std::size_t i = 0; i < seq.size(); ++i) occ[seq[i]].push_back(i);
    std::vector<Symbol> alphabet;
    for (const auto& [s, p] : occ) alphabet.push_back(s);
    std::sort(alphabet.begin(), alphabet.end());
    static const Symbol pattern[] = {1, 0, 1, 1, 0};  // b a b b a
    for (std::size_t x = 0; x < alphabet.size(); ++x) {
        const auto& pa = occ[alphabet[x]];
        if (pa.size() < 2) continue;
        for (std::size_t y = x + 1; y < alphabet.size(); ++y) {
            const auto& pb = occ[alphabet[y]];
            if (pb.size() < 3) continue;
            std::size_t i = 0, j = 0, k = 0;
            while (k < 5 && (i < pa.size() || j < pb.size())) {
                const bool take_a = j == pb.size() || (i < pa.size() && pa[i] < pb[j]);
                if ((take_a ? 0 : 1) == pattern[k]) ++k;
                if (take_a) ++i; else ++j;
            }
            if (k == 5) return std::pair{alphabet[y], alphabet[x]};
        }
    }
    return std::nullopt;
}

void write_epoch_csv(std::ostream& os, const TranscriptionReport& report) {
    os << "phase,epoch,block,touched,exposed,tag,pieces,labels,compressions,stunted,cascade_cost,single_path\n";
    for (const auto& e : report.epochs) {
        os << e.phase << ',' << e.index << ',' << e.block << ',' << e.touched << ',' << e.exposed << ','
           << (e.dense ? "dense" : "sparse") << ',' << e.pieces << ',' << e.labels_assigned << ','
           << e.compressions << ',' << e.stunted << ',' << e.cascade_cost << ',' << (e.single_path ? 1 : 0)
           << '\n';
    }
}

void write_summary(std::ostream& os, const TranscriptionReport& r) {
    std::size_t dense = 0;
    for (const auto& e : r.epochs) dense += e.dense ? 1 : 0;
    os << "phases " << r.phases << '\n'
       << "blocks " << r.blocks << '\n'
       << "block_size " << r.block_size << '\n'
       << "split_bound " << r.split_bound << '\n'
       << "epochs " << r.epochs.size() << '\n'
       << "dense_epochs " << dense << '\n'
       << "s_prime_length " << r.s_prime.size() << '\n'
       << "s_length " << r.s.size() << '\n'
       << "removed_repetitions " << r.removed_repetitions << '\n'
       << "max_multiplicity " << r.max_multiplicity << '\n'
       << "max_label_length " << r.max_label_length << '\n'
       << "labels_dropped " << r.labels_dropped << '\n'
       << "contains_abababa " << (r.contains_abababa ? 1 : 0) << '\n'
       << "contains_abaabba " << (r.contains_abaabba ? 1 : 0) << '\n'
       << "path_violations " << r.path_violations << '\n'
       << "affiliation_violations " << r.affiliation_violations << '\n'
       << "exposed_block_violations " << r.exposed_block_violations << '\n'
       << "periods " << r.periods << '\n'
       << "max_open_periods " << r.max_open_periods << '\n'
       << "on_hold_events " << r.on_hold_events << '\n';
}

}  // namespace splaydeque
