#include "popmatch/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

namespace popmatch {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in cost arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in cost arithmetic");
    return r;
}

void Instance::add_item(const std::string& id, int copies, std::int64_t cost) {
    if (id.empty()) throw Error("empty item id");
    if (id.rfind(kLastResortPrefix, 0) == 0)
        throw Error("item id uses reserved prefix '_last:': " + id);
    if (item_idx_.count(id)) throw Error("duplicate item id: " + id);
    if (copies < 1) throw Error("item " + id + ": copies must be >= 1");
    if (cost < 0) throw Error("item " + id + ": cost must be >= 0");
    item_idx_[id] = static_cast<int>(items_.size());
    items_.push_back({id, copies, cost});
}

void Instance::add_person(const std::string& id,
                          const std::vector<std::vector<std::string>>& groups) {
    if (id.empty()) throw Error("empty person id");
    if (person_idx_.count(id)) throw Error("duplicate person id: " + id);
    std::vector<std::vector<int>> idx_groups;
    std::unordered_map<int, int> ranks;
    for (const auto& group : groups) {
        if (group.empty()) throw Error("person " + id + ": empty rank group");
        std::vector<int> g;
        for (const auto& item_id : group) {
            auto it = item_idx_.find(item_id);
            if (it == item_idx_.end())
                throw Error("person " + id + ": undeclared item " + item_id);
            if (ranks.count(it->second))
                throw Error("person " + id + ": item " + item_id + " listed twice");
            ranks[it->second] = static_cast<int>(idx_groups.size()) + 1;
            g.push_back(it->second);
        }
        idx_groups.push_back(std::move(g));
    }
    person_idx_[id] = static_cast<int>(people_.size());
    people_.push_back(id);
    prefs_.push_back(std::move(idx_groups));
    rank_.push_back(std::move(ranks));
}

namespace {

// Splits a line into tokens, treating '(' and ')' as standalone tokens.
std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : line) {
        if (c == '(' || c == ')') {
            if (!cur.empty()) { tokens.push_back(cur); cur.clear(); }
            tokens.push_back(std::string(1, c));
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) { tokens.push_back(cur); cur.clear(); }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

std::int64_t parse_int(const std::string& s, int line_no, const char* what) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error("line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
    return v;
}

std::string expect_kv(const std::string& tok, const std::string& key, int line_no) {
    if (tok.rfind(key + "=", 0) != 0)
        throw Error("line " + std::to_string(line_no) + ": expected " + key + "=<int>, got '" + tok + "'");
    return tok.substr(key.size() + 1);
}

} // namespace

Instance Instance::parse(const std::string& text) {
    Instance inst;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool seen_person = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        try {
            if (tokens[0] == "item") {
                if (seen_person)
                    throw Error("item declared after a person line");
                if (tokens.size() != 4) throw Error("expected: item <id> copies=<int> cost=<int>");
                std::int64_t copies = parse_int(expect_kv(tokens[2], "copies", line_no), line_no, "copies");
                std::int64_t cost = parse_int(expect_kv(tokens[3], "cost", line_no), line_no, "cost");
                if (copies < 1 || copies > std::numeric_limits<int>::max())
                    throw Error("item " + tokens[1] + ": copies must be >= 1");
                inst.add_item(tokens[1], static_cast<int>(copies), cost);
            } else if (tokens[0] == "person") {
                seen_person = true;
                if (tokens.size() < 3 || tokens[2] != ":")
                    throw Error("expected: person <id> : <group> (> <group>)*");
                std::vector<std::vector<std::string>> groups;
                std::size_t i = 3;
                bool expect_group = tokens.size() > 3;
                while (i < tokens.size()) {
                    if (!groups.empty()) {
                        if (tokens[i] != ">") throw Error("expected '>' between rank groups");
                        ++i;
                        if (i == tokens.size()) throw Error("trailing '>'");
                    }
                    if (tokens[i] == "(") {
                        std::vector<std::string> group;
                        ++i;
                        while (i < tokens.size() && tokens[i] != ")") group.push_back(tokens[i++]);
                        if (i == tokens.size()) throw Error("unterminated tie group");
                        ++i; // consume ')'
                        groups.push_back(std::move(group));
                    } else {
                        groups.push_back({tokens[i++]});
                    }
                }
                (void)expect_group;
                inst.add_person(tokens[1], groups);
            } else {
                throw Error("unknown directive '" + tokens[0] + "'");
            }
        } catch (const Error& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            throw Error("line " + std::to_string(line_no) + ": " + msg);
        }
    }
    return inst;
}

std::string Instance::serialize() const {
    if (last_resort_enabled_)
        throw Error("cannot serialize an instance with last resorts enabled");
    std::ostringstream out;
    for (const auto& it : items_)
        out << "item " << it.id << " copies=" << it.copies << " cost=" << it.cost << "\n";
    for (int p = 0; p < num_people(); ++p) {
        out << "person " << people_[p] << " :";
        bool first = true;
        for (const auto& group : prefs_[p]) {
            out << (first ? " " : " > ");
            first = false;
            if (group.size() == 1) {
                out << items_[group[0]].id;
            } else {
                out << "(";
                for (std::size_t i = 0; i < group.size(); ++i)
                    out << (i ? " " : "") << items_[group[i]].id;
                out << ")";
            }
        }
        out << "\n";
    }
    return out.str();
}

Instance Instance::with_last_resorts() const {
    if (last_resort_enabled_) throw Error("last resorts already enabled");
    Instance inst = *this;
    inst.last_resort_enabled_ = true;
    inst.last_resort_.resize(people_.size());
    for (int p = 0; p < num_people(); ++p) {
        std::string id = std::string(kLastResortPrefix) + people_[p];
        int b = static_cast<int>(inst.items_.size());
        inst.item_idx_[id] = b;
        inst.items_.push_back({id, 1, 0});
        inst.prefs_[p].push_back({b});
        inst.rank_[p][b] = static_cast<int>(inst.prefs_[p].size());
        inst.last_resort_[p] = b;
    }
    return inst;
}

Instance Instance::with_extra_copies(const std::map<std::string, int>& extra) const {
    Instance inst = *this;
    for (const auto& [id, count] : extra) {
        if (count < 0) throw Error("negative extra copies for " + id);
        if (id.rfind(kLastResortPrefix, 0) == 0)
            throw Error("cannot add copies of a last-resort item: " + id);
        int b = item_index(id);
        if (b < 0) throw Error("unknown item in copy plan: " + id);
        inst.items_[b].copies += count;
    }
    return inst;
}

Instance Instance::with_last_resort_cost(std::int64_t cost) const {
    if (!last_resort_enabled_) throw Error("last resorts not enabled");
    if (cost < 0) throw Error("negative last-resort cost");
    Instance inst = *this;
    for (int b : inst.last_resort_) inst.items_[b].cost = cost;
    return inst;
}

int Instance::last_resort(int p) const {
    if (!last_resort_enabled_) throw Error("last resorts not enabled");
    return last_resort_[p];
}

int Instance::person_index(const std::string& id) const {
    auto it = person_idx_.find(id);
    return it == person_idx_.end() ? -1 : it->second;
}

int Instance::item_index(const std::string& id) const {
    auto it = item_idx_.find(id);
    return it == item_idx_.end() ? -1 : it->second;
}

int Instance::rank_of(int p, int b) const {
    auto it = rank_[p].find(b);
    return it == rank_[p].end() ? 0 : it->second;
}

int Instance::listing_count(int b) const {
    int count = 0;
    for (int p = 0; p < num_people(); ++p)
        if (rank_of(p, b) > 0) ++count;
    return count;
}

Matching Matching::from_assignment(const Instance& inst, std::vector<int> assignment) {
    Matching m;
    m.assignment = std::move(assignment);
    m.usage.assign(inst.num_items(), 0);
    for (int b : m.assignment)
        if (b >= 0) {
            if (b >= inst.num_items()) throw Error("matching references unknown item index");
            ++m.usage[b];
        }
    validate_matching(inst, m);
    return m;
}

void validate_matching(const Instance& inst, const Matching& m) {
    if (static_cast<int>(m.assignment.size()) != inst.num_people())
        throw Error("matching has wrong number of people");
    if (static_cast<int>(m.usage.size()) != inst.num_items())
        throw Error("matching has wrong number of items");
    std::vector<int> usage(inst.num_items(), 0);
    for (int p = 0; p < inst.num_people(); ++p) {
        int b = m.assignment[p];
        if (b == -1) {
            if (inst.last_resort_enabled())
                throw Error("person " + inst.people()[p] +
                            " unassigned although last resorts are enabled");
            continue;
        }
        if (b < 0 || b >= inst.num_items())
            throw Error("matching references unknown item");
        if (inst.rank_of(p, b) == 0)
            throw Error("person " + inst.people()[p] + " assigned to unlisted item " +
                        inst.item(b).id);
        ++usage[b];
    }
    for (int b = 0; b < inst.num_items(); ++b) {
        if (usage[b] != m.usage[b])
            throw Error("usage count for item " + inst.item(b).id +
                        " does not match the assignment");
        if (usage[b] > inst.item(b).copies)
            throw Error("item " + inst.item(b).id + " over capacity");
    }
}

std::int64_t matching_cost(const Instance& inst, const Matching& m) {
    if (static_cast<int>(m.usage.size()) != inst.num_items())
        throw Error("matching references unknown item");
    std::int64_t total = 0;
    for (int b = 0; b < inst.num_items(); ++b)
        total = checked_add(total, checked_mul(m.usage[b], inst.item(b).cost));
    return total;
}

Matching parse_matching(const Instance& inst, const std::string& text) {
    std::vector<int> assignment(inst.num_people(), -1);
    std::vector<bool> seen(inst.num_people(), false);
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 3 || tokens[1] != "->")
            throw Error("line " + std::to_string(line_no) + ": expected '<person> -> <item>'");
        int p = inst.person_index(tokens[0]);
        if (p < 0) throw Error("line " + std::to_string(line_no) + ": unknown person " + tokens[0]);
        if (seen[p]) throw Error("line " + std::to_string(line_no) + ": person " + tokens[0] + " repeated");
        seen[p] = true;
        if (tokens[2] == "-") {
            assignment[p] = inst.last_resort_enabled() ? inst.last_resort(p) : -1;
        } else {
            int b = inst.item_index(tokens[2]);
            if (b < 0) throw Error("line " + std::to_string(line_no) + ": unknown item " + tokens[2]);
            assignment[p] = b;
        }
    }
    for (int p = 0; p < inst.num_people(); ++p)
        if (!seen[p] && inst.last_resort_enabled()) assignment[p] = inst.last_resort(p);
    return Matching::from_assignment(inst, std::move(assignment));
}

std::string serialize_matching(const Instance& inst, const Matching& m) {
    std::ostringstream out;
    for (int p = 0; p < inst.num_people(); ++p) {
        int b = m.assignment[p];
        bool none = b < 0 || (inst.last_resort_enabled() && b == inst.last_resort(p));
        out << inst.people()[p] << " -> " << (none ? "-" : inst.item(b).id) << "\n";
    }
    return out.str();
}

} // namespace popmatch
