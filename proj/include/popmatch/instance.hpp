#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace popmatch {

/// Error type for all validation, parse and guard failures in this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Item {
    std::string id;
    int copies = 1;        // capacity: how many people may be assigned to this item
    std::int64_t cost = 0; // price paid per used (or purchased) copy

    friend bool operator==(const Item&, const Item&) = default;
};

constexpr const char* kLastResortPrefix = "_last:";

/// A one-sided preference instance: people, capacitated priced items, and
/// per-person ranked lists with ties. Immutable once built (builder methods
/// return new instances or are used only during construction).
class Instance {
public:
    Instance() = default;

    // -- construction ------------------------------------------------------
    void add_item(const std::string& id, int copies, std::int64_t cost);
    // groups: ordered rank groups, each a non-empty list of item ids
    void add_person(const std::string& id,
                    const std::vector<std::vector<std::string>>& groups);

    static Instance parse(const std::string& text);
    std::string serialize() const; // rejects instances with last resorts enabled

    /// Appends the synthetic `_last:<p>` item as a final singleton rank group
    /// of every person. Errors if already enabled.
    Instance with_last_resorts() const;

    /// Copy with copies(b) increased by extra[b]. Keys must be real item ids.
    Instance with_extra_copies(const std::map<std::string, int>& extra) const;

    /// Copy with every last-resort item priced at `cost`. Requires last
    /// resorts enabled.
    Instance with_last_resort_cost(std::int64_t cost) const;

    // -- access ------------------------------------------------------------
    int num_people() const { return static_cast<int>(people_.size()); }
    int num_items() const { return static_cast<int>(items_.size()); }
    const std::vector<std::string>& people() const { return people_; }
    const std::vector<Item>& items() const { return items_; }
    const Item& item(int b) const { return items_[b]; }
    /// prefs()[p] = rank groups of person p, each group a list of item indices.
    const std::vector<std::vector<std::vector<int>>>& prefs() const { return prefs_; }
    bool last_resort_enabled() const { return last_resort_enabled_; }
    /// Item index of person p's last resort. Requires last resorts enabled.
    int last_resort(int p) const;

    int person_index(const std::string& id) const; // -1 if unknown
    int item_index(const std::string& id) const;   // -1 if unknown

    /// 1-based rank of item b in person p's list, 0 if absent.
    int rank_of(int p, int b) const;
    /// Worst (largest) rank in p's list.
    int last_rank(int p) const { return static_cast<int>(prefs_[p].size()); }

    /// Number of people whose list mentions item b.
    int listing_count(int b) const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::vector<std::string> people_;
    std::vector<Item> items_;
    std::vector<std::vector<std::vector<int>>> prefs_;
    std::vector<std::unordered_map<int, int>> rank_; // per person: item -> rank
    std::unordered_map<std::string, int> person_idx_;
    std::unordered_map<std::string, int> item_idx_;
    std::vector<int> last_resort_; // per person, only when enabled
    bool last_resort_enabled_ = false;
};

/// A (partial) assignment of people to items. assignment[p] is an item index
/// or -1 for "none"; once last resorts are enabled in the instance, "none" is
/// represented by assignment to the last resort instead.
struct Matching {
    std::vector<int> assignment;
    std::vector<int> usage; // per item index, fiber count of assignment

    static Matching from_assignment(const Instance& inst, std::vector<int> assignment);

    friend bool operator==(const Matching&, const Matching&) = default;
};

/// Throws Error describing the first violated Matching invariant.
void validate_matching(const Instance& inst, const Matching& m);

/// Sum over items of usage(b) * cost(b). Overflow-checked.
std::int64_t matching_cost(const Instance& inst, const Matching& m);

Matching parse_matching(const Instance& inst, const std::string& text);
std::string serialize_matching(const Instance& inst, const Matching& m);

// Overflow-checked int64 helpers.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

} // namespace popmatch
