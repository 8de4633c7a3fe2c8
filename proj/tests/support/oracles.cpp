#include "oracles.hpp"

#include <algorithm>
#include <set>

namespace designlens::testing::oracle {

std::vector<Reference> references(const CodeModel& model) {
    std::vector<Reference> out;
    for (const auto& package : model.packages()) {
        for (const auto& cls : package.classes) {
            const QualifiedName self{package.name, cls.name};
            for (const auto& parent : cls.parents) out.push_back({self, parent, true});
            for (const auto& attr : cls.attributes)
                if (attr.target) out.push_back({self, *attr.target, false});
            for (const auto& method : cls.methods)
                for (const auto& target : method.uses) out.push_back({self, target, false});
        }
    }
    return out;
}

std::int64_t lcom(const ClassDef& cls) {
    std::int64_t disjoint = 0;
    std::int64_t shared = 0;
    for (std::size_t i = 0; i < cls.methods.size(); ++i) {
        for (std::size_t j = i + 1; j < cls.methods.size(); ++j) {
            const std::set<std::string> a(cls.methods[i].reads.begin(), cls.methods[i].reads.end());
            bool common = false;
            for (const auto& r : cls.methods[j].reads) common = common || a.count(r) > 0;
            ++(common ? shared : disjoint);
        }
    }
    return std::max<std::int64_t>(disjoint - shared, 0);
}

namespace {

void walk(const std::map<QualifiedName, std::vector<QualifiedName>>& parents, const QualifiedName& at,
          std::int64_t depth, std::int64_t& best) {
    best = std::max(best, depth);
    auto it = parents.find(at);
    if (it == parents.end()) return;
    for (const auto& p : it->second) walk(parents, p, depth + 1, best);
}

}  // namespace

std::int64_t dit(const std::map<QualifiedName, std::vector<QualifiedName>>& parents, const QualifiedName& cls) {
    std::int64_t best = 0;
    walk(parents, cls, 0, best);
    return best;
}

std::int64_t dit(const CodeModel& model, const QualifiedName& cls) {
    std::map<QualifiedName, std::vector<QualifiedName>> parents;
    for (const auto& package : model.packages())
        for (const auto& c : package.classes) parents[{package.name, c.name}] = c.parents;
    return dit(parents, cls);
}

std::int64_t noc(const CodeModel& model, const QualifiedName& cls) {
    std::int64_t n = 0;
    for (const auto& package : model.packages())
        for (const auto& c : package.classes)
            n += static_cast<std::int64_t>(std::count(c.parents.begin(), c.parents.end(), cls));
    return n;
}

std::int64_t cbo(const CodeModel& model, const QualifiedName& cls) {
    std::set<QualifiedName> coupled;
    for (const auto& r : references(model)) {
        if (r.inherit || r.from == r.to) continue;
        if (r.from == cls) coupled.insert(r.to);
        if (r.to == cls) coupled.insert(r.from);
    }
    return static_cast<std::int64_t>(coupled.size());
}

std::int64_t ca(const CodeModel& model, const std::string& package) {
    std::set<QualifiedName> sources;
    for (const auto& r : references(model))
        if (r.to.package == package && r.from.package != package) sources.insert(r.from);
    return static_cast<std::int64_t>(sources.size());
}

std::int64_t ce(const CodeModel& model, const std::string& package) {
    std::set<QualifiedName> targets;
    for (const auto& r : references(model))
        if (r.from.package == package && r.to.package != package) targets.insert(r.to);
    return static_cast<std::int64_t>(targets.size());
}

bool instability_greater(std::int64_t ca_q, std::int64_t ce_q, std::int64_t ca_p, std::int64_t ce_p) {
    return ce_q * (ca_p + ce_p) > ce_p * (ca_q + ce_q);
}

std::vector<std::vector<bool>> reachability(const std::vector<std::vector<bool>>& adjacency) {
    const std::size_t n = adjacency.size();
    auto reach = adjacency;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    return reach;
}

std::vector<std::vector<int>> cyclic_groups(const std::vector<std::vector<bool>>& adjacency) {
    const int n = static_cast<int>(adjacency.size());
    const auto reach = reachability(adjacency);
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
        if (placed[static_cast<std::size_t>(i)]) continue;
        std::vector<int> group{i};
        for (int j = i + 1; j < n; ++j) {
            if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
                group.push_back(j);
                placed[static_cast<std::size_t>(j)] = true;
            }
        }
        if (group.size() >= 2) groups.push_back(group);
    }
    return groups;
}

}  // namespace designlens::testing::oracle
