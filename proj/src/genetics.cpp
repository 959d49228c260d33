#include "bfk/genetics.hpp"

#include <algorithm>

namespace bfk {

namespace {

const std::vector<Subgroup>& conjugates(const Group& g, const Subgroup& s) {
    return g.class_members(g.class_of(s));
}

// Some conjugate of a meets z inside r.
bool some_conjugate_inside(const Group& g, const Subgroup& a, const Subgroup& z, const Subgroup& r) {
    for (const auto& c : conjugates(g, a))
        if (c.intersect(z).is_subset_of(r))
            return true;
    return false;
}

void require_genetic(const GroupPtr& p, const Subgroup& q, const char* what) {
    if (!is_genetic(p, q))
        throw GeneticError(std::string(what) + ": subgroup is not genetic");
}

} // namespace

bool is_genetic(const GroupPtr& p, const Subgroup& q) {
    if (!p->is_subgroup(q))
        throw GeneticError("is_genetic: not a subgroup");
    const LocalData d = local_data(p, q);
    if (d.quotient_type == Rank1Type::NotRank1)
        return false;
    for (const auto& c : conjugates(*p, q))
        if (!(c == q) && c.intersect(d.zq).is_subset_of(q))
            return false;
    return true;
}

bool linked(const GroupPtr& p, const Subgroup& q, const Subgroup& r) {
    if (!is_genetic(p, q) || !is_genetic(p, r))
        throw GeneticError("linked: subgroup is not genetic");
    const Subgroup zq = local_data(p, q).zq;
    const Subgroup zr = local_data(p, r).zq;
    return some_conjugate_inside(*p, q, zr, r) && some_conjugate_inside(*p, r, zq, q);
}

std::vector<int> genetic_classes(const GroupPtr& p) {
    std::vector<int> out;
    for (const auto& c : p->subgroup_classes())
        if (is_genetic(p, c.rep))
            out.push_back(c.index);
    return out;
}

std::vector<std::vector<int>> linkage_classes(const GroupPtr& p) {
    const auto gen = genetic_classes(p);
    const auto& classes = p->subgroup_classes();
    std::vector<Subgroup> z;
    for (int i : gen)
        z.push_back(local_data(p, classes[static_cast<std::size_t>(i)].rep).zq);
    std::vector<std::vector<int>> out;
    std::vector<int> label(gen.size(), -1);
    for (std::size_t i = 0; i < gen.size(); ++i) {
        if (label[i] >= 0)
            continue;
        label[i] = static_cast<int>(out.size());
        out.push_back({gen[i]});
        const auto& qi = classes[static_cast<std::size_t>(gen[i])].rep;
        for (std::size_t j = i + 1; j < gen.size(); ++j) {
            if (label[j] >= 0)
                continue;
            const auto& qj = classes[static_cast<std::size_t>(gen[j])].rep;
            if (some_conjugate_inside(*p, qi, z[j], qj) && some_conjugate_inside(*p, qj, z[i], qi)) {
                label[j] = label[i];
                out.back().push_back(gen[j]);
            }
        }
    }
    return out;
}

GeneticBasis genetic_basis_from(const GroupPtr& p, const std::vector<int>& class_indices) {
    const auto parts = linkage_classes(p);
    std::vector<int> hit(parts.size(), 0);
    for (int c : class_indices) {
        bool found = false;
        for (std::size_t k = 0; k < parts.size(); ++k)
            if (std::find(parts[k].begin(), parts[k].end(), c) != parts[k].end()) {
                ++hit[k];
                found = true;
            }
        if (!found)
            throw GeneticError("genetic_basis: class " + std::to_string(c) + " is not genetic");
    }
    for (int h : hit)
        if (h != 1)
            throw GeneticError("genetic_basis: need exactly one representative per linkage class");
    GeneticBasis out;
    out.group = p;
    auto sorted = class_indices;
    std::sort(sorted.begin(), sorted.end());
    for (int c : sorted) {
        GeneticEntry e;
        e.class_index = c;
        e.local = local_data(p, p->subgroup_classes()[static_cast<std::size_t>(c)].rep);
        if (e.local.quotient_type == Rank1Type::Dihedral)
            ++out.d;
        out.entries.push_back(std::move(e));
    }
    return out;
}

GeneticBasis genetic_basis(const GroupPtr& p) {
    std::vector<int> reps;
    for (const auto& part : linkage_classes(p))
        reps.push_back(part.front());
    return genetic_basis_from(p, reps);
}

Section genetic_section(const GroupPtr& p, const Subgroup& q) {
    return make_section(p, p->normalizer(q), q);
}

Morphism b_map(const GroupPtr& p, const Subgroup& q) {
    require_genetic(p, q, "b_map");
    const LocalData d = local_data(p, q);
    const Section sec = make_section(p, d.normalizer, q);
    const Morphism dr = defres(p, sec);
    if (q == p->whole())
        return dr;
    const GroupPtr& nq = sec.quotient;
    const Subgroup hat = sec.image(d.qhat);
    return dr - compose(inf(nq, hat), compose(def(nq, hat), dr));
}

Morphism indinf_map(const GroupPtr& p, const Subgroup& q) {
    require_genetic(p, q, "indinf_map");
    return indinf(p, genetic_section(p, q));
}

Morphism gamma(const GroupPtr& r, const Subgroup& q) {
    require_genetic(r, q, "gamma");
    const LocalData d = local_data(r, q);
    Morphism out = twisted_diagonal_class(r, d.normalizer, q);
    if (q == r->whole())
        return out;
    return out - twisted_diagonal_class(r, d.normalizer, d.qhat);
}

} // namespace bfk
